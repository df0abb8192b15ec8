/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The flexsim Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flexsim/baselines.hpp"
#include "flexsim/core.hpp"
#include "flexsim/flexsched.hpp"
#include "flexsim/traffic.hpp"

namespace flexsim {

enum class SchedulerKind { kFlex, kPf, kMr, kQos };
std::string_view to_string(SchedulerKind k);
SchedulerKind parse_scheduler_kind(std::string_view s);

struct EngineConfig {
  SlotClock clock;
  TimingConfig timing;
  PredictionGate gate;
  Bytes bytes_per_symbol = kDefaultBytesPerSymbol;
  std::map<UeId, Bytes> bytes_per_symbol_overrides;
  double tx_error_probability = 0.0;
  int max_retx = 4;
  Micros duration_us = 1'000'000;
  Micros warmup_us = 100'000;
  std::size_t history_capacity = FlowBufferHistory::kDefaultCapacity;
  bool largest_remainder = false;
  bool record_decisions = false;
  bool record_gates = false;
  bool record_trace = false;

  void validate() const;
};

enum class PacketFate { kInFlight, kDelivered, kDiscardedPdb, kDroppedErrorLimit };
std::string_view to_string(PacketFate f);

struct PacketRecord {
  FlowId flow_id = 0;
  Direction direction = Direction::kUl;
  std::int64_t sequence_number = 0;
  Bytes size_bytes = 0;
  Micros arrival_time_us = 0;
  std::optional<Micros> delivery_time_us;
  PacketFate fate = PacketFate::kInFlight;
  bool measured = false;  // arrived inside the measurement window

  std::optional<Micros> latency_us() const {
    if (!delivery_time_us) return std::nullopt;
    return *delivery_time_us - arrival_time_us;
  }
};

/// A piece of a packet waiting in a queue.
struct Segment {
  std::size_t packet = 0;  // index into the run's packet records
  Bytes bytes = 0;
  int attempts = 0;  // failed transmissions so far
};

/// Byte queues of one logical channel, with per-packet bookkeeping.
struct LcQueue {
  Bytes status_bytes = 0;
  std::deque<Segment> retx;
  std::deque<Segment> newtx;

  Bytes total() const;
  UlQueueSet view() const;
};

struct TxOutcome {
  Bytes transported = 0;
  Bytes delivered = 0;
  Bytes failed = 0;
  bool error = false;
  std::vector<std::size_t> completed;        // packets whose last byte went through
  std::vector<std::size_t> dropped_packets;  // packets exceeding max_retx
  Bytes dropped_bytes = 0;
};

/// Sends up to `tb_bytes` from `queue` (status, retx, newtx order). On a
/// transmission error the transported pieces return to the retx queue with
/// one more attempt; packets beyond `max_retx` attempts are dropped.
/// `remaining` holds the undelivered byte count of every packet.
TxOutcome execute_grant(LcQueue& queue, Bytes tb_bytes, bool error, int max_retx, std::vector<Bytes>& remaining);

/// Removes every packet older than `pdb_us` at `now_us` from `queue`.
/// Returns the indices of the discarded packets.
std::vector<std::size_t> discard_expired(LcQueue& queue, Micros now_us, Micros pdb_us,
                                         const std::vector<PacketRecord>& packets);

struct InvariantReport {
  std::int64_t guard_violations = 0;
  std::int64_t overlap_violations = 0;
  std::int64_t deadline_violations = 0;
  std::int64_t capacity_violations = 0;
  std::int64_t conservation_violations = 0;

  bool ok() const {
    return guard_violations == 0 && overlap_violations == 0 && deadline_violations == 0 &&
           capacity_violations == 0 && conservation_violations == 0;
  }
};

struct DecisionRow {
  SlotIndex slot = 0;
  Strategy strategy = Strategy::kDlOnly;
  double reward = 0.0;
  Direction direction = Direction::kUl;
  FlowId flow_id = 0;
  GrantPurpose purpose = GrantPurpose::kData;
  int first_symbol = 0;
  int n_symbols = 0;
  Bytes bytes = 0;
};

struct TraceRow {
  SlotIndex slot = 0;
  FlowId flow_id = 0;
  Direction direction = Direction::kUl;
  Bytes actual_q = 0;     // true queue at the start of the slot
  Bytes measured_q = 0;   // scheduler-side buffer history value
  Bytes transported = 0;  // bytes sent in the slot
};

struct ByteLedger {
  Bytes arrived = 0;
  Bytes delivered = 0;
  Bytes discarded = 0;
  Bytes queued = 0;
};

struct MetricsBundle {
  std::string scheduler;
  int n_ues = 0;
  std::uint64_t seed = 0;
  Micros duration_us = 0;
  Micros warmup_us = 0;
  SlotIndex slots_run = 0;
  std::vector<PacketRecord> packets;
  InvariantReport invariants;
  std::map<LcId, ByteLedger> bytes;
  std::int64_t granted_symbols = 0;
  std::int64_t wasted_symbols = 0;  // granted but carried nothing
  std::int64_t gate_on_samples = 0;
  std::int64_t gate_samples = 0;  // channel-slots considered
  std::vector<DecisionRow> decisions;
  std::vector<GateRecord> gates;
  std::vector<TraceRow> trace;
};

std::unique_ptr<Scheduler> make_scheduler(SchedulerKind kind, const EngineConfig& cfg,
                                          const std::vector<FlowSpec>& flows, const LinkModel& link);

/// Runs one cell of an experiment. Deterministic in (flows, kind, cfg, seed).
MetricsBundle run(const std::vector<FlowSpec>& flows, SchedulerKind kind, const EngineConfig& cfg,
                  std::uint64_t seed, int n_ues = 0);

struct LatencySummary {
  std::int64_t arrivals = 0;
  std::int64_t delivered = 0;
  double plr = 0.0;
  double mean_us = 0.0;
  double median_us = 0.0;
  double p99_us = 0.0;
  double throughput_bps = 0.0;  // delivered bytes per second of measurement window
};

/// Statistics over measured packets, optionally filtered by direction,
/// flow and arrival window [from_us, to_us).
struct PacketFilter {
  std::optional<Direction> direction;
  std::optional<FlowId> flow;
  std::optional<Micros> from_us;
  std::optional<Micros> to_us;
};
LatencySummary summarize(const MetricsBundle& m, const PacketFilter& filter = {});

}  // namespace flexsim
