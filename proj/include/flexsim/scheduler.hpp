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

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flexsim/core.hpp"
#include "flexsim/estimation.hpp"
#include "flexsim/measurement.hpp"

namespace flexsim {

/// Exact non-negative rational used for scheduling weights, so ties and
/// ratios compare exactly.
struct Weight {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_zero() const { return num == 0; }
  Weight scaled(std::int64_t factor) const { return {num * factor, den}; }

  friend std::strong_ordering operator<=>(const Weight& a, const Weight& b) {
    const __int128 l = static_cast<__int128>(a.num) * b.den;
    const __int128 r = static_cast<__int128>(b.num) * a.den;
    return l < r ? std::strong_ordering::less : (l > r ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const Weight& a, const Weight& b) { return (a <=> b) == 0; }
};

/// Average rate in bytes/slot, kept as sum / count; floored at 1 byte/slot.
struct Rate {
  std::int64_t sum = 1;
  std::int64_t count = 1;

  double value() const { return static_cast<double>(sum) / static_cast<double>(count); }
};

inline constexpr Bytes kRateEpsilon = 1;

/// Sliding-window mean of per-slot byte samples, floored at kRateEpsilon.
Rate sliding_average_rate(std::span<const Bytes> per_slot_bytes);

enum class GrantPurpose { kData, kBsr };

struct PriorityInput {
  LcId lc;
  Direction direction = Direction::kUl;
  int qos_priority = 1;
  Bytes instantaneous_rate = 0;  // r: bytes achievable in one slot now
  Rate average_rate;             // R
};

/// One schedulable demand: data of a logical channel or its BSR.
struct Candidate {
  PriorityInput input;
  UeId ue = 0;
  GrantPurpose purpose = GrantPurpose::kData;
  Bytes demand = 0;
  Bytes bytes_per_symbol = 1;
  int fixed_symbols = 0;  // BSR grants occupy a fixed symbol count
  Weight weight;

  Direction dir() const { return input.direction; }
};

enum class Strategy { kUlOnly, kDlOnly, kMixed };
std::string_view to_string(Strategy s);

struct Allocation {
  Direction dir = Direction::kUl;
  LcId lc;
  UeId ue = 0;
  GrantPurpose purpose = GrantPurpose::kData;
  int first_symbol = 0;  // index into the usable symbols
  int n_symbols = 0;
  Bytes bytes = 0;  // planned payload; the transport block holds n_symbols * bytes_per_symbol
  Weight weight;

  int end_symbol() const { return first_symbol + n_symbols; }
};

struct SlotPlan {
  SlotIndex slot_index = 0;
  Strategy strategy = Strategy::kDlOnly;
  std::vector<int> guard_symbol_positions;
  std::vector<Allocation> allocations;
  double reward = 0.0;

  bool has(Direction d) const;
  /// Direction of the last occupied symbol; nullopt for an idle slot.
  std::optional<Direction> last_direction() const;
  /// End (exclusive) of the symbols held by DL allocations.
  int dl_reserved_end() const;
  Bytes bytes_for(const LcId& lc) const;
  int symbols_used() const;
};

/// Σ weights in canonical (logical channel) order.
double reward_of(const std::vector<Allocation>& allocations);

struct SrEvent {
  LcId lc;
  SlotIndex raised_slot = 0;
};

struct BsrEvent {
  LcId lc;
  SlotIndex sent_slot = 0;
  Bytes reported_q = 0;
};

struct TxFeedback {
  LcId lc;
  SlotIndex slot = 0;
  Bytes delivered = 0;
  Bytes failed = 0;  // HARQ: bytes that went back to a retransmission queue
};

/// Everything the gNB learns at the start of a slot.
struct SlotInput {
  SlotIndex now = 0;
  std::vector<SrEvent> srs;         // SRs delivered this slot
  std::vector<BsrEvent> bsrs;       // BSRs transmitted in the previous slot
  std::vector<TxFeedback> feedback;  // transmissions of the previous slot
  std::map<LcId, Bytes> dl_buffers;  // gNB-side DL queues after this slot's arrivals
};

struct GateRecord {
  SlotIndex slot = 0;
  LcId lc;
  bool enabled = false;
  EstimateBasis basis = EstimateBasis::kReconstructionOnly;
};

struct SlotDecision {
  SlotIndex ul_target = 0;
  std::vector<Allocation> ul_grants;  // for ul_target, irrevocable
  SlotIndex dl_target = 0;
  std::vector<Allocation> dl_grants;  // for dl_target, final
  std::optional<SlotPlan> plan_for_dl_target;
  std::vector<GateRecord> gates;
};

class Scheduler {
 public:
  virtual ~Scheduler() = default;
  virtual std::string name() const = 0;
  virtual SlotDecision tick(const SlotInput& input) = 0;
  /// Per-flow measurement state, for trace export.
  virtual const FlowBufferHistory* history(const LcId& lc) const = 0;
};

struct SchedulerConfig {
  SlotClock clock;
  TimingConfig timing;
  PredictionGate gate;
  std::size_t history_capacity = FlowBufferHistory::kDefaultCapacity;
  bool largest_remainder = false;  // baselines only
  bool log_gates = false;
};

/// gNB-side bookkeeping shared by every scheduler: per-channel measurement,
/// BSR backlogging, SR tracking and the plan of every fixed or pending slot.
class SchedulerBase : public Scheduler {
 public:
  SchedulerBase(SchedulerConfig config, const std::vector<FlowSpec>& flows, const LinkModel& link);

  SlotDecision tick(const SlotInput& input) final;
  const FlowBufferHistory* history(const LcId& lc) const override;

  const SchedulerConfig& config() const { return config_; }

 protected:
  struct BsrRequest {
    SlotIndex raised_slot = 0;
    BsrClass cls = BsrClass::kIrregular;
  };

  struct LcState {
    LcId lc;
    UeId ue = 0;
    int qos_priority = 1;
    Bytes bytes_per_symbol = 1;
    Bytes slot_capacity = 1;
    FlowBufferHistory history;
    BurstStats stats;
    bool gate_enabled = false;
    std::map<SlotIndex, Bytes> committed;  // planned allocation per slot
    std::optional<BsrRequest> bsr_request;
    Bytes dl_actual = 0;
  };

  virtual void on_sr(LcState& lc, const SrEvent& sr);
  /// Finalise DL of `slot`; returns its complete plan.
  virtual SlotPlan on_dl_deadline(SlotIndex now, SlotIndex slot) = 0;
  /// Decide the UL of `slot` (and any tentative DL).
  virtual SlotPlan on_ul_deadline(SlotIndex now, SlotIndex slot) = 0;
  /// Basis reported in the gate log when the gate is on.
  virtual bool uses_prediction() const { return false; }

  /// Mean of min(Q, one-slot capacity) over the retained window.
  Rate average_rate(const LcState& st) const;
  Bytes committed_bytes(const LcState& st, SlotIndex slot) const;
  BufferEstimate estimate(const LcState& st, SlotIndex now, SlotIndex target, bool allow_prediction) const;
  PriorityInput priority_input(const LcState& st, Bytes demand) const;

  /// Replaces the committed allocations of `plan`'s slot with the plan's.
  void commit(const SlotPlan& plan);
  const SlotPlan* plan_at(SlotIndex slot) const;

  SchedulerConfig config_;
  std::map<LcId, LcState> lcs_;
  std::map<SlotIndex, SlotPlan> plans_;
  int rr_pointer_ = 0;
};

}  // namespace flexsim
