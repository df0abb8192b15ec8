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
#include <stdexcept>
#include <string>
#include <string_view>

namespace flexsim {

using Bytes = std::int64_t;
using SlotIndex = std::int64_t;
using Micros = std::int64_t;
using FlowId = int;
using UeId = int;

/// Raised for any inconsistency detected while validating inputs.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Direction { kUl, kDl };
enum class FlowDirection { kUl, kDl, kBidirectional };
enum class ResourceType { kGbr, kNonGbr };

std::string_view to_string(Direction d);
std::string_view to_string(FlowDirection d);

/// Slot timing. Usable symbols are the trailing symbols of the slot; the
/// leading ones carry control overhead.
struct SlotClock {
  SlotIndex slot_index = 0;
  int symbols_per_slot = 14;
  int usable_symbols = 12;
  Micros slot_duration_us = 500;

  void validate() const;
  Micros slot_start_us(SlotIndex slot) const { return slot * slot_duration_us; }
  /// First slot whose start is at or after `t`.
  SlotIndex first_slot_at_or_after(Micros t) const;
  /// Wall-clock end of usable symbol `usable_end` (exclusive index) in `slot`.
  Micros usable_symbol_end_us(SlotIndex slot, int usable_end) const;
};

struct TimingConfig {
  int k0 = 0;
  int k2 = 2;
  int guard_symbols = 2;
  int sr_delay = 1;
  /// Symbols consumed by a standalone BSR transmission.
  int bsr_symbols = 1;

  void validate() const;
};

struct QosProfile {
  int five_qi = 82;
  int priority = 19;  // 1 highest, 127 lowest
  ResourceType resource_type = ResourceType::kGbr;
  Micros packet_delay_budget_us = 10'000;
  double packet_error_rate = 1e-4;

  void validate() const;

  /// Built-in profiles for the 5QIs used by the scenario presets (82, 83).
  /// Other 5QIs need an explicit priority.
  static QosProfile from_five_qi(int five_qi);
  static bool has_builtin(int five_qi);
};

struct FlowSpec {
  FlowId flow_id = 0;
  UeId ue_id = 0;
  FlowDirection direction = FlowDirection::kBidirectional;
  QosProfile qos;
  Bytes message_size_bytes = 50;
  Bytes ip_overhead_bytes = 20;
  Micros interval_us = 500;
  double interval_jitter_fraction = 0.0;
  Micros start_time_us = 0;

  Bytes packet_size_bytes() const { return message_size_bytes + ip_overhead_bytes; }
  bool carries(Direction d) const;
  void validate() const;
};

/// Logical channel: one direction of one flow.
struct LcId {
  FlowId flow = 0;
  Direction dir = Direction::kUl;

  friend auto operator<=>(const LcId&, const LcId&) = default;
  /// Dense integer key, used for round-robin ordering.
  int key() const { return flow * 2 + (dir == Direction::kDl ? 1 : 0); }
};

std::string to_string(const LcId& lc);

/// Byte view of the three UL logical queues carried by a BSR.
struct UlQueueSet {
  Bytes status_queue = 0;
  Bytes retx_queue = 0;
  Bytes newtx_queue = 0;

  struct Drain {
    Bytes status = 0;
    Bytes retx = 0;
    Bytes newtx = 0;
    Bytes total() const { return status + retx + newtx; }
  };

  Bytes total() const { return status_queue + retx_queue + newtx_queue; }
  /// Removes up to `grant` bytes, status first, then retx, then newtx.
  Drain drain(Bytes grant);
};

/// Per-UE link capacity. Each UE must be registered before use.
class LinkModel {
 public:
  LinkModel() = default;
  explicit LinkModel(double tx_error_probability) : tx_error_probability_(tx_error_probability) {}

  void set_bytes_per_symbol(UeId ue, Bytes bytes_per_symbol);
  Bytes bytes_per_symbol(UeId ue) const;
  bool knows(UeId ue) const { return bytes_per_symbol_.contains(ue); }

  Bytes symbol_capacity_bytes(UeId ue, int n_symbols) const;
  int symbols_needed(UeId ue, Bytes payload_bytes) const;

  double tx_error_probability() const { return tx_error_probability_; }
  void set_tx_error_probability(double p);

  const std::map<UeId, Bytes>& table() const { return bytes_per_symbol_; }

 private:
  std::map<UeId, Bytes> bytes_per_symbol_;
  double tx_error_probability_ = 0.0;
};

inline constexpr Bytes kDefaultBytesPerSymbol = 384;

}  // namespace flexsim
