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

#include "flexsim/core.hpp"

#include <algorithm>

namespace flexsim {

std::string_view to_string(Direction d) { return d == Direction::kUl ? "UL" : "DL"; }

std::string_view to_string(FlowDirection d) {
  switch (d) {
    case FlowDirection::kUl:
      return "UL";
    case FlowDirection::kDl:
      return "DL";
    case FlowDirection::kBidirectional:
      return "bidirectional";
  }
  return "?";
}

std::string to_string(const LcId& lc) {
  return std::to_string(lc.flow) + "/" + std::string(to_string(lc.dir));
}

void SlotClock::validate() const {
  if (usable_symbols <= 0 || usable_symbols > symbols_per_slot) {
    throw ConfigError("usable_symbols must be in (0, symbols_per_slot]");
  }
  if (slot_duration_us <= 0) throw ConfigError("slot_duration_us must be positive");
  if (slot_index < 0) throw ConfigError("slot_index must be non-negative");
}

SlotIndex SlotClock::first_slot_at_or_after(Micros t) const {
  if (t <= 0) return 0;
  return (t + slot_duration_us - 1) / slot_duration_us;
}

Micros SlotClock::usable_symbol_end_us(SlotIndex slot, int usable_end) const {
  const int absolute = (symbols_per_slot - usable_symbols) + usable_end;
  return slot_start_us(slot) + (static_cast<Micros>(absolute) * slot_duration_us) / symbols_per_slot;
}

void TimingConfig::validate() const {
  if (k0 < 0) throw ConfigError("k0 must be non-negative");
  if (k2 <= k0) throw ConfigError("k2 must be larger than k0");
  if (guard_symbols < 0) throw ConfigError("guard_symbols must be non-negative");
  if (sr_delay < 0) throw ConfigError("sr_delay must be non-negative");
  if (bsr_symbols <= 0) throw ConfigError("bsr_symbols must be positive");
}

void QosProfile::validate() const {
  if (priority < 1 || priority > 127) throw ConfigError("5QI priority must be in [1, 127]");
  if (packet_delay_budget_us <= 0) throw ConfigError("packet_delay_budget_us must be positive");
  if (packet_error_rate < 0.0 || packet_error_rate > 1.0) {
    throw ConfigError("packet_error_rate must be a fraction");
  }
}

bool QosProfile::has_builtin(int five_qi) { return five_qi == 82 || five_qi == 83; }

QosProfile QosProfile::from_five_qi(int five_qi) {
  QosProfile q;
  q.five_qi = five_qi;
  q.resource_type = ResourceType::kGbr;
  q.packet_delay_budget_us = 10'000;
  switch (five_qi) {
    case 82:
      q.priority = 19;
      break;
    case 83:
      q.priority = 20;
      break;
    default:
      throw ConfigError("5QI " + std::to_string(five_qi) + " has no built-in priority; set it explicitly");
  }
  return q;
}

bool FlowSpec::carries(Direction d) const {
  switch (direction) {
    case FlowDirection::kUl:
      return d == Direction::kUl;
    case FlowDirection::kDl:
      return d == Direction::kDl;
    case FlowDirection::kBidirectional:
      return true;
  }
  return false;
}

void FlowSpec::validate() const {
  const std::string where = "flow " + std::to_string(flow_id) + ": ";
  if (message_size_bytes <= 0) throw ConfigError(where + "message_size_bytes must be positive");
  if (ip_overhead_bytes < 0) throw ConfigError(where + "ip_overhead_bytes must be non-negative");
  if (interval_us <= 0) throw ConfigError(where + "interval_us must be positive");
  if (interval_jitter_fraction < 0.0 || interval_jitter_fraction >= 1.0) {
    throw ConfigError(where + "interval_jitter_fraction must be in [0, 1)");
  }
  if (start_time_us < 0) throw ConfigError(where + "start_time_us must be non-negative");
  try {
    qos.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(where + e.what());
  }
}

UlQueueSet::Drain UlQueueSet::drain(Bytes grant) {
  Drain d;
  Bytes left = std::max<Bytes>(grant, 0);
  d.status = std::min(left, status_queue);
  left -= d.status;
  d.retx = std::min(left, retx_queue);
  left -= d.retx;
  d.newtx = std::min(left, newtx_queue);
  status_queue -= d.status;
  retx_queue -= d.retx;
  newtx_queue -= d.newtx;
  return d;
}

void LinkModel::set_bytes_per_symbol(UeId ue, Bytes bytes_per_symbol) {
  if (bytes_per_symbol <= 0) {
    throw ConfigError("bytes_per_symbol must be positive for UE " + std::to_string(ue));
  }
  bytes_per_symbol_[ue] = bytes_per_symbol;
}

Bytes LinkModel::bytes_per_symbol(UeId ue) const {
  auto it = bytes_per_symbol_.find(ue);
  if (it == bytes_per_symbol_.end()) throw ConfigError("unknown UE " + std::to_string(ue));
  return it->second;
}

Bytes LinkModel::symbol_capacity_bytes(UeId ue, int n_symbols) const {
  if (n_symbols < 0) throw std::invalid_argument("n_symbols must be non-negative");
  return static_cast<Bytes>(n_symbols) * bytes_per_symbol(ue);
}

int LinkModel::symbols_needed(UeId ue, Bytes payload_bytes) const {
  if (payload_bytes < 0) throw std::invalid_argument("payload_bytes must be non-negative");
  const Bytes bps = bytes_per_symbol(ue);
  return static_cast<int>((payload_bytes + bps - 1) / bps);
}

void LinkModel::set_tx_error_probability(double p) {
  if (p < 0.0 || p >= 1.0) throw ConfigError("tx_error_probability must be in [0, 1)");
  tx_error_probability_ = p;
}

}  // namespace flexsim
