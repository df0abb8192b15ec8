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

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "flexsim/core.hpp"

namespace flexsim {

/// Buffer left after draining `a_prev` bytes from `q_prev`, assuming no
/// new arrivals.
constexpr Bytes reconstruct_buffer(Bytes q_prev, Bytes a_prev) {
  return q_prev - a_prev > 0 ? q_prev - a_prev : 0;
}

/// Signed ingress; negative only for inconsistent observations.
constexpr Bytes compute_ingress_raw(Bytes q_now, Bytes q_prev, Bytes a_prev) {
  return q_now - q_prev + (a_prev < q_prev ? a_prev : q_prev);
}

/// Ingress clamped at zero.
constexpr Bytes compute_ingress(Bytes q_now, Bytes q_prev, Bytes a_prev) {
  const Bytes raw = compute_ingress_raw(q_now, q_prev, a_prev);
  return raw > 0 ? raw : 0;
}

inline constexpr double kCvSentinel = std::numeric_limits<double>::infinity();

struct BurstStats {
  double burst_size_bytes = 0.0;
  double burst_interval_slots = 0.0;
  double cv_size = kCvSentinel;
  double cv_interval = kCvSentinel;
  int sample_count = 0;
  /// Slot of the most recent non-zero ingress, if any.
  std::optional<SlotIndex> last_burst_slot;
};

/// Ring buffers of the buffer state Q(t) and allocation A(t) of one logical
/// channel, one entry per slot.
class FlowBufferHistory {
 public:
  static constexpr std::size_t kDefaultCapacity = 256;

  explicit FlowBufferHistory(std::size_t capacity = kDefaultCapacity);

  struct BacklogResult {
    SlotIndex applied_slot = 0;
    bool evicted = false;  // sent slot no longer retained
  };

  /// Appends `slot`, which must directly follow the last recorded slot (any
  /// slot is accepted for an empty history). Without an observation Q is
  /// reconstructed from the previous slot.
  void record_slot(SlotIndex slot, std::optional<Bytes> observed_q, Bytes allocated);

  /// Writes a buffer observation at an already recorded slot and
  /// re-reconstructs every later slot that was not observed itself.
  BacklogResult backlog_bsr(SlotIndex bsr_sent_slot, SlotIndex bsr_received_slot, Bytes reported_q);

  /// Overwrites the allocation of a recorded slot and re-reconstructs later
  /// unobserved slots.
  void set_allocation(SlotIndex slot, Bytes allocated);

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  std::size_t capacity() const { return q_.size(); }
  SlotIndex first_slot() const { return first_slot_; }
  SlotIndex last_slot() const { return first_slot_ + static_cast<SlotIndex>(size_) - 1; }
  bool contains(SlotIndex slot) const { return size_ > 0 && slot >= first_slot() && slot <= last_slot(); }

  Bytes q(SlotIndex slot) const { return q_[index(slot)]; }
  Bytes a(SlotIndex slot) const { return a_[index(slot)]; }
  bool known(SlotIndex slot) const { return known_[index(slot)] != 0; }
  /// Most recent observed slot, if any is retained.
  std::optional<SlotIndex> last_known_slot() const;

  /// Ingress of `slot`; nullopt for the oldest retained slot once the ring
  /// has evicted its predecessor.
  std::optional<Bytes> ingress(SlotIndex slot) const;

  /// Ingress of every retained slot for which it is defined, oldest first,
  /// paired with its slot.
  struct IngressSample {
    SlotIndex slot;
    Bytes bytes;
  };
  std::vector<IngressSample> ingress_series() const;

  /// Q values of all retained slots, oldest first.
  std::vector<Bytes> q_series() const;

  /// Retained slots whose raw ingress is negative (inconsistent observations).
  std::int64_t negative_ingress_count() const;
  std::int64_t evicted_backlog_count() const { return evicted_backlogs_; }

 private:
  std::size_t index(SlotIndex slot) const;
  void rereconstruct_after(SlotIndex slot);

  std::vector<Bytes> q_;
  std::vector<Bytes> a_;
  std::vector<char> known_;
  std::size_t head_ = 0;  // ring index of first_slot_
  std::size_t size_ = 0;
  SlotIndex first_slot_ = 0;
  bool has_predecessor_ = false;  // a slot before first_slot_ was ever recorded
  std::int64_t evicted_backlogs_ = 0;
};

/// Burst statistics over an ingress series: size mean over non-zero ingress
/// values, interval mean over gaps between consecutive non-zero slots, and
/// sample coefficients of variation.
BurstStats burst_stats(std::span<const FlowBufferHistory::IngressSample> ingress);
BurstStats burst_stats(const FlowBufferHistory& history);

}  // namespace flexsim
