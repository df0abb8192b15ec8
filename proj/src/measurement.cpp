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

#include "flexsim/measurement.hpp"

#include <cmath>
#include <stdexcept>

namespace flexsim {

FlowBufferHistory::FlowBufferHistory(std::size_t capacity) : q_(capacity), a_(capacity), known_(capacity) {
  if (capacity < 2) throw ConfigError("history capacity must be at least 2 slots");
}

std::size_t FlowBufferHistory::index(SlotIndex slot) const {
  if (!contains(slot)) throw std::out_of_range("slot " + std::to_string(slot) + " not retained");
  return (head_ + static_cast<std::size_t>(slot - first_slot_)) % q_.size();
}

void FlowBufferHistory::record_slot(SlotIndex slot, std::optional<Bytes> observed_q, Bytes allocated) {
  if (allocated < 0) throw std::invalid_argument("allocation must be non-negative");
  if (observed_q && *observed_q < 0) throw std::invalid_argument("buffer observation must be non-negative");

  Bytes q_value = 0;
  if (size_ == 0) {
    first_slot_ = slot;
    q_value = observed_q.value_or(0);
  } else {
    if (slot != last_slot() + 1) {
      throw std::invalid_argument("non-monotonic slot " + std::to_string(slot) + " after " +
                                  std::to_string(last_slot()));
    }
    q_value = observed_q ? *observed_q : reconstruct_buffer(q(slot - 1), a(slot - 1));
  }

  if (size_ == q_.size()) {
    head_ = (head_ + 1) % q_.size();
    ++first_slot_;
    --size_;
    has_predecessor_ = true;
  }
  const std::size_t i = (head_ + size_) % q_.size();
  ++size_;
  q_[i] = q_value;
  a_[i] = allocated;
  known_[i] = observed_q.has_value() ? 1 : 0;
}

void FlowBufferHistory::rereconstruct_after(SlotIndex slot) {
  for (SlotIndex s = slot + 1; s <= last_slot(); ++s) {
    const std::size_t i = index(s);
    if (known_[i]) continue;
    q_[i] = reconstruct_buffer(q(s - 1), a(s - 1));
  }
}

FlowBufferHistory::BacklogResult FlowBufferHistory::backlog_bsr(SlotIndex bsr_sent_slot,
                                                                SlotIndex bsr_received_slot, Bytes reported_q) {
  if (bsr_sent_slot > bsr_received_slot) throw std::invalid_argument("BSR received before it was sent");
  if (reported_q < 0) throw std::invalid_argument("BSR report must be non-negative");
  if (size_ == 0 || bsr_sent_slot > last_slot()) {
    throw std::out_of_range("BSR sent slot " + std::to_string(bsr_sent_slot) + " not recorded yet");
  }
  BacklogResult r;
  r.applied_slot = bsr_sent_slot;
  if (bsr_sent_slot < first_slot_) {
    r.applied_slot = first_slot_;
    r.evicted = true;
    ++evicted_backlogs_;
  }
  const std::size_t i = index(r.applied_slot);
  q_[i] = reported_q;
  known_[i] = 1;
  rereconstruct_after(r.applied_slot);
  return r;
}

void FlowBufferHistory::set_allocation(SlotIndex slot, Bytes allocated) {
  if (allocated < 0) throw std::invalid_argument("allocation must be non-negative");
  if (!contains(slot)) return;  // evicted: nothing left to correct
  a_[index(slot)] = allocated;
  rereconstruct_after(slot);
}

std::optional<SlotIndex> FlowBufferHistory::last_known_slot() const {
  for (SlotIndex s = last_slot(); size_ > 0 && s >= first_slot_; --s) {
    if (known(s)) return s;
  }
  return std::nullopt;
}

std::optional<Bytes> FlowBufferHistory::ingress(SlotIndex slot) const {
  if (slot == first_slot_) {
    if (has_predecessor_) return std::nullopt;
    return std::max<Bytes>(q(slot), 0);
  }
  return compute_ingress(q(slot), q(slot - 1), a(slot - 1));
}

std::int64_t FlowBufferHistory::negative_ingress_count() const {
  std::int64_t n = 0;
  for (SlotIndex s = first_slot_ + 1; size_ > 0 && s <= last_slot(); ++s) {
    if (compute_ingress_raw(q(s), q(s - 1), a(s - 1)) < 0) ++n;
  }
  return n;
}

std::vector<FlowBufferHistory::IngressSample> FlowBufferHistory::ingress_series() const {
  std::vector<IngressSample> out;
  out.reserve(size_);
  for (SlotIndex s = first_slot_; size_ > 0 && s <= last_slot(); ++s) {
    if (auto i = ingress(s)) out.push_back({s, *i});
  }
  return out;
}

std::vector<Bytes> FlowBufferHistory::q_series() const {
  std::vector<Bytes> out;
  out.reserve(size_);
  for (SlotIndex s = first_slot_; size_ > 0 && s <= last_slot(); ++s) out.push_back(q(s));
  return out;
}

namespace {

struct MeanCv {
  double mean = 0.0;
  double cv = kCvSentinel;
};

// Sample standard deviation over mean; sentinel below two samples.
MeanCv mean_cv(const std::vector<double>& xs) {
  MeanCv r;
  if (xs.empty()) return r;
  double sum = 0.0;
  for (double x : xs) sum += x;
  r.mean = sum / static_cast<double>(xs.size());
  if (xs.size() < 2 || r.mean <= 0.0) return r;
  double ss = 0.0;
  for (double x : xs) ss += (x - r.mean) * (x - r.mean);
  r.cv = std::sqrt(ss / static_cast<double>(xs.size() - 1)) / r.mean;
  return r;
}

}  // namespace

BurstStats burst_stats(std::span<const FlowBufferHistory::IngressSample> ingress) {
  std::vector<double> sizes;
  std::vector<double> gaps;
  std::optional<SlotIndex> last;
  for (const auto& sample : ingress) {
    if (sample.bytes <= 0) continue;
    sizes.push_back(static_cast<double>(sample.bytes));
    if (last) gaps.push_back(static_cast<double>(sample.slot - *last));
    last = sample.slot;
  }
  BurstStats st;
  st.sample_count = static_cast<int>(sizes.size());
  st.last_burst_slot = last;
  const MeanCv size = mean_cv(sizes);
  const MeanCv gap = mean_cv(gaps);
  st.burst_size_bytes = size.mean;
  st.burst_interval_slots = gap.mean;
  if (st.sample_count >= 2) {
    st.cv_size = size.cv;
    st.cv_interval = gap.cv;
  }
  return st;
}

BurstStats burst_stats(const FlowBufferHistory& history) {
  const auto series = history.ingress_series();
  return burst_stats(std::span<const FlowBufferHistory::IngressSample>(series));
}

}  // namespace flexsim
