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

#include <doctest.h>

#include <cmath>
#include <random>

#include "flexsim/measurement.hpp"

using namespace flexsim;

namespace {

std::vector<FlowBufferHistory::IngressSample> series(std::initializer_list<Bytes> xs) {
  std::vector<FlowBufferHistory::IngressSample> out;
  SlotIndex s = 0;
  for (Bytes x : xs) out.push_back({s++, x});
  return out;
}

}  // namespace

TEST_CASE("buffer reconstruction") {
  CHECK(reconstruct_buffer(100, 40) == 60);
  CHECK(reconstruct_buffer(30, 50) == 0);
  CHECK(reconstruct_buffer(0, 0) == 0);
  CHECK(reconstruct_buffer(123, 0) == 123);
}

TEST_CASE("ingress") {
  CHECK(compute_ingress(120, 100, 40) == 60);
  CHECK(compute_ingress(60, 100, 40) == 0);
  CHECK(compute_ingress(10, 30, 50) == 10);
  CHECK(compute_ingress_raw(10, 100, 40) == -50);
  CHECK(compute_ingress(10, 100, 40) == 0);
}

TEST_CASE("record_slot") {
  FlowBufferHistory h(8);
  h.record_slot(5, 70, 0);
  CHECK(h.ingress(5) == 70);  // first sample
  h.record_slot(6, std::nullopt, 0);
  CHECK(h.q(6) == 70);
  CHECK_FALSE(h.known(6));
  h.set_allocation(6, 70);
  h.record_slot(7, std::nullopt, 0);
  CHECK(h.q(7) == 0);
  h.record_slot(8, 70, 0);
  CHECK(h.ingress(8) == 70);
  CHECK_THROWS_AS(h.record_slot(10, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(h.record_slot(8, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(h.record_slot(9, -1, 0), std::invalid_argument);
}

TEST_CASE("backlogging a BSR at its sent slot") {
  SUBCASE("no allocations") {
    FlowBufferHistory h(16);
    for (SlotIndex s = 8; s <= 12; ++s) h.record_slot(s, s == 8 ? std::optional<Bytes>(0) : std::nullopt, 0);
    const auto r = h.backlog_bsr(10, 12, 70);
    CHECK(r.applied_slot == 10);
    CHECK_FALSE(r.evicted);
    CHECK(h.q(9) == 0);
    CHECK(h.q(10) == 70);
    CHECK(h.q(11) == 70);
    CHECK(h.q(12) == 70);
    CHECK(h.known(10));
  }
  SUBCASE("allocation at the sent slot") {
    FlowBufferHistory h(16);
    for (SlotIndex s = 8; s <= 12; ++s) h.record_slot(s, s == 8 ? std::optional<Bytes>(0) : std::nullopt, s == 10 ? 70 : 0);
    h.backlog_bsr(10, 12, 70);
    CHECK(h.q(10) == 70);
    CHECK(h.q(11) == 0);
    CHECK(h.q(12) == 0);
  }
  SUBCASE("sent slot already evicted") {
    FlowBufferHistory h(4);
    for (SlotIndex s = 0; s < 10; ++s) h.record_slot(s, std::nullopt, 0);
    const auto r = h.backlog_bsr(2, 9, 50);
    CHECK(r.evicted);
    CHECK(r.applied_slot == h.first_slot());
    CHECK(h.q(9) == 50);
    CHECK(h.evicted_backlog_count() == 1);
  }
  SUBCASE("never touches slots before the sent slot") {
    FlowBufferHistory h(16);
    for (SlotIndex s = 0; s < 10; ++s) h.record_slot(s, s % 3 == 0 ? std::optional<Bytes>(s * 10) : std::nullopt, 5);
    std::vector<Bytes> before;
    for (SlotIndex s = 0; s < 6; ++s) before.push_back(h.q(s));
    h.backlog_bsr(6, 9, 999);
    for (SlotIndex s = 0; s < 6; ++s) CHECK(h.q(s) == before[static_cast<std::size_t>(s)]);
  }
  SUBCASE("errors") {
    FlowBufferHistory h(4);
    h.record_slot(0, 0, 0);
    CHECK_THROWS(h.backlog_bsr(2, 1, 5));
    CHECK_THROWS(h.backlog_bsr(3, 3, 5));
    CHECK_THROWS(h.backlog_bsr(0, 1, -5));
  }
}

TEST_CASE("periodic backlogged reports give exact burst statistics") {
  // The UE reports 70 B every 2 slots; each report is sent and drained in
  // the same slot.
  FlowBufferHistory h(64);
  for (SlotIndex s = 0; s < 40; ++s) {
    const bool report = s % 2 == 1;
    h.record_slot(s, s == 0 ? std::optional<Bytes>(0) : std::nullopt, report ? 70 : 0);
    if (report) h.backlog_bsr(s, s, 70);
  }
  const auto st = burst_stats(h);
  CHECK(st.burst_size_bytes == 70.0);
  CHECK(st.burst_interval_slots == 2.0);
  CHECK(st.cv_interval == 0.0);
}

TEST_CASE("burst statistics") {
  SUBCASE("constant series") {
    const auto s = series({0, 70, 0, 70, 0, 70});
    const auto st = burst_stats(s);
    CHECK(st.burst_size_bytes == 70.0);
    CHECK(st.burst_interval_slots == 2.0);
    CHECK(st.cv_size == 0.0);
    CHECK(st.cv_interval == 0.0);
    CHECK(st.sample_count == 3);
    CHECK(st.last_burst_slot == 5);
  }
  SUBCASE("uneven gaps") {
    const auto s = series({70, 0, 0, 70, 0, 70});
    const auto st = burst_stats(s);
    // gaps {3, 2}: mean 2.5, sample sd sqrt(0.5)
    CHECK(st.burst_interval_slots == doctest::Approx(2.5));
    CHECK(st.cv_interval == doctest::Approx(std::sqrt(0.5) / 2.5));
    CHECK(st.cv_interval > 0.0);
  }
  SUBCASE("single burst") {
    const auto s = series({0, 70, 0, 0});
    const auto st = burst_stats(s);
    CHECK(std::isinf(st.cv_size));
    CHECK(std::isinf(st.cv_interval));
    CHECK(st.sample_count == 1);
  }
  SUBCASE("two bursts: one gap") {
    const auto s = series({0, 60, 0, 80});
    const auto st = burst_stats(s);
    CHECK(st.cv_size == doctest::Approx(std::sqrt(200.0) / 70.0));
    CHECK(std::isinf(st.cv_interval));
  }
}

TEST_CASE("ring eviction") {
  FlowBufferHistory h(4);
  for (SlotIndex s = 0; s < 6; ++s) h.record_slot(s, s * 10, 0);
  CHECK(h.size() == 4);
  CHECK(h.first_slot() == 2);
  CHECK(h.last_slot() == 5);
  CHECK_FALSE(h.ingress(2).has_value());
  CHECK(h.ingress(3) == 10);
  CHECK(h.ingress_series().size() == 3);
  CHECK_THROWS_AS(h.q(1), std::out_of_range);
}

TEST_CASE("negative ingress is clamped and counted") {
  FlowBufferHistory h(8);
  h.record_slot(0, 100, 0);
  h.record_slot(1, 20, 0);  // 80 B vanished without an allocation
  CHECK(h.ingress(1) == 0);
  CHECK(h.negative_ingress_count() == 1);
  CHECK(h.negative_ingress_count() == 1);
}

TEST_CASE("round trip through ingress reproduces fully observed traces") {
  std::mt19937_64 gen(42);
  std::uniform_int_distribution<Bytes> qd(0, 500);
  std::uniform_int_distribution<Bytes> ad(0, 300);
  for (int trace = 0; trace < 200; ++trace) {
    FlowBufferHistory h(64);
    std::vector<Bytes> q;
    std::vector<Bytes> a;
    for (SlotIndex s = 0; s < 40; ++s) {
      q.push_back(qd(gen));
      a.push_back(ad(gen));
    }
    // Observations consistent with the allocations: Q(t) >= Q(t-1) - A(t-1).
    for (std::size_t t = 1; t < q.size(); ++t) q[t] = std::max(q[t], reconstruct_buffer(q[t - 1], a[t - 1]));
    for (std::size_t t = 0; t < q.size(); ++t) h.record_slot(static_cast<SlotIndex>(t), q[t], a[t]);
    Bytes replay = q[0];
    for (SlotIndex t = 1; t < 40; ++t) {
      const Bytes prev = replay;
      replay = prev + *h.ingress(t) - std::min(a[static_cast<std::size_t>(t - 1)], prev);
      CHECK(replay == q[static_cast<std::size_t>(t)]);
    }
  }
}
