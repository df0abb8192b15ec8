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

#include <set>

#include "flexsim/measurement.hpp"
#include "flexsim/traffic.hpp"

using namespace flexsim;

TEST_CASE("rng streams are reproducible and independent") {
  Rng a = Rng::stream(7, 1);
  Rng b = Rng::stream(7, 1);
  Rng c = Rng::stream(7, 2);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform01();
    CHECK(x == b.uniform01());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
    if (x != c.uniform01()) differs = true;
  }
  CHECK(differs);
}

TEST_CASE("deterministic arrivals are strictly periodic") {
  FlowSpec f;
  f.interval_us = 500;
  ArrivalProcess p(f, Direction::kUl, 3);
  Micros prev = -1;
  for (int i = 0; i < 50; ++i) {
    const auto a = p.pop();
    CHECK(a.arrival_time_us == 500 * i);
    CHECK(a.size_bytes == 70);
    CHECK(a.sequence_number == i);
    CHECK(a.arrival_time_us > prev);
    prev = a.arrival_time_us;
  }
}

TEST_CASE("jittered gaps stay within the jitter bound") {
  FlowSpec f;
  f.interval_us = 25'000;
  f.interval_jitter_fraction = 0.25;
  ArrivalProcess p(f, Direction::kDl, 11);
  auto prev = p.pop().arrival_time_us;
  CHECK(prev >= 0);
  CHECK(prev < 25'000);
  std::set<Micros> gaps;
  for (int i = 0; i < 2000; ++i) {
    const auto t = p.pop().arrival_time_us;
    const auto gap = t - prev;
    CHECK(gap >= 18'750);
    CHECK(gap <= 31'250);
    gaps.insert(gap);
    prev = t;
  }
  CHECK(gaps.size() > 100);
}

TEST_CASE("traffic pattern validation") {
  TrafficPattern p;
  p.base_interval_us = 0;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = {};
  p.jitter_fraction = 0.1;  // deterministic kind cannot carry jitter
  CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("scenario presets") {
  auto s1 = build_scenario(1, 5);
  REQUIRE(s1.size() == 5);
  for (const auto& f : s1) {
    CHECK(f.direction == FlowDirection::kBidirectional);
    CHECK(f.qos.priority == 19);
    CHECK(f.packet_size_bytes() == 70);
    CHECK(f.interval_us == 500);
  }
  auto s2 = build_scenario(2, 3);
  CHECK(s2[0].interval_us == 25'000);
  CHECK(s2[0].interval_jitter_fraction == doctest::Approx(0.25));
  CHECK(s2[0].message_size_bytes == 145);

  auto s3 = build_scenario(3, 8);
  REQUIRE(s3.size() == 8);
  int ul = 0;
  int dl_late = 0;
  for (const auto& f : s3) {
    if (f.direction == FlowDirection::kUl) {
      ++ul;
      CHECK(f.qos.priority == 20);
    } else {
      CHECK(f.qos.priority == 19);
      if (f.start_time_us == 5'000'000) ++dl_late;
    }
    CHECK(f.interval_us == 50);
  }
  CHECK(ul == 4);
  CHECK(dl_late == 2);

  CHECK_THROWS_AS(build_scenario(1, 21), ConfigError);
  CHECK_THROWS_AS(build_scenario(1, 0), ConfigError);
  CHECK_THROWS_AS(build_scenario(4, 1), ConfigError);
}

TEST_CASE("deterministic generator trace has zero burst variation") {
  // One 70 B packet every 2 slots, observed every slot, never drained.
  FlowSpec f;
  f.interval_us = 1000;
  ArrivalProcess p(f, Direction::kDl, 1);
  FlowBufferHistory h(64);
  Bytes q = 0;
  for (SlotIndex s = 0; s < 60; ++s) {
    while (p.peek().arrival_time_us <= s * 500) q += p.pop().size_bytes;
    h.record_slot(s, q, 0);
  }
  const auto st = burst_stats(h);
  CHECK(st.burst_size_bytes == 70.0);
  CHECK(st.burst_interval_slots == 2.0);
  CHECK(st.cv_size == 0.0);
  CHECK(st.cv_interval == 0.0);
}
