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

#include <numeric>
#include <vector>

#include "flexsim/baselines.hpp"
#include "flexsim/flexsched.hpp"

using namespace flexsim;

namespace {

Candidate data(FlowId flow, Direction dir, int prio, Bytes demand, Bytes bps = 70, Rate avg = {70, 1}) {
  PriorityInput in{.lc = {flow, dir},
                   .direction = dir,
                   .qos_priority = prio,
                   .instantaneous_rate = std::min<Bytes>(demand, 12 * bps),
                   .average_rate = avg};
  return make_data_candidate(in, static_cast<UeId>(flow), demand, bps);
}

int total_symbols(const std::vector<Allocation>& a) {
  return std::accumulate(a.begin(), a.end(), 0, [](int s, const Allocation& x) { return s + x.n_symbols; });
}

}  // namespace

TEST_CASE("baseline kind names round-trip") {
  for (auto k : {BaselineKind::kPf, BaselineKind::kMr, BaselineKind::kQos}) {
    CHECK(parse_baseline_kind(to_string(k)) == k);
  }
  CHECK_THROWS(parse_baseline_kind("rr"));
}

TEST_CASE("baseline metrics") {
  const PriorityInput in{.qos_priority = 20, .instantaneous_rate = 140, .average_rate = {70, 1}};
  CHECK(baseline_metric(BaselineKind::kPf, in) == doctest::Approx(2.0));
  CHECK(baseline_metric(BaselineKind::kQos, in) == doctest::Approx(0.1));
  CHECK(baseline_metric(BaselineKind::kMr, in) == doctest::Approx(140.0));
}

TEST_CASE("13 equal UEs on 12 symbols get nothing under floor rounding") {
  std::vector<Candidate> c;
  for (FlowId f = 0; f < 13; ++f) c.push_back(data(f, Direction::kDl, 20, 70));
  for (auto k : {BaselineKind::kPf, BaselineKind::kQos}) {
    CHECK(proportional_share(k, c, 12, 0, false).empty());
  }
}

TEST_CASE("largest-remainder mode hands out the leftovers") {
  std::vector<Candidate> c;
  for (FlowId f = 0; f < 13; ++f) c.push_back(data(f, Direction::kDl, 20, 70));
  const auto a = proportional_share(BaselineKind::kPf, c, 12, 0, true);
  CHECK(total_symbols(a) == 12);
  CHECK(a.size() == 12);
}

TEST_CASE("a single UE gets everything it needs") {
  const std::vector<Candidate> c{data(0, Direction::kDl, 20, 12 * 70)};
  for (auto k : {BaselineKind::kPf, BaselineKind::kQos, BaselineKind::kMr}) {
    const auto a = proportional_share(k, c, 12, 0, false);
    REQUIRE(a.size() == 1);
    CHECK(a[0].n_symbols == 12);
  }
}

TEST_CASE("shares are capped at need") {
  const std::vector<Candidate> c{data(0, Direction::kDl, 20, 70), data(1, Direction::kDl, 20, 70)};
  const auto a = proportional_share(BaselineKind::kPf, c, 12, 0, false);
  REQUIRE(a.size() == 2);
  CHECK(a[0].n_symbols == 1);
  CHECK(a[1].n_symbols == 1);
  CHECK(a[1].first_symbol == 1);
}

TEST_CASE("MR gives the whole direction to the strictly best rate") {
  const std::vector<Candidate> c{data(0, Direction::kDl, 20, 12 * 70), data(1, Direction::kDl, 20, 6 * 70)};
  const auto a = proportional_share(BaselineKind::kMr, c, 12, 0, false);
  REQUIRE(a.size() == 1);
  CHECK(a[0].lc.flow == 0);
  CHECK(a[0].n_symbols == 12);
}

TEST_CASE("PF serves every UE when there are at most ten") {
  for (int n = 1; n <= 10; ++n) {
    std::vector<Candidate> c;
    for (FlowId f = 0; f < n; ++f) c.push_back(data(f, Direction::kUl, 20, 70));
    const auto plan = baseline_allocate(BaselineKind::kPf, c, {}, 12, 2);
    CHECK(static_cast<int>(plan.allocations.size()) == n);
  }
}

TEST_CASE("baseline layout: DL head, guard, UL tail") {
  const std::vector<Candidate> ul{data(0, Direction::kUl, 20, 140)};
  const std::vector<Candidate> dl{data(1, Direction::kDl, 20, 70)};
  const auto plan = baseline_allocate(BaselineKind::kPf, ul, dl, 12, 2);
  CHECK(plan.strategy == Strategy::kMixed);
  for (const auto& a : plan.allocations) {
    if (a.dir == Direction::kUl) {
      CHECK(a.end_symbol() == 12);
      CHECK(a.first_symbol == 10);
    } else {
      CHECK(a.first_symbol == 0);
    }
  }
  CHECK(plan.guard_symbol_positions == std::vector<int>{8, 9});
}

TEST_CASE("QoS baseline starves DL when UL demand is saturated") {
  std::vector<Candidate> ul, dl;
  for (FlowId f = 0; f < 13; ++f) {
    ul.push_back(data(2 * f, Direction::kUl, 20, 12 * 70));
    dl.push_back(data(2 * f + 1, Direction::kDl, 20, 70));
  }
  // UL first takes everything but the guard; nothing is left for DL
  const auto plan = baseline_allocate(BaselineKind::kQos, ul, dl, 12, 2, true);
  CHECK_FALSE(plan.has(Direction::kDl));
  CHECK(total_symbols(plan.allocations) == 10);
}

TEST_CASE("BSR grants precede UL data") {
  PriorityInput in{.lc = {3, Direction::kUl}, .direction = Direction::kUl, .qos_priority = 20,
                   .instantaneous_rate = 70, .average_rate = {70, 1}};
  const std::vector<Candidate> ul{make_bsr_candidate(in, 3, 70, 1, priority(in)), data(0, Direction::kUl, 20, 70)};
  const auto plan = baseline_allocate(BaselineKind::kPf, ul, {}, 12, 2);
  REQUIRE(plan.allocations.size() == 2);
  bool saw_bsr = false;
  for (const auto& a : plan.allocations) {
    if (a.purpose == GrantPurpose::kBsr) {
      saw_bsr = true;
      CHECK(a.n_symbols == 1);
    }
  }
  CHECK(saw_bsr);
}
