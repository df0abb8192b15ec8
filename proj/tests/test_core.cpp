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

#include "flexsim/core.hpp"

using namespace flexsim;

TEST_CASE("slot clock timing") {
  SlotClock c;
  CHECK(c.slot_start_us(3) == 1500);
  CHECK(c.first_slot_at_or_after(0) == 0);
  CHECK(c.first_slot_at_or_after(1) == 1);
  CHECK(c.first_slot_at_or_after(500) == 1);
  CHECK(c.first_slot_at_or_after(501) == 2);
  // Two control symbols lead the slot; usable symbol 12 ends the slot.
  CHECK(c.usable_symbol_end_us(0, 12) == 500);
  CHECK(c.usable_symbol_end_us(2, 1) == 1000 + (3 * 500) / 14);

  SlotClock bad;
  bad.usable_symbols = 15;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("timing config rejects k2 not after k0") {
  TimingConfig t;
  CHECK_NOTHROW(t.validate());
  t.k2 = 0;
  CHECK_THROWS_AS(t.validate(), ConfigError);
  t = {};
  t.guard_symbols = -1;
  CHECK_THROWS_AS(t.validate(), ConfigError);
}

TEST_CASE("built-in 5QI profiles") {
  CHECK(QosProfile::from_five_qi(82).priority == 19);
  CHECK(QosProfile::from_five_qi(83).priority == 20);
  CHECK(QosProfile::from_five_qi(82).packet_delay_budget_us == 10'000);
  CHECK_THROWS_AS(QosProfile::from_five_qi(9), ConfigError);
  QosProfile q;
  q.priority = 0;
  CHECK_THROWS_AS(q.validate(), ConfigError);
  q.priority = 128;
  CHECK_THROWS_AS(q.validate(), ConfigError);
}

TEST_CASE("flow spec") {
  FlowSpec f;
  CHECK(f.packet_size_bytes() == 70);
  f.direction = FlowDirection::kUl;
  CHECK(f.carries(Direction::kUl));
  CHECK_FALSE(f.carries(Direction::kDl));
  f.interval_us = 0;
  CHECK_THROWS_AS(f.validate(), ConfigError);
}

TEST_CASE("logical channel keys are dense and ordered") {
  CHECK(LcId{3, Direction::kUl}.key() == 6);
  CHECK(LcId{3, Direction::kDl}.key() == 7);
  CHECK(LcId{1, Direction::kDl} < LcId{2, Direction::kUl});
}

TEST_CASE("UL queue set drains status, retx, newtx in order") {
  UlQueueSet q{10, 70, 70};
  auto d = q.drain(100);
  CHECK(d.status == 10);
  CHECK(d.retx == 70);
  CHECK(d.newtx == 20);
  CHECK(q.total() == 50);
  d = q.drain(500);
  CHECK(d.total() == 50);
  CHECK(q.total() == 0);
  CHECK(q.drain(-5).total() == 0);
}

TEST_CASE("link model") {
  LinkModel link;
  CHECK_THROWS_AS(link.bytes_per_symbol(1), ConfigError);
  link.set_bytes_per_symbol(1, 96);
  CHECK(link.symbol_capacity_bytes(1, 12) == 1152);
  CHECK(link.symbols_needed(1, 0) == 0);
  CHECK(link.symbols_needed(1, 96) == 1);
  CHECK(link.symbols_needed(1, 97) == 2);
  CHECK_THROWS_AS(link.set_bytes_per_symbol(2, 0), ConfigError);
  CHECK_THROWS_AS(link.set_tx_error_probability(1.0), ConfigError);
}
