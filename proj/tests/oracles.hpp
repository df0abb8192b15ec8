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

// Independent reference implementations used as test oracles. They work on
// raw inputs and share nothing with the library beyond its public types.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "flexsim/scheduler.hpp"

namespace oracle {

using flexsim::Bytes;
using flexsim::Candidate;
using flexsim::Direction;
using flexsim::GrantPurpose;
using flexsim::Strategy;

struct Item {
  int key = 0;
  bool bsr = false;
  Bytes demand = 0;
  Bytes bps = 1;
  int fixed = 0;
  __int128 num = 0;  // weight = num / den
  __int128 den = 1;
};

inline Item item_of(const Candidate& c) {
  Item it;
  it.key = c.input.lc.key();
  it.bsr = c.purpose == GrantPurpose::kBsr;
  it.demand = c.demand;
  it.bps = c.bytes_per_symbol;
  it.fixed = c.fixed_symbols;
  if (it.bsr) {
    it.num = c.weight.num;
    it.den = c.weight.den;
  } else {
    // (1/p) * (r / (sum/count)) = r * count / (p * sum)
    const Bytes r = c.input.instantaneous_rate;
    it.num = static_cast<__int128>(r) * c.input.average_rate.count;
    it.den = static_cast<__int128>(c.input.qos_priority) * c.input.average_rate.sum;
  }
  return it;
}

struct Served {
  int key;
  bool bsr;
  double w;
};

// Greedy highest-weight-first fill of `cap` symbols.
inline std::vector<Served> greedy(std::vector<Item> items, int cap, int rr) {
  std::vector<Served> served;
  std::erase_if(items, [](const Item& i) { return i.num == 0 || (!i.bsr && i.demand <= 0) || (i.bsr && i.fixed <= 0); });
  while (cap > 0 && !items.empty()) {
    std::size_t b = 0;
    for (std::size_t i = 1; i < items.size(); ++i) {
      const __int128 lhs = items[i].num * items[b].den;
      const __int128 rhs = items[b].num * items[i].den;
      const int ri = items[i].key >= rr ? 0 : 1;
      const int rb = items[b].key >= rr ? 0 : 1;
      if (lhs > rhs || (lhs == rhs && std::pair(ri, items[i].key) < std::pair(rb, items[b].key))) b = i;
    }
    const Item it = items[b];
    items.erase(items.begin() + static_cast<std::ptrdiff_t>(b));
    int n = 0;
    if (it.bsr) {
      if (it.fixed > cap) continue;
      n = it.fixed;
    } else {
      const Bytes bytes = std::min<Bytes>(it.demand, cap * it.bps);
      n = static_cast<int>((bytes + it.bps - 1) / it.bps);
    }
    cap -= n;
    rr = it.key + 1;
    served.push_back({it.key, it.bsr, static_cast<double>(it.num) / static_cast<double>(it.den)});
  }
  return served;
}

inline double canonical_sum(std::vector<Served> s) {
  std::sort(s.begin(), s.end(), [](const Served& a, const Served& b) {
    return std::pair(a.key, a.bsr) < std::pair(b.key, b.bsr);
  });
  double r = 0.0;
  for (const auto& x : s) r += x.w;
  return r;
}

inline double strategy_reward(Strategy s, const std::vector<Candidate>& ul, const std::vector<Candidate>& dl,
                              std::optional<Direction> prev, int usable, int guard, int rr) {
  std::vector<Item> pool;
  int cap = usable;
  if (s != Strategy::kUlOnly) {
    for (const auto& c : dl) pool.push_back(item_of(c));
  }
  if (s != Strategy::kDlOnly) {
    for (const auto& c : ul) pool.push_back(item_of(c));
  }
  if (s == Strategy::kMixed) cap -= guard;
  if (s == Strategy::kUlOnly && prev == Direction::kDl) cap -= guard;
  return canonical_sum(greedy(pool, cap, rr));
}

inline double best_reward(const std::vector<Candidate>& ul, const std::vector<Candidate>& dl,
                          std::optional<Direction> prev, int usable, int guard, int rr) {
  double best = 0.0;
  for (Strategy s : {Strategy::kUlOnly, Strategy::kDlOnly, Strategy::kMixed}) {
    best = std::max(best, strategy_reward(s, ul, dl, prev, usable, guard, rr));
  }
  return best;
}

// Straight-line restatements of the buffer recurrences.
inline Bytes reconstruct(Bytes q_prev, Bytes a_prev) {
  Bytes r = q_prev - a_prev;
  if (r < 0) r = 0;
  return r;
}

inline Bytes ingress(Bytes q_now, Bytes q_prev, Bytes a_prev) {
  Bytes drained = a_prev;
  if (q_prev < drained) drained = q_prev;
  Bytes r = q_now - q_prev + drained;
  if (r < 0) r = 0;
  return r;
}

}  // namespace oracle
