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

#include "flexsim/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "flexsim/flexsched.hpp"

namespace flexsim {

std::string_view to_string(BaselineKind k) {
  switch (k) {
    case BaselineKind::kPf:
      return "pf";
    case BaselineKind::kMr:
      return "mr";
    case BaselineKind::kQos:
      return "qos";
  }
  return "?";
}

BaselineKind parse_baseline_kind(std::string_view s) {
  if (s == "pf") return BaselineKind::kPf;
  if (s == "mr") return BaselineKind::kMr;
  if (s == "qos") return BaselineKind::kQos;
  throw ConfigError("unknown baseline scheduler '" + std::string(s) + "'");
}

double baseline_metric(BaselineKind kind, const PriorityInput& in) {
  const double r = static_cast<double>(in.instantaneous_rate);
  switch (kind) {
    case BaselineKind::kPf:
      return r / in.average_rate.value();
    case BaselineKind::kMr:
      return r;
    case BaselineKind::kQos:
      return r / (static_cast<double>(in.qos_priority) * in.average_rate.value());
  }
  return 0.0;
}

namespace {

int symbols_needed(const Candidate& c) {
  return static_cast<int>((c.demand + c.bytes_per_symbol - 1) / c.bytes_per_symbol);
}

}  // namespace

std::vector<Allocation> proportional_share(BaselineKind kind, std::span<const Candidate> candidates, int symbols,
                                           int start_symbol, bool largest_remainder) {
  std::vector<const Candidate*> active;
  std::vector<double> metric;
  for (const auto& c : candidates) {
    if (c.purpose != GrantPurpose::kData || c.demand <= 0) continue;
    const double m = baseline_metric(kind, c.input);
    if (m <= 0.0) continue;
    active.push_back(&c);
    metric.push_back(m);
  }
  std::vector<Allocation> out;
  if (active.empty() || symbols <= 0) return out;

  if (kind == BaselineKind::kMr) {
    const double top = *std::max_element(metric.begin(), metric.end());
    for (std::size_t i = 0; i < metric.size(); ++i) metric[i] = metric[i] == top ? 1.0 : 0.0;
  }
  const double total = std::accumulate(metric.begin(), metric.end(), 0.0);

  std::vector<int> share(active.size(), 0);
  std::vector<double> frac(active.size(), 0.0);
  int used = 0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const double exact = static_cast<double>(symbols) * metric[i] / total;
    const int floored = static_cast<int>(std::floor(exact + 1e-9));
    share[i] = std::min(floored, symbols_needed(*active[i]));
    frac[i] = share[i] < symbols_needed(*active[i]) ? exact - floored : -1.0;
    used += share[i];
  }

  if (largest_remainder) {
    std::vector<std::size_t> order(active.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t i : order) {
      if (used >= symbols) break;
      if (frac[i] <= 1e-9 || metric[i] <= 0.0) continue;
      ++share[i];
      ++used;
    }
  }

  int cursor = start_symbol;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (share[i] <= 0) continue;
    const Candidate& c = *active[i];
    const Bytes bytes = std::min(c.demand, share[i] * c.bytes_per_symbol);
    out.push_back(Allocation{.dir = c.dir(),
                             .lc = c.input.lc,
                             .ue = c.ue,
                             .purpose = GrantPurpose::kData,
                             .first_symbol = cursor,
                             .n_symbols = share[i],
                             .bytes = bytes,
                             .weight = c.weight});
    cursor += share[i];
  }
  return out;
}

namespace {

// UL grants of a baseline slot: BSRs first, then the proportional split.
std::vector<Allocation> baseline_ul(BaselineKind kind, std::span<const Candidate> ul, int available,
                                    bool largest_remainder) {
  std::vector<Allocation> out;
  int used = 0;
  for (const auto& c : ul) {
    if (c.purpose != GrantPurpose::kBsr || c.fixed_symbols <= 0) continue;
    if (used + c.fixed_symbols > available) break;
    out.push_back(Allocation{.dir = Direction::kUl,
                             .lc = c.input.lc,
                             .ue = c.ue,
                             .purpose = GrantPurpose::kBsr,
                             .first_symbol = used,
                             .n_symbols = c.fixed_symbols,
                             .bytes = 0,
                             .weight = c.weight});
    used += c.fixed_symbols;
  }
  auto data = proportional_share(kind, ul, available - used, used, largest_remainder);
  out.insert(out.end(), data.begin(), data.end());
  return out;
}

int span_of(const std::vector<Allocation>& allocs) {
  int n = 0;
  for (const auto& a : allocs) n += a.n_symbols;
  return n;
}

// Moves UL allocations to the tail of the slot and returns the guard start.
int place_ul_at_tail(std::vector<Allocation>& ul, int usable_symbols) {
  const int n = span_of(ul);
  int cursor = usable_symbols - n;
  for (auto& a : ul) {
    a.first_symbol = cursor;
    cursor += a.n_symbols;
  }
  return usable_symbols - n;
}

}  // namespace

SlotPlan baseline_allocate(BaselineKind kind, std::span<const Candidate> ul, std::span<const Candidate> dl,
                           int usable_symbols, int guard_symbols, bool largest_remainder) {
  SlotPlan plan;
  auto ul_allocs = baseline_ul(kind, ul, usable_symbols - guard_symbols, largest_remainder);
  int dl_symbols = usable_symbols;
  if (!ul_allocs.empty()) {
    const int ul_start = place_ul_at_tail(ul_allocs, usable_symbols);
    for (int i = 0; i < guard_symbols; ++i) plan.guard_symbol_positions.push_back(ul_start - guard_symbols + i);
    dl_symbols = ul_start - guard_symbols;
  }
  auto dl_allocs = proportional_share(kind, dl, dl_symbols, 0, largest_remainder);
  const bool has_ul = !ul_allocs.empty();
  const bool has_dl = !dl_allocs.empty();
  plan.strategy = has_ul && has_dl ? Strategy::kMixed : (has_ul ? Strategy::kUlOnly : Strategy::kDlOnly);
  plan.allocations = std::move(dl_allocs);
  plan.allocations.insert(plan.allocations.end(), ul_allocs.begin(), ul_allocs.end());
  plan.reward = reward_of(plan.allocations);
  return plan;
}

BaselineScheduler::BaselineScheduler(BaselineKind kind, SchedulerConfig config, const std::vector<FlowSpec>& flows,
                                     const LinkModel& link)
    : SchedulerBase(std::move(config), flows, link), kind_(kind) {}

SlotPlan BaselineScheduler::on_ul_deadline(SlotIndex now, SlotIndex slot) {
  std::vector<Candidate> ul;
  for (const auto& [id, st] : lcs_) {
    if (id.dir != Direction::kUl) continue;
    if (st.bsr_request) {
      PriorityInput in = priority_input(st, st.slot_capacity);
      ul.push_back(make_bsr_candidate(in, st.ue, st.bytes_per_symbol, config_.timing.bsr_symbols, priority(in)));
      continue;
    }
    const Bytes demand = estimate(st, now, slot, false).estimated_q;
    if (demand > 0) ul.push_back(make_data_candidate(priority_input(st, demand), st.ue, demand, st.bytes_per_symbol));
  }
  const int usable = config_.clock.usable_symbols;
  const int guard = config_.timing.guard_symbols;
  SlotPlan plan = baseline_allocate(kind_, ul, {}, usable, guard, config_.largest_remainder);
  plan.slot_index = slot;
  return plan;
}

SlotPlan BaselineScheduler::on_dl_deadline(SlotIndex /*now*/, SlotIndex slot) {
  SlotPlan plan;
  if (const SlotPlan* p = plan_at(slot)) plan = *p;
  plan.slot_index = slot;
  std::erase_if(plan.allocations, [](const Allocation& a) { return a.dir == Direction::kDl; });

  const int usable = config_.clock.usable_symbols;
  int dl_symbols = usable;
  if (plan.has(Direction::kUl)) {
    int ul_start = usable;
    for (const auto& a : plan.allocations) ul_start = std::min(ul_start, a.first_symbol);
    dl_symbols = ul_start - config_.timing.guard_symbols;
  }
  std::vector<Candidate> dl;
  for (const auto& [id, st] : lcs_) {
    if (id.dir != Direction::kDl || st.dl_actual <= 0) continue;
    dl.push_back(make_data_candidate(priority_input(st, st.dl_actual), st.ue, st.dl_actual, st.bytes_per_symbol));
  }
  auto dl_allocs = proportional_share(kind_, dl, dl_symbols, 0, config_.largest_remainder);
  plan.allocations.insert(plan.allocations.begin(), dl_allocs.begin(), dl_allocs.end());
  const bool has_ul = plan.has(Direction::kUl);
  const bool has_dl = !dl_allocs.empty();
  plan.strategy = has_ul && has_dl ? Strategy::kMixed : (has_ul ? Strategy::kUlOnly : Strategy::kDlOnly);
  plan.reward = reward_of(plan.allocations);
  return plan;
}

}  // namespace flexsim
