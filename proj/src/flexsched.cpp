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

#include "flexsim/flexsched.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace flexsim {

namespace {

int symbols_for(Bytes bytes, Bytes bytes_per_symbol) {
  return static_cast<int>((bytes + bytes_per_symbol - 1) / bytes_per_symbol);
}

bool strictly_better(double candidate, double incumbent) {
  return candidate > incumbent + 1e-12 * std::max(1.0, std::abs(incumbent));
}

Allocation grant(const Candidate& c, int first_symbol, int n_symbols, Bytes bytes) {
  return Allocation{.dir = c.dir(),
                    .lc = c.input.lc,
                    .ue = c.ue,
                    .purpose = c.purpose,
                    .first_symbol = first_symbol,
                    .n_symbols = n_symbols,
                    .bytes = bytes,
                    .weight = c.weight};
}

}  // namespace

Weight priority(const PriorityInput& in) {
  if (in.qos_priority < 1) throw std::invalid_argument("qos priority must be >= 1");
  if (in.average_rate.sum <= 0 || in.average_rate.count <= 0) throw std::invalid_argument("average rate must be > 0");
  if (in.instantaneous_rate <= 0) return Weight{0, 1};
  return Weight{in.instantaneous_rate * in.average_rate.count, in.qos_priority * in.average_rate.sum};
}

Candidate make_data_candidate(const PriorityInput& in, UeId ue, Bytes demand, Bytes bytes_per_symbol) {
  return Candidate{.input = in,
                   .ue = ue,
                   .purpose = GrantPurpose::kData,
                   .demand = demand,
                   .bytes_per_symbol = bytes_per_symbol,
                   .fixed_symbols = 0,
                   .weight = priority(in)};
}

Candidate make_bsr_candidate(const PriorityInput& in, UeId ue, Bytes bytes_per_symbol, int symbols, Weight weight) {
  return Candidate{.input = in,
                   .ue = ue,
                   .purpose = GrantPurpose::kBsr,
                   .demand = 0,
                   .bytes_per_symbol = bytes_per_symbol,
                   .fixed_symbols = symbols,
                   .weight = weight};
}

OneByOneResult allocate_one_by_one(std::span<const Candidate> candidates, int available_symbols, int start_symbol,
                                   std::optional<Direction> only, int rr_start) {
  OneByOneResult out;
  out.rr_next = rr_start;
  std::vector<const Candidate*> open;
  for (const auto& c : candidates) {
    if (only && c.dir() != *only) continue;
    if (c.weight.is_zero()) continue;
    if (c.purpose == GrantPurpose::kData && c.demand <= 0) continue;
    if (c.purpose == GrantPurpose::kBsr && c.fixed_symbols <= 0) continue;
    open.push_back(&c);
  }

  int remaining = available_symbols;
  int cursor = start_symbol;
  while (remaining > 0 && !open.empty()) {
    // Highest weight; equal weights resolved by the round-robin pointer.
    auto rank = [&](const Candidate* c) { return std::pair{c->input.lc.key() >= out.rr_next ? 0 : 1, c->input.lc.key()}; };
    auto best = open.begin();
    for (auto it = std::next(open.begin()); it != open.end(); ++it) {
      const auto cmp = (*it)->weight <=> (*best)->weight;
      if (cmp > 0 || (cmp == 0 && rank(*it) < rank(*best))) best = it;
    }
    const Candidate& c = **best;
    open.erase(best);

    int n = 0;
    Bytes bytes = 0;
    if (c.purpose == GrantPurpose::kBsr) {
      if (c.fixed_symbols > remaining) continue;
      n = c.fixed_symbols;
    } else {
      bytes = std::min(c.demand, remaining * c.bytes_per_symbol);
      n = symbols_for(bytes, c.bytes_per_symbol);
    }
    out.allocations.push_back(grant(c, cursor, n, bytes));
    cursor += n;
    remaining -= n;
    out.symbols_used += n;
    out.rr_next = c.input.lc.key() + 1;
  }
  out.reward = reward_of(out.allocations);
  return out;
}

StrategyResult build_strategy_plan(Strategy s, std::span<const Candidate> ul, std::span<const Candidate> dl,
                                   std::optional<Direction> previous_last, const StrategyParams& params,
                                   int rr_start) {
  StrategyResult r;
  r.plan.strategy = s;
  r.rr_next = rr_start;
  const int g = params.guard_symbols;
  const bool prev_dl = previous_last == Direction::kDl;

  auto add_guard = [&](int from) {
    for (int i = 0; i < g; ++i) r.plan.guard_symbol_positions.push_back(from + i);
  };

  switch (s) {
    case Strategy::kDlOnly: {
      auto res = allocate_one_by_one(dl, params.usable_symbols, 0, Direction::kDl, rr_start);
      r.plan.allocations = std::move(res.allocations);
      r.rr_next = res.rr_next;
      break;
    }
    case Strategy::kUlOnly: {
      const int head = prev_dl ? g : 0;
      auto res = allocate_one_by_one(ul, params.usable_symbols - head, head, Direction::kUl, rr_start);
      if (!res.allocations.empty() && prev_dl) add_guard(0);
      r.plan.allocations = std::move(res.allocations);
      r.rr_next = res.rr_next;
      break;
    }
    case Strategy::kMixed: {
      std::vector<Candidate> merged(dl.begin(), dl.end());
      merged.insert(merged.end(), ul.begin(), ul.end());
      auto res = allocate_one_by_one(merged, params.usable_symbols - g, 0, std::nullopt, rr_start);
      r.rr_next = res.rr_next;
      std::vector<Allocation> dl_part;
      std::vector<Allocation> ul_part;
      for (auto& a : res.allocations) (a.dir == Direction::kDl ? dl_part : ul_part).push_back(a);
      int cursor = 0;
      for (auto& a : dl_part) {
        a.first_symbol = cursor;
        cursor += a.n_symbols;
      }
      if (!ul_part.empty()) {
        const bool needs_guard = !dl_part.empty() || prev_dl;
        if (needs_guard) {
          add_guard(cursor);
          cursor += g;
        }
        for (auto& a : ul_part) {
          a.first_symbol = cursor;
          cursor += a.n_symbols;
        }
      }
      r.plan.allocations = std::move(dl_part);
      r.plan.allocations.insert(r.plan.allocations.end(), ul_part.begin(), ul_part.end());
      break;
    }
  }
  r.plan.reward = reward_of(r.plan.allocations);
  r.rewards[static_cast<int>(s)] = r.plan.reward;
  return r;
}

StrategyResult select_strategy(std::span<const Candidate> ul, std::span<const Candidate> dl,
                               std::optional<Direction> previous_last, const StrategyParams& params, int rr_start) {
  if (params.usable_symbols <= 0 || params.guard_symbols < 0 || params.guard_symbols >= params.usable_symbols) {
    throw std::invalid_argument("invalid strategy parameters");
  }
  StrategyResult best;
  std::array<double, 3> rewards{};
  bool first = true;
  for (Strategy s : {Strategy::kDlOnly, Strategy::kMixed, Strategy::kUlOnly}) {
    auto r = build_strategy_plan(s, ul, dl, previous_last, params, rr_start);
    rewards[static_cast<int>(s)] = r.plan.reward;
    // a one-sided Mixed layout is a pure strategy that paid for a guard
    const bool degenerate = s == Strategy::kMixed && !(r.plan.has(Direction::kUl) && r.plan.has(Direction::kDl));
    if (degenerate) continue;
    if (first || strictly_better(r.plan.reward, best.plan.reward)) {
      best = std::move(r);
      first = false;
    }
  }
  best.rewards = rewards;
  return best;
}

ReevaluationResult reevaluate_dl(const SlotPlan& pending, std::span<const Candidate> dl_actual, int rr_start) {
  ReevaluationResult out;
  out.plan = pending;
  out.rr_next = rr_start;
  const int region = pending.dl_reserved_end();

  std::map<LcId, const Candidate*> actual;
  for (const auto& c : dl_actual) {
    if (c.dir() == Direction::kDl && c.purpose == GrantPurpose::kData) actual[c.input.lc] = &c;
  }

  std::vector<Allocation> kept;
  std::vector<Allocation> ul;
  for (const auto& a : pending.allocations) {
    if (a.dir == Direction::kUl) {
      ul.push_back(a);
      continue;
    }
    auto it = actual.find(a.lc);
    if (it == actual.end() || it->second->demand <= 0) continue;
    Allocation k = a;
    k.bytes = std::min(a.bytes, it->second->demand);
    k.weight = it->second->weight;
    kept.push_back(k);
  }
  out.kept_reward = reward_of(kept);

  auto fresh = allocate_one_by_one(dl_actual, region, 0, Direction::kDl, rr_start);
  out.new_reward = fresh.reward;

  std::vector<Allocation> dl = std::move(kept);
  if (strictly_better(fresh.reward, out.kept_reward)) {
    dl = std::move(fresh.allocations);
    out.replaced = true;
    out.rr_next = fresh.rr_next;
  }
  out.plan.allocations = std::move(dl);
  out.plan.allocations.insert(out.plan.allocations.end(), ul.begin(), ul.end());
  out.plan.reward = reward_of(out.plan.allocations);
  return out;
}

FlexScheduler::FlexScheduler(SchedulerConfig config, const std::vector<FlowSpec>& flows, const LinkModel& link)
    : SchedulerBase(std::move(config), flows, link) {}

StrategyParams FlexScheduler::params() const {
  return {config_.clock.usable_symbols, config_.timing.guard_symbols};
}

void FlexScheduler::on_sr(LcState& st, const SrEvent& sr) {
  const BsrClass cls = classify_bsr(st.stats, config_.gate, sr.raised_slot);
  st.bsr_request = BsrRequest{sr.raised_slot, cls};
  if (cls != BsrClass::kRegular || !st.stats.last_burst_slot || !st.history.contains(sr.raised_slot)) return;
  const auto inferred = infer_ul_buffer(st.stats, config_.gate, sr.raised_slot - *st.stats.last_burst_slot);
  if (!inferred || *inferred <= 0) return;
  st.history.backlog_bsr(sr.raised_slot, st.history.last_slot(), st.history.q(sr.raised_slot) + *inferred);
}

std::vector<Candidate> FlexScheduler::ul_candidates(SlotIndex now, SlotIndex target) const {
  std::vector<Candidate> out;
  for (const auto& [id, st] : lcs_) {
    if (id.dir != Direction::kUl) continue;
    const Bytes demand = estimate(st, now, target, true).estimated_q;
    if (demand > 0) {
      out.push_back(make_data_candidate(priority_input(st, demand), st.ue, demand, st.bytes_per_symbol));
    } else if (st.bsr_request) {
      // A data grant carries a BSR anyway; a standalone one is needed only here.
      PriorityInput in = priority_input(st, st.slot_capacity);
      if (st.bsr_request->cls == BsrClass::kIrregular) in.qos_priority = 1;
      out.push_back(make_bsr_candidate(in, st.ue, st.bytes_per_symbol, config_.timing.bsr_symbols, priority(in)));
    }
  }
  return out;
}

std::vector<Candidate> FlexScheduler::dl_estimated_candidates(SlotIndex now, SlotIndex target) const {
  std::vector<Candidate> out;
  for (const auto& [id, st] : lcs_) {
    if (id.dir != Direction::kDl) continue;
    const Bytes demand = estimate(st, now, target, true).estimated_q;
    if (demand > 0) out.push_back(make_data_candidate(priority_input(st, demand), st.ue, demand, st.bytes_per_symbol));
  }
  return out;
}

std::vector<Candidate> FlexScheduler::dl_actual_candidates() const {
  std::vector<Candidate> out;
  for (const auto& [id, st] : lcs_) {
    if (id.dir != Direction::kDl || st.dl_actual <= 0) continue;
    out.push_back(
        make_data_candidate(priority_input(st, st.dl_actual), st.ue, st.dl_actual, st.bytes_per_symbol));
  }
  return out;
}

SlotPlan FlexScheduler::on_dl_deadline(SlotIndex now, SlotIndex slot) {
  SlotPlan pending;
  pending.slot_index = slot;
  if (const SlotPlan* p = plan_at(slot)) pending = *p;
  auto cands = dl_actual_candidates();
  auto res = reevaluate_dl(pending, cands, rr_pointer_);
  res.plan.slot_index = slot;
  if (res.replaced) {
    ++replaced_plans_;
    rr_pointer_ = res.rr_next;
    commit(res.plan);
    replan_pending_dl(now, slot);
  }
  return res.plan;
}

void FlexScheduler::replan_pending_dl(SlotIndex now, SlotIndex after) {
  for (SlotIndex s = after + 1; s < now + config_.timing.k2; ++s) {
    const SlotPlan* p = plan_at(s);
    if (!p) continue;
    SlotPlan updated = *p;
    const int region = updated.dl_reserved_end();
    std::erase_if(updated.allocations, [](const Allocation& a) { return a.dir == Direction::kDl; });
    if (region > 0) {
      auto cands = dl_estimated_candidates(now, s);
      auto res = allocate_one_by_one(cands, region, 0, Direction::kDl, rr_pointer_);
      updated.allocations.insert(updated.allocations.begin(), res.allocations.begin(), res.allocations.end());
    }
    updated.reward = reward_of(updated.allocations);
    commit(updated);
  }
}

SlotPlan FlexScheduler::on_ul_deadline(SlotIndex now, SlotIndex slot) {
  const auto ul = ul_candidates(now, slot);
  const auto dl = dl_estimated_candidates(now, slot);
  std::optional<Direction> prev;
  if (const SlotPlan* p = plan_at(slot - 1)) prev = p->last_direction();
  auto res = select_strategy(ul, dl, prev, params(), rr_pointer_);
  rr_pointer_ = res.rr_next;
  res.plan.slot_index = slot;
  return res.plan;
}

}  // namespace flexsim
