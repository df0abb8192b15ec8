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

#include "flexsim/scheduler.hpp"

#include <algorithm>

namespace flexsim {

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kUlOnly:
      return "UL_only";
    case Strategy::kDlOnly:
      return "DL_only";
    case Strategy::kMixed:
      return "Mixed";
  }
  return "?";
}

Rate sliding_average_rate(std::span<const Bytes> per_slot_bytes) {
  Rate r;
  if (per_slot_bytes.empty()) return r;
  std::int64_t sum = 0;
  for (Bytes b : per_slot_bytes) sum += b;
  const auto n = static_cast<std::int64_t>(per_slot_bytes.size());
  if (sum < kRateEpsilon * n) return Rate{kRateEpsilon, 1};
  return Rate{sum, n};
}

bool SlotPlan::has(Direction d) const {
  return std::any_of(allocations.begin(), allocations.end(), [d](const Allocation& a) { return a.dir == d; });
}

std::optional<Direction> SlotPlan::last_direction() const {
  const Allocation* last = nullptr;
  for (const auto& a : allocations) {
    if (!last || a.end_symbol() > last->end_symbol()) last = &a;
  }
  if (!last) return std::nullopt;
  return last->dir;
}

int SlotPlan::dl_reserved_end() const {
  int end = 0;
  for (const auto& a : allocations) {
    if (a.dir == Direction::kDl) end = std::max(end, a.end_symbol());
  }
  return end;
}

Bytes SlotPlan::bytes_for(const LcId& lc) const {
  Bytes b = 0;
  for (const auto& a : allocations) {
    if (a.lc == lc && a.purpose == GrantPurpose::kData) b += a.bytes;
  }
  return b;
}

int SlotPlan::symbols_used() const {
  int n = 0;
  for (const auto& a : allocations) n += a.n_symbols;
  return n;
}

double reward_of(const std::vector<Allocation>& allocations) {
  std::vector<const Allocation*> sorted;
  sorted.reserve(allocations.size());
  for (const auto& a : allocations) sorted.push_back(&a);
  std::sort(sorted.begin(), sorted.end(), [](const Allocation* x, const Allocation* y) {
    if (x->lc != y->lc) return x->lc < y->lc;
    return x->purpose < y->purpose;
  });
  double r = 0.0;
  for (const auto* a : sorted) r += a->weight.value();
  return r;
}

SchedulerBase::SchedulerBase(SchedulerConfig config, const std::vector<FlowSpec>& flows, const LinkModel& link)
    : config_(std::move(config)) {
  config_.clock.validate();
  config_.timing.validate();
  config_.gate.validate();
  for (const auto& f : flows) {
    for (Direction d : {Direction::kUl, Direction::kDl}) {
      if (!f.carries(d)) continue;
      LcState st{.lc = {f.flow_id, d},
                 .ue = f.ue_id,
                 .qos_priority = f.qos.priority,
                 .bytes_per_symbol = link.bytes_per_symbol(f.ue_id),
                 .slot_capacity = link.symbol_capacity_bytes(f.ue_id, config_.clock.usable_symbols),
                 .history = FlowBufferHistory(config_.history_capacity)};
      lcs_.emplace(st.lc, std::move(st));
    }
  }
}

const FlowBufferHistory* SchedulerBase::history(const LcId& lc) const {
  auto it = lcs_.find(lc);
  return it == lcs_.end() ? nullptr : &it->second.history;
}

void SchedulerBase::on_sr(LcState& lc, const SrEvent& sr) {
  lc.bsr_request = BsrRequest{sr.raised_slot, BsrClass::kIrregular};
}

Rate SchedulerBase::average_rate(const LcState& st) const {
  const auto q = st.history.q_series();
  std::vector<Bytes> achievable(q.size());
  std::transform(q.begin(), q.end(), achievable.begin(),
                 [&](Bytes b) { return std::min(b, st.slot_capacity); });
  return sliding_average_rate(achievable);
}

Bytes SchedulerBase::committed_bytes(const LcState& st, SlotIndex slot) const {
  auto it = st.committed.find(slot);
  return it == st.committed.end() ? 0 : it->second;
}

BufferEstimate SchedulerBase::estimate(const LcState& st, SlotIndex now, SlotIndex target,
                                       bool allow_prediction) const {
  PredictionGate gate = config_.gate;
  BurstStats stats = st.stats;
  if (!allow_prediction) stats.sample_count = 0;  // forces the gate off
  return predict_buffer(
      st.history, stats, gate, now, target, [&](SlotIndex s) { return committed_bytes(st, s); }, st.lc);
}

PriorityInput SchedulerBase::priority_input(const LcState& st, Bytes demand) const {
  return PriorityInput{.lc = st.lc,
                       .direction = st.lc.dir,
                       .qos_priority = st.qos_priority,
                       .instantaneous_rate = std::min(demand, st.slot_capacity),
                       .average_rate = average_rate(st)};
}

void SchedulerBase::commit(const SlotPlan& plan) {
  for (auto& [id, st] : lcs_) st.committed.erase(plan.slot_index);
  for (const auto& a : plan.allocations) {
    if (a.purpose != GrantPurpose::kData) continue;
    lcs_.at(a.lc).committed[plan.slot_index] += a.bytes;
  }
  plans_[plan.slot_index] = plan;
}

const SlotPlan* SchedulerBase::plan_at(SlotIndex slot) const {
  auto it = plans_.find(slot);
  return it == plans_.end() ? nullptr : &it->second;
}

SlotDecision SchedulerBase::tick(const SlotInput& in) {
  const SlotIndex now = in.now;
  const auto& timing = config_.timing;

  for (const auto& fb : in.feedback) {
    auto it = lcs_.find(fb.lc);
    if (it != lcs_.end()) it->second.history.set_allocation(fb.slot, fb.delivered);
  }

  for (auto& [id, st] : lcs_) {
    std::optional<Bytes> observed;
    if (id.dir == Direction::kDl) {
      auto it = in.dl_buffers.find(id);
      st.dl_actual = it == in.dl_buffers.end() ? 0 : it->second;
      observed = st.dl_actual;
    }
    st.history.record_slot(now, observed, committed_bytes(st, now));
  }

  for (const auto& bsr : in.bsrs) {
    auto it = lcs_.find(bsr.lc);
    if (it == lcs_.end()) continue;
    it->second.history.backlog_bsr(bsr.sent_slot, now, bsr.reported_q);
  }

  for (auto& [id, st] : lcs_) {
    st.stats = burst_stats(st.history);
    st.gate_enabled = config_.gate.enabled(st.stats);
  }

  for (const auto& sr : in.srs) {
    auto it = lcs_.find(sr.lc);
    if (it != lcs_.end() && !it->second.bsr_request) on_sr(it->second, sr);
  }

  SlotDecision out;

  out.dl_target = now + timing.k0;
  SlotPlan dl_plan = on_dl_deadline(now, out.dl_target);
  dl_plan.slot_index = out.dl_target;
  commit(dl_plan);
  for (const auto& a : dl_plan.allocations) {
    if (a.dir == Direction::kDl) out.dl_grants.push_back(a);
  }
  out.plan_for_dl_target = dl_plan;
  if (out.dl_target == now) {
    for (auto& [id, st] : lcs_) {
      if (id.dir == Direction::kDl) st.history.set_allocation(now, committed_bytes(st, now));
    }
  }

  out.ul_target = now + timing.k2;
  SlotPlan ul_plan = on_ul_deadline(now, out.ul_target);
  ul_plan.slot_index = out.ul_target;
  commit(ul_plan);
  for (const auto& a : ul_plan.allocations) {
    if (a.dir != Direction::kUl) continue;
    out.ul_grants.push_back(a);
    lcs_.at(a.lc).bsr_request.reset();
  }

  if (config_.log_gates) {
    for (const auto& [id, st] : lcs_) {
      GateRecord g{now, id, st.gate_enabled && uses_prediction(),
                   st.gate_enabled && uses_prediction() ? EstimateBasis::kStepFunctionPrediction
                                                        : EstimateBasis::kReconstructionOnly};
      out.gates.push_back(g);
    }
  } else {
    // Summary only: one record per channel with the gate on.
    for (const auto& [id, st] : lcs_) {
      if (st.gate_enabled && uses_prediction()) {
        out.gates.push_back({now, id, true, EstimateBasis::kStepFunctionPrediction});
      }
    }
  }

  while (!plans_.empty() && plans_.begin()->first < now) plans_.erase(plans_.begin());
  for (auto& [id, st] : lcs_) {
    while (!st.committed.empty() && st.committed.begin()->first < now - 1) st.committed.erase(st.committed.begin());
  }
  return out;
}

}  // namespace flexsim
