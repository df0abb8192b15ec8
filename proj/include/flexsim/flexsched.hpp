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

#include <array>
#include <optional>
#include <span>
#include <vector>

#include "flexsim/scheduler.hpp"

namespace flexsim {

/// w = (1 / qos_priority) * (r / R), exact. Zero when r is zero.
Weight priority(const PriorityInput& in);

/// Sliding-window mean of served bytes per slot, floored at kRateEpsilon.
inline Rate update_average_rate(std::span<const Bytes> served_window) { return sliding_average_rate(served_window); }

/// Builds a data candidate; its weight is derived from `in`.
Candidate make_data_candidate(const PriorityInput& in, UeId ue, Bytes demand, Bytes bytes_per_symbol);
/// Builds a BSR-only candidate holding a fixed weight.
Candidate make_bsr_candidate(const PriorityInput& in, UeId ue, Bytes bytes_per_symbol, int symbols, Weight weight);

struct OneByOneResult {
  std::vector<Allocation> allocations;  // in grant order, contiguous from the start symbol
  double reward = 0.0;
  int symbols_used = 0;
  int rr_next = 0;
};

/// Grants symbols one candidate at a time, always to the highest current
/// weight. Equal weights go to the first channel key at or after `rr_start`
/// (cyclically). Candidates outside `only` are ignored.
OneByOneResult allocate_one_by_one(std::span<const Candidate> candidates, int available_symbols, int start_symbol,
                                   std::optional<Direction> only, int rr_start);

struct StrategyParams {
  int usable_symbols = 12;
  int guard_symbols = 2;
};

struct StrategyResult {
  SlotPlan plan;
  std::array<double, 3> rewards{};  // indexed by Strategy
  int rr_next = 0;
};

/// Lays out UL_only, DL_only and Mixed and returns the highest-reward one.
/// Ties prefer DL_only, then Mixed, then UL_only.
StrategyResult select_strategy(std::span<const Candidate> ul, std::span<const Candidate> dl,
                               std::optional<Direction> previous_last, const StrategyParams& params, int rr_start);

/// Builds the plan of one strategy only.
StrategyResult build_strategy_plan(Strategy s, std::span<const Candidate> ul, std::span<const Candidate> dl,
                                   std::optional<Direction> previous_last, const StrategyParams& params,
                                   int rr_start);

struct ReevaluationResult {
  SlotPlan plan;
  bool replaced = false;
  double kept_reward = 0.0;  // reward of the pending DL allocations after shrinking
  double new_reward = 0.0;
  int rr_next = 0;
};

/// Rechecks the DL of `pending` against actual demand over the symbols the
/// plan holds for DL. Pending allocations are first shrunk to actual demand;
/// the fresh assignment replaces them only if its reward is strictly higher.
/// UL allocations are never touched.
ReevaluationResult reevaluate_dl(const SlotPlan& pending, std::span<const Candidate> dl_actual, int rr_start);

class FlexScheduler final : public SchedulerBase {
 public:
  FlexScheduler(SchedulerConfig config, const std::vector<FlowSpec>& flows, const LinkModel& link);

  std::string name() const override { return "flex"; }
  std::int64_t replaced_plans() const { return replaced_plans_; }

 protected:
  void on_sr(LcState& lc, const SrEvent& sr) override;
  SlotPlan on_dl_deadline(SlotIndex now, SlotIndex slot) override;
  SlotPlan on_ul_deadline(SlotIndex now, SlotIndex slot) override;
  bool uses_prediction() const override { return true; }

 private:
  std::vector<Candidate> ul_candidates(SlotIndex now, SlotIndex target) const;
  std::vector<Candidate> dl_estimated_candidates(SlotIndex now, SlotIndex target) const;
  std::vector<Candidate> dl_actual_candidates() const;
  StrategyParams params() const;
  void replan_pending_dl(SlotIndex now, SlotIndex after);

  std::int64_t replaced_plans_ = 0;
};

}  // namespace flexsim
