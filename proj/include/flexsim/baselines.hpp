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

#include <span>
#include <string>
#include <vector>

#include "flexsim/scheduler.hpp"

namespace flexsim {

enum class BaselineKind { kPf, kMr, kQos };
std::string_view to_string(BaselineKind k);
BaselineKind parse_baseline_kind(std::string_view s);

/// Metric by which a baseline splits a direction's symbols.
double baseline_metric(BaselineKind kind, const PriorityInput& in);

/// Splits `symbols` among data candidates in proportion to the metric, with
/// floor rounding and shares capped at each candidate's need. MR hands
/// everything to the highest-rate candidates. `largest_remainder` gives the
/// leftover symbols to the largest fractional parts.
std::vector<Allocation> proportional_share(BaselineKind kind, std::span<const Candidate> candidates, int symbols,
                                           int start_symbol, bool largest_remainder);

/// Whole-slot baseline decision: UL first over every symbol but the guard
/// (BSR grants ahead of data), then DL over what UL left. UL sits at the
/// tail of the slot, the guard right before it, DL from symbol 0.
SlotPlan baseline_allocate(BaselineKind kind, std::span<const Candidate> ul, std::span<const Candidate> dl,
                           int usable_symbols, int guard_symbols, bool largest_remainder = false);

class BaselineScheduler final : public SchedulerBase {
 public:
  BaselineScheduler(BaselineKind kind, SchedulerConfig config, const std::vector<FlowSpec>& flows,
                    const LinkModel& link);

  std::string name() const override { return std::string(to_string(kind_)); }

 protected:
  SlotPlan on_dl_deadline(SlotIndex now, SlotIndex slot) override;
  SlotPlan on_ul_deadline(SlotIndex now, SlotIndex slot) override;

 private:
  BaselineKind kind_;
};

}  // namespace flexsim
