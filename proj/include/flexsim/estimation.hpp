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

#include <functional>
#include <optional>
#include <string_view>

#include "flexsim/measurement.hpp"

namespace flexsim {

/// Decides whether a flow's traffic is regular enough to predict.
struct PredictionGate {
  double cv_interval_threshold = 0.15;
  double cv_size_threshold = 0.10;
  int min_samples = 3;

  void validate() const;
  bool enabled(const BurstStats& stats) const;
};

enum class EstimateBasis { kObserved, kStepFunctionPrediction, kReconstructionOnly };
std::string_view to_string(EstimateBasis b);

struct BufferEstimate {
  LcId lc;
  SlotIndex target_slot = 0;
  Bytes estimated_q = 0;
  EstimateBasis basis = EstimateBasis::kReconstructionOnly;
};

/// Allocation planned for a slot after the last recorded one.
using PlannedAllocation = std::function<Bytes(SlotIndex)>;

/// True when the step function places a burst at `slot`: bursts land at
/// last_burst + round(k * T) for k >= 1.
bool is_predicted_burst_slot(const BurstStats& stats, SlotIndex slot);

/// Rolls the buffer forward from the last observed slot to `target_slot`,
/// draining recorded and planned allocations. With the gate enabled, the
/// step function adds one burst of B bytes at every predicted burst slot.
BufferEstimate predict_buffer(const FlowBufferHistory& history, const BurstStats& stats,
                              const PredictionGate& gate, SlotIndex now_slot, SlotIndex target_slot,
                              const PlannedAllocation& planned, LcId lc = {});

enum class BsrClass { kRegular, kIrregular };

/// Regular when the pattern is predictable and the gap since the last burst
/// matches the burst interval within max(1 slot, 0.25 T).
BsrClass classify_bsr(const BurstStats& stats, const PredictionGate& gate, SlotIndex bsr_arrival_slot);

/// Bytes presumed pending after `slots_since_last_burst` slots:
/// B * floor(elapsed / T). Unavailable when the gate is disabled.
std::optional<Bytes> infer_ul_buffer(const BurstStats& stats, const PredictionGate& gate,
                                     SlotIndex slots_since_last_burst);

}  // namespace flexsim
