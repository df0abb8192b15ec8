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

#include "flexsim/estimation.hpp"

#include <algorithm>
#include <cmath>

namespace flexsim {

void PredictionGate::validate() const {
  if (cv_interval_threshold <= 0.0 || cv_size_threshold <= 0.0) {
    throw ConfigError("prediction gate thresholds must be positive");
  }
  if (min_samples < 2) throw ConfigError("prediction gate needs at least 2 samples");
}

bool PredictionGate::enabled(const BurstStats& stats) const {
  return stats.sample_count >= min_samples && stats.cv_interval <= cv_interval_threshold &&
         stats.cv_size <= cv_size_threshold && stats.burst_interval_slots > 0.0;
}

std::string_view to_string(EstimateBasis b) {
  switch (b) {
    case EstimateBasis::kObserved:
      return "observed";
    case EstimateBasis::kStepFunctionPrediction:
      return "step_function_prediction";
    case EstimateBasis::kReconstructionOnly:
      return "reconstruction_only";
  }
  return "?";
}

bool is_predicted_burst_slot(const BurstStats& stats, SlotIndex slot) {
  if (!stats.last_burst_slot || stats.burst_interval_slots <= 0.0) return false;
  const double period = stats.burst_interval_slots;
  const auto elapsed = static_cast<double>(slot - *stats.last_burst_slot);
  if (elapsed < 0.5 * period) return false;
  const double k = std::round(elapsed / period);
  if (k < 1.0) return false;
  return *stats.last_burst_slot + std::llround(k * period) == slot;
}

BufferEstimate predict_buffer(const FlowBufferHistory& history, const BurstStats& stats,
                              const PredictionGate& gate, SlotIndex now_slot, SlotIndex target_slot,
                              const PlannedAllocation& planned, LcId lc) {
  BufferEstimate est;
  est.lc = lc;
  est.target_slot = target_slot;
  const bool predict = gate.enabled(stats);
  est.basis = predict ? EstimateBasis::kStepFunctionPrediction : EstimateBasis::kReconstructionOnly;
  if (history.empty()) return est;

  SlotIndex from = history.first_slot();
  Bytes q = history.q(from);
  if (auto known = history.last_known_slot()) {
    from = *known;
    q = history.q(from);
  } else if (!predict) {
    // Nothing ever observed and nothing to predict.
    return est;
  }
  if (target_slot == from && history.contains(from) && history.known(from)) {
    est.basis = EstimateBasis::kObserved;
  }

  const SlotIndex last_recorded = std::min(history.last_slot(), now_slot);
  for (SlotIndex s = from + 1; s <= target_slot; ++s) {
    const SlotIndex prev = s - 1;
    const Bytes drained = prev <= last_recorded ? history.a(prev) : (planned ? planned(prev) : 0);
    q = reconstruct_buffer(q, drained);
    if (predict && is_predicted_burst_slot(stats, s)) q += std::llround(stats.burst_size_bytes);
  }
  est.estimated_q = q;
  return est;
}

BsrClass classify_bsr(const BurstStats& stats, const PredictionGate& gate, SlotIndex bsr_arrival_slot) {
  if (!gate.enabled(stats) || !stats.last_burst_slot) return BsrClass::kIrregular;
  const double period = stats.burst_interval_slots;
  const double gap = static_cast<double>(bsr_arrival_slot - *stats.last_burst_slot);
  const double tolerance = std::max(1.0, 0.25 * period);
  return std::abs(gap - period) <= tolerance ? BsrClass::kRegular : BsrClass::kIrregular;
}

std::optional<Bytes> infer_ul_buffer(const BurstStats& stats, const PredictionGate& gate,
                                     SlotIndex slots_since_last_burst) {
  if (!gate.enabled(stats)) return std::nullopt;
  if (slots_since_last_burst <= 0) return Bytes{0};
  const auto steps = static_cast<Bytes>(std::floor(static_cast<double>(slots_since_last_burst) /
                                                   stats.burst_interval_slots));
  return steps * std::llround(stats.burst_size_bytes);
}

}  // namespace flexsim
