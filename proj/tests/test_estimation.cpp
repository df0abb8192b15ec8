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

#include "flexsim/estimation.hpp"

using namespace flexsim;

namespace {

// Observed DL history with a 70 B burst every `period` slots starting at
// slot 0, fully drained in the slot it arrives.
FlowBufferHistory periodic_history(SlotIndex last, SlotIndex period) {
  FlowBufferHistory h(64);
  for (SlotIndex s = 0; s <= last; ++s) {
    const Bytes q = s % period == 0 ? 70 : 0;
    h.record_slot(s, q, q);
  }
  return h;
}

const PlannedAllocation kNothingPlanned = [](SlotIndex) { return Bytes{0}; };

}  // namespace

TEST_CASE("prediction gate") {
  PredictionGate g;
  BurstStats st;
  st.sample_count = 3;
  st.cv_interval = 0.15;
  st.cv_size = 0.10;
  st.burst_interval_slots = 2.0;
  CHECK(g.enabled(st));
  st.cv_interval = 0.1501;
  CHECK_FALSE(g.enabled(st));
  st.cv_interval = 0.0;
  st.cv_size = 0.11;
  CHECK_FALSE(g.enabled(st));
  st.cv_size = 0.0;
  st.sample_count = 2;
  CHECK_FALSE(g.enabled(st));
  st.sample_count = 3;
  st.cv_interval = kCvSentinel;
  CHECK_FALSE(g.enabled(st));

  PredictionGate bad;
  bad.cv_size_threshold = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("step function prediction two slots ahead") {
  auto h = periodic_history(4, 2);
  const auto st = burst_stats(h);
  REQUIRE(st.burst_interval_slots == 2.0);
  REQUIRE(st.last_burst_slot == 4);
  const auto est = predict_buffer(h, st, PredictionGate{}, 4, 6, kNothingPlanned);
  CHECK(est.estimated_q == 70);
  CHECK(est.basis == EstimateBasis::kStepFunctionPrediction);
  const auto mid = predict_buffer(h, st, PredictionGate{}, 4, 5, kNothingPlanned);
  CHECK(mid.estimated_q == 0);
}

TEST_CASE("prediction without the gate rolls forward planned allocations") {
  FlowBufferHistory h(16);
  h.record_slot(0, 140, 0);
  BurstStats none;
  const auto est = predict_buffer(h, none, PredictionGate{}, 0, 2, [](SlotIndex s) { return s == 1 ? Bytes{70} : 0; });
  CHECK(est.estimated_q == 70);
  CHECK(est.basis == EstimateBasis::kReconstructionOnly);
}

TEST_CASE("empty flow predicts nothing") {
  FlowBufferHistory h(16);
  for (SlotIndex s = 0; s < 5; ++s) h.record_slot(s, 0, 0);
  const auto st = burst_stats(h);
  CHECK(predict_buffer(h, st, PredictionGate{}, 4, 6, kNothingPlanned).estimated_q == 0);
  FlowBufferHistory empty(4);
  CHECK(predict_buffer(empty, st, PredictionGate{}, 0, 2, kNothingPlanned).estimated_q == 0);
}

TEST_CASE("observed basis at the known slot") {
  FlowBufferHistory h(4);
  h.record_slot(0, 35, 0);
  const auto e = predict_buffer(h, BurstStats{}, PredictionGate{}, 0, 0, kNothingPlanned);
  CHECK(e.basis == EstimateBasis::kObserved);
  CHECK(e.estimated_q == 35);
}

TEST_CASE("exact prediction for a zero-jitter flow after warm-up") {
  // Burst of 70 B every 3 slots; the gNB drains the whole buffer every slot.
  const SlotIndex period = 3;
  auto truth = [&](SlotIndex s) { return s % period == 0 ? Bytes{70} : Bytes{0}; };
  FlowBufferHistory h(64);
  for (SlotIndex now = 0; now < 60; ++now) {
    h.record_slot(now, truth(now), truth(now));
    const auto st = burst_stats(h);
    if (st.sample_count < 3) continue;
    const auto est = predict_buffer(h, st, PredictionGate{}, now, now + 2, truth);
    CHECK(est.estimated_q == truth(now + 2));
  }
}

TEST_CASE("gate off never exceeds the reconstruction roll-forward") {
  FlowBufferHistory h(32);
  const Bytes obs[] = {10, 0, 90, 40, 0, 0, 200, 5};
  for (SlotIndex s = 0; s < 8; ++s) h.record_slot(s, obs[s], 7);
  BurstStats st = burst_stats(h);
  REQUIRE_FALSE(PredictionGate{}.enabled(st));
  Bytes q = h.q(7);
  for (SlotIndex t = 8; t <= 12; ++t) {
    q = reconstruct_buffer(q, t - 1 == 7 ? 7 : 3);
    const auto e = predict_buffer(h, st, PredictionGate{}, 7, t, [](SlotIndex) { return Bytes{3}; });
    CHECK(e.estimated_q <= q);
  }
}

TEST_CASE("BSR classification") {
  auto h = periodic_history(10, 2);
  const auto st = burst_stats(h);
  REQUIRE(st.last_burst_slot == 10);
  CHECK(classify_bsr(st, PredictionGate{}, 12) == BsrClass::kRegular);
  CHECK(classify_bsr(st, PredictionGate{}, 17) == BsrClass::kIrregular);
  BurstStats sentinel;
  CHECK(classify_bsr(sentinel, PredictionGate{}, 12) == BsrClass::kIrregular);
}

TEST_CASE("every report of a zero-jitter flow classifies as regular") {
  BurstStats st;
  for (SlotIndex period : {1, 2, 5, 10}) {
    auto h = periodic_history(6 * period, period);
    st = burst_stats(h);
    CHECK(classify_bsr(st, PredictionGate{}, *st.last_burst_slot + period) == BsrClass::kRegular);
  }
}

TEST_CASE("inferred UL buffer") {
  auto h = periodic_history(10, 2);
  const auto st = burst_stats(h);
  CHECK(infer_ul_buffer(st, PredictionGate{}, 2) == 70);
  CHECK(infer_ul_buffer(st, PredictionGate{}, 5) == 140);
  CHECK(infer_ul_buffer(st, PredictionGate{}, 1) == 0);
  CHECK_FALSE(infer_ul_buffer(BurstStats{}, PredictionGate{}, 4).has_value());
}

TEST_CASE("predicted burst slots are anchored at the last burst") {
  BurstStats st;
  st.burst_interval_slots = 2.5;
  st.last_burst_slot = 10;
  CHECK_FALSE(is_predicted_burst_slot(st, 10));
  CHECK_FALSE(is_predicted_burst_slot(st, 12));
  CHECK(is_predicted_burst_slot(st, 13));  // 10 + round(2.5)
  CHECK(is_predicted_burst_slot(st, 15));
  CHECK(is_predicted_burst_slot(st, 18));  // 10 + round(7.5)
}
