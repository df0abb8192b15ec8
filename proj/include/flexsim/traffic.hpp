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

#include <cstdint>
#include <random>
#include <vector>

#include "flexsim/core.hpp"

namespace flexsim {

/// Seedable generator with a platform-independent uniform draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}
  /// Derive an independent stream from a base seed and a stream id.
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id);

  /// Uniform on [0, 1).
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  bool bernoulli(double p) { return p > 0.0 && uniform01() < p; }

 private:
  std::mt19937_64 engine_;
};

enum class PatternKind { kDeterministic, kJittered };

struct TrafficPattern {
  PatternKind kind = PatternKind::kDeterministic;
  Micros base_interval_us = 500;
  double jitter_fraction = 0.0;
  Bytes size_bytes = 70;

  void validate() const;
  static TrafficPattern of(const FlowSpec& flow);
};

struct PacketArrival {
  FlowId flow_id = 0;
  Direction direction = Direction::kUl;
  Micros arrival_time_us = 0;
  Bytes size_bytes = 0;
  std::int64_t sequence_number = 0;
};

/// Deterministic: previous + base. Jittered: previous + base * U with
/// U uniform on [1 - jitter, 1 + jitter], rounded to the microsecond.
Micros next_arrival(const TrafficPattern& pattern, Micros previous_time_us, Rng& rng);

/// Arrival process of one direction of one flow.
class ArrivalProcess {
 public:
  ArrivalProcess(const FlowSpec& flow, Direction dir, std::uint64_t seed);

  const PacketArrival& peek() const { return next_; }
  PacketArrival pop();

 private:
  TrafficPattern pattern_;
  Rng rng_;
  PacketArrival next_;
};

/// Preset flows for the three industrial scenarios. `n_ues` is ignored for
/// scenario 3, which always has 4 UL UEs and 2 + 2 DL UEs.
std::vector<FlowSpec> build_scenario(int scenario_id, int n_ues);

/// Allowed UE-count range of a scenario preset.
struct UeRange {
  int min = 1;
  int max = 1;
};
UeRange scenario_ue_range(int scenario_id);

}  // namespace flexsim
