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

#include "flexsim/traffic.hpp"

#include <cmath>

namespace flexsim {

Rng Rng::stream(std::uint64_t seed, std::uint64_t stream_id) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
                    0x9e3779b9u};
  std::uint64_t s = 0;
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  s = (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
  return Rng(s);
}

void TrafficPattern::validate() const {
  if (base_interval_us <= 0) throw ConfigError("base_interval_us must be positive");
  if (size_bytes <= 0) throw ConfigError("size_bytes must be positive");
  if (jitter_fraction < 0.0 || jitter_fraction >= 1.0) throw ConfigError("jitter_fraction must be in [0, 1)");
  if (kind == PatternKind::kDeterministic && jitter_fraction != 0.0) {
    throw ConfigError("deterministic pattern cannot carry jitter");
  }
}

TrafficPattern TrafficPattern::of(const FlowSpec& flow) {
  TrafficPattern p;
  p.kind = flow.interval_jitter_fraction > 0.0 ? PatternKind::kJittered : PatternKind::kDeterministic;
  p.base_interval_us = flow.interval_us;
  p.jitter_fraction = flow.interval_jitter_fraction;
  p.size_bytes = flow.packet_size_bytes();
  return p;
}

Micros next_arrival(const TrafficPattern& pattern, Micros previous_time_us, Rng& rng) {
  if (pattern.kind == PatternKind::kDeterministic) return previous_time_us + pattern.base_interval_us;
  const double u = rng.uniform(1.0 - pattern.jitter_fraction, 1.0 + pattern.jitter_fraction);
  const auto step = static_cast<Micros>(std::llround(static_cast<double>(pattern.base_interval_us) * u));
  return previous_time_us + std::max<Micros>(step, 1);
}

ArrivalProcess::ArrivalProcess(const FlowSpec& flow, Direction dir, std::uint64_t seed)
    : pattern_(TrafficPattern::of(flow)),
      rng_(Rng::stream(seed, static_cast<std::uint64_t>(LcId{flow.flow_id, dir}.key()) + 1000)) {
  pattern_.validate();
  next_.flow_id = flow.flow_id;
  next_.direction = dir;
  next_.size_bytes = pattern_.size_bytes;
  next_.sequence_number = 0;
  // Jittered devices run on unsynchronised clocks: random initial phase.
  next_.arrival_time_us = flow.start_time_us;
  if (pattern_.kind == PatternKind::kJittered) {
    next_.arrival_time_us +=
        static_cast<Micros>(std::floor(rng_.uniform01() * static_cast<double>(pattern_.base_interval_us)));
  }
}

PacketArrival ArrivalProcess::pop() {
  PacketArrival out = next_;
  next_.arrival_time_us = next_arrival(pattern_, next_.arrival_time_us, rng_);
  ++next_.sequence_number;
  return out;
}

UeRange scenario_ue_range(int scenario_id) {
  switch (scenario_id) {
    case 1:
      return {1, 20};
    case 2:
      return {1, 80};
    case 3:
      return {8, 8};
    default:
      throw ConfigError("unknown scenario " + std::to_string(scenario_id));
  }
}

std::vector<FlowSpec> build_scenario(int scenario_id, int n_ues) {
  std::vector<FlowSpec> flows;
  auto make = [](int id, FlowDirection dir, int five_qi, Bytes size, Micros interval, double jitter,
                 Micros start) {
    FlowSpec f;
    f.flow_id = id;
    f.ue_id = id;
    f.direction = dir;
    f.qos = QosProfile::from_five_qi(five_qi);
    f.message_size_bytes = size;
    f.ip_overhead_bytes = 20;
    f.interval_us = interval;
    f.interval_jitter_fraction = jitter;
    f.start_time_us = start;
    return f;
  };

  const UeRange range = scenario_ue_range(scenario_id);
  if (scenario_id != 3 && (n_ues < range.min || n_ues > range.max)) {
    throw ConfigError("scenario " + std::to_string(scenario_id) + " supports " + std::to_string(range.min) +
                      ".." + std::to_string(range.max) + " UEs");
  }

  switch (scenario_id) {
    case 1:
      for (int i = 0; i < n_ues; ++i) flows.push_back(make(i, FlowDirection::kBidirectional, 82, 50, 500, 0.0, 0));
      break;
    case 2:
      for (int i = 0; i < n_ues; ++i) {
        flows.push_back(make(i, FlowDirection::kBidirectional, 82, 145, 25'000, 0.25, 0));
      }
      break;
    case 3: {
      int id = 0;
      for (int i = 0; i < 4; ++i) flows.push_back(make(id++, FlowDirection::kUl, 83, 50, 50, 0.0, 0));
      for (int i = 0; i < 2; ++i) flows.push_back(make(id++, FlowDirection::kDl, 82, 50, 50, 0.0, 0));
      for (int i = 0; i < 2; ++i) flows.push_back(make(id++, FlowDirection::kDl, 82, 50, 50, 0.0, 5'000'000));
      break;
    }
  }
  return flows;
}

}  // namespace flexsim
