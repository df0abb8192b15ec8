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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "flexsim/engine.hpp"

namespace flexsim {

struct ExperimentConfig {
  int scenario = 1;
  std::optional<std::vector<FlowSpec>> flows;  // replaces the preset when set
  nlohmann::json flow_overrides = nlohmann::json::object();  // applied to every preset flow
  std::vector<SchedulerKind> schedulers{SchedulerKind::kFlex};
  std::vector<int> ue_counts{1};
  std::vector<std::uint64_t> seeds{1};
  EngineConfig engine;
  Micros bucket_us = 100'000;
  std::filesystem::path output_dir = "results";
  unsigned threads = 0;  // 0: hardware concurrency
  bool write_decisions = false;
  bool write_gates = false;
  bool write_trace = false;

  void validate() const;
};

/// Parses a declarative config. Unknown keys and type mismatches raise
/// ConfigError naming the offending field path.
ExperimentConfig parse_experiment_config(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
nlohmann::json to_json(const ExperimentConfig& cfg);

/// Flow list of one sweep cell.
std::vector<FlowSpec> resolve_flows(const ExperimentConfig& cfg, int n_ues);

struct CellResult {
  SchedulerKind scheduler = SchedulerKind::kFlex;
  int n_ues = 0;
  std::uint64_t seed = 0;
  MetricsBundle metrics;
};

/// Runs every (scheduler, UE count, seed) cell on a bounded worker pool.
/// Results come back in cell order regardless of completion order.
std::vector<CellResult> run_cells(const ExperimentConfig& cfg);

/// PLR of measured packets per arrival-time bucket and direction.
struct PlrBucket {
  Micros bucket_start_us = 0;
  Direction direction = Direction::kUl;
  std::int64_t arrivals = 0;
  std::int64_t delivered = 0;
  double plr = 0.0;
};
std::vector<PlrBucket> plr_timeseries(const MetricsBundle& m, Micros bucket_us);

/// Writes summary.csv, summary_detail.csv, plr_timeseries.csv, manifest.json
/// and the optional per-cell logs.
void write_outputs(const ExperimentConfig& cfg, const std::vector<CellResult>& cells);

/// Runs and writes; the returned cells are the ones written.
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg);

}  // namespace flexsim
