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

// Command-line front end: flags are layered over an optional JSON config
// and the result goes through the same validation as a config file.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "flexsim/experiment.hpp"

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

// "5" or "1-20"
json parse_ue_range(const std::string& s) {
  const auto dash = s.find('-');
  if (dash == std::string::npos) return json::array({std::stoi(s)});
  return json{{"min", std::stoi(s.substr(0, dash))}, {"max", std::stoi(s.substr(dash + 1))}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slot-level dynamic-TDD 5G cell simulator with joint UL/DL scheduling"};

  std::string config_path;
  std::optional<int> scenario;
  std::vector<std::string> schedulers;
  std::string ues;
  std::string seeds;
  std::optional<std::int64_t> duration_us;
  std::optional<std::int64_t> warmup_us;
  std::optional<std::int64_t> bucket_us;
  std::optional<std::int64_t> bytes_per_symbol;
  std::optional<double> error_prob;
  std::optional<unsigned> threads;
  std::string out;
  bool no_warmup = false;
  bool trace = false;
  bool decision_log = false;
  bool gate_log = false;
  bool largest_remainder = false;
  bool print_config = false;

  app.add_option("-c,--config", config_path, "JSON experiment config")->check(CLI::ExistingFile);
  app.add_option("-s,--scenario", scenario, "Scenario preset (1, 2 or 3)")->check(CLI::Range(1, 3));
  app.add_option("--scheduler", schedulers, "Schedulers to run: flex, pf, mr, qos (repeat or comma-separate)")
      ->delimiter(',');
  app.add_option("--ues", ues, "UE count or sweep range, e.g. 8 or 1-20");
  app.add_option("--seeds", seeds, "Comma-separated seed list");
  app.add_option("--duration-us", duration_us, "Simulated duration in microseconds");
  app.add_option("--warmup-us", warmup_us, "Warm-up window excluded from statistics");
  app.add_flag("--no-warmup", no_warmup, "Measure from t=0");
  app.add_option("--bucket-us", bucket_us, "PLR time-series bucket width");
  app.add_option("--bytes-per-symbol", bytes_per_symbol, "Link capacity per symbol for every UE");
  app.add_option("--error-prob", error_prob, "Transmission error probability");
  app.add_flag("--largest-remainder", largest_remainder, "Baselines hand out rounding leftovers");
  app.add_option("--threads", threads, "Worker threads for the sweep (0: all cores)");
  app.add_option("-o,--out", out, "Output directory");
  app.add_flag("--trace", trace, "Write per-slot buffer traces");
  app.add_flag("--decision-log", decision_log, "Write per-slot scheduling decisions");
  app.add_flag("--gate-log", gate_log, "Write per-slot prediction gate states");
  app.add_flag("--print-config", print_config, "Print the resolved config and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream is(config_path);
      try {
        is >> j;
      } catch (const json::parse_error& e) {
        throw flexsim::ConfigError(config_path + ": " + e.what());
      }
    }
    if (scenario) j["scenario"] = *scenario;
    if (!schedulers.empty()) j["schedulers"] = schedulers;
    if (!ues.empty()) {
      try {
        j["ues"] = parse_ue_range(ues);
      } catch (const std::exception&) {
        throw flexsim::ConfigError("--ues: expected N or MIN-MAX");
      }
    }
    if (!seeds.empty()) {
      json arr = json::array();
      for (const auto& s : split(seeds, ',')) {
        try {
          arr.push_back(std::stoull(s));
        } catch (const std::exception&) {
          throw flexsim::ConfigError("--seeds: '" + s + "' is not a seed");
        }
      }
      j["seeds"] = arr;
    }
    if (duration_us) j["duration_us"] = *duration_us;
    if (warmup_us) j["warmup_us"] = *warmup_us;
    if (no_warmup) j["warmup_us"] = 0;
    if (bucket_us) j["bucket_us"] = *bucket_us;
    if (bytes_per_symbol) j["link"]["bytes_per_symbol"] = *bytes_per_symbol;
    if (error_prob) j["link"]["tx_error_probability"] = *error_prob;
    if (largest_remainder) j["baselines"]["largest_remainder"] = true;
    if (threads) j["threads"] = *threads;
    if (!out.empty()) j["output_dir"] = out;
    if (trace) j["logs"]["trace"] = true;
    if (decision_log) j["logs"]["decisions"] = true;
    if (gate_log) j["logs"]["gates"] = true;

    const auto cfg = flexsim::parse_experiment_config(j);
    if (print_config) {
      std::cout << flexsim::to_json(cfg).dump(2) << '\n';
      return 0;
    }
    const auto cells = flexsim::run_experiment(cfg);
    int bad = 0;
    for (const auto& c : cells) {
      const auto s = flexsim::summarize(c.metrics);
      std::cout << flexsim::to_string(c.scheduler) << " n=" << c.n_ues << " seed=" << c.seed << " plr=" << s.plr
                << " median_us=" << s.median_us << '\n';
      if (!c.metrics.invariants.ok()) {
        std::cerr << "invariant violation in " << flexsim::to_string(c.scheduler) << " n=" << c.n_ues
                  << " seed=" << c.seed << '\n';
        ++bad;
      }
    }
    std::cout << "wrote " << cfg.output_dir.string() << '\n';
    return bad ? 3 : 0;
  } catch (const flexsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
