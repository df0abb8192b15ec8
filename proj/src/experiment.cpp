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

#include "flexsim/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace flexsim {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

// Typed access into a JSON object with the field path kept for diagnostics.
class Reader {
 public:
  Reader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(where() + ": expected an object");
  }

  void allow(std::initializer_list<const char*> keys) const {
    std::set<std::string> ok(keys.begin(), keys.end());
    for (const auto& [k, v] : j_.items()) {
      if (!ok.contains(k)) throw ConfigError(field(k) + ": unknown field");
    }
  }

  bool has(const char* key) const { return j_.contains(key); }
  const json& raw(const char* key) const { return j_.at(key); }
  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  template <typename T>
  T get(const char* key, T fallback) const {
    if (!j_.contains(key)) return fallback;
    return as<T>(j_.at(key), field(key));
  }

  template <typename T>
  T require(const char* key) const {
    if (!j_.contains(key)) throw ConfigError(field(key) + ": missing required field");
    return as<T>(j_.at(key), field(key));
  }

  template <typename T>
  static T as(const json& v, const std::string& name) {
    if constexpr (std::is_same_v<T, bool>) {
      if (!v.is_boolean()) throw ConfigError(name + ": expected a boolean");
    } else if constexpr (std::is_integral_v<T>) {
      if (!v.is_number_integer()) throw ConfigError(name + ": expected an integer");
      if constexpr (std::is_unsigned_v<T>) {
        if (v.get<std::int64_t>() < 0) throw ConfigError(name + ": expected a non-negative integer");
      }
    } else if constexpr (std::is_floating_point_v<T>) {
      if (!v.is_number()) throw ConfigError(name + ": expected a number");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!v.is_string()) throw ConfigError(name + ": expected a string");
    }
    return v.get<T>();
  }

 private:
  std::string where() const { return path_.empty() ? "config" : path_; }
  const json& j_;
  std::string path_;
};

FlowDirection parse_flow_direction(const std::string& s, const std::string& field) {
  if (s == "ul") return FlowDirection::kUl;
  if (s == "dl") return FlowDirection::kDl;
  if (s == "bidirectional") return FlowDirection::kBidirectional;
  throw ConfigError(field + ": expected ul, dl or bidirectional");
}

void apply_flow_fields(const Reader& r, FlowSpec& f) {
  f.message_size_bytes = r.get<Bytes>("message_size_bytes", f.message_size_bytes);
  f.ip_overhead_bytes = r.get<Bytes>("ip_overhead_bytes", f.ip_overhead_bytes);
  f.interval_us = r.get<Micros>("interval_us", f.interval_us);
  f.interval_jitter_fraction = r.get<double>("interval_jitter_fraction", f.interval_jitter_fraction);
  f.start_time_us = r.get<Micros>("start_time_us", f.start_time_us);
  f.qos.packet_delay_budget_us = r.get<Micros>("pdb_us", f.qos.packet_delay_budget_us);
}

FlowSpec parse_flow(const json& j, const std::string& path) {
  Reader r(j, path);
  r.allow({"flow_id", "ue_id", "direction", "five_qi", "priority", "message_size_bytes", "ip_overhead_bytes",
           "interval_us", "interval_jitter_fraction", "start_time_us", "pdb_us"});
  FlowSpec f;
  f.flow_id = r.require<int>("flow_id");
  f.ue_id = r.get<int>("ue_id", f.flow_id);
  f.direction = parse_flow_direction(r.require<std::string>("direction"), r.field("direction"));
  const int five_qi = r.require<int>("five_qi");
  if (r.has("priority")) {
    f.qos.five_qi = five_qi;
    f.qos.priority = r.get<int>("priority", 0);
  } else if (QosProfile::has_builtin(five_qi)) {
    f.qos = QosProfile::from_five_qi(five_qi);
  } else {
    throw ConfigError(r.field("priority") + ": 5QI " + std::to_string(five_qi) +
                      " has no built-in priority; set it explicitly");
  }
  f.message_size_bytes = r.require<Bytes>("message_size_bytes");
  f.interval_us = r.require<Micros>("interval_us");
  apply_flow_fields(r, f);
  try {
    f.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return f;
}

std::string cell_tag(const CellResult& c) {
  std::ostringstream os;
  os << to_string(c.scheduler) << "_n" << c.n_ues << "_s" << c.seed;
  return os.str();
}

std::ofstream open_out(const std::filesystem::path& p) {
  std::ofstream os(p, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + p.string());
  os << std::setprecision(10);
  return os;
}

void summary_row(std::ostream& os, const CellResult& c, const std::string& dir, const std::string& flow,
                 const LatencySummary& s) {
  os << to_string(c.scheduler) << ',' << c.n_ues << ',' << c.seed << ',' << dir << ',' << flow << ',' << s.plr << ','
     << s.mean_us << ',' << s.median_us << ',' << s.p99_us << ',' << s.throughput_bps << ',' << s.arrivals << ','
     << s.delivered << '\n';
}

constexpr const char* kSummaryHeader =
    "scheduler,n_ues,seed,direction,flow,plr,mean_latency_us,median_latency_us,p99_latency_us,throughput_Bps,"
    "arrivals,delivered\n";

}  // namespace

void ExperimentConfig::validate() const {
  if (schedulers.empty()) throw ConfigError("schedulers: must name at least one scheduler");
  if (seeds.empty()) throw ConfigError("seeds: seed list must be nonempty");
  if (ue_counts.empty()) throw ConfigError("ues: UE sweep must be nonempty");
  if (bucket_us <= 0) throw ConfigError("bucket_us: must be positive");
  try {
    engine.validate();
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("engine: ") + e.what());
  }
  if (!flows) {
    const UeRange range = scenario_ue_range(scenario);
    for (int n : ue_counts) {
      if (n < range.min || n > range.max) {
        throw ConfigError("ues: " + std::to_string(n) + " outside " + std::to_string(range.min) + ".." +
                          std::to_string(range.max) + " for scenario " + std::to_string(scenario));
      }
    }
  }
  for (int n : ue_counts) {
    for (const auto& f : resolve_flows(*this, n)) {
      try {
        f.validate();
      } catch (const ConfigError& e) {
        throw ConfigError("flow " + std::to_string(f.flow_id) + ": " + e.what());
      }
    }
  }
}

ExperimentConfig parse_experiment_config(const json& j) {
  Reader r(j, "");
  r.allow({"scenario", "flows", "flow_overrides", "schedulers", "ues", "seeds", "duration_us", "warmup_us",
           "bucket_us", "output_dir", "threads", "clock", "timing", "gate", "link", "harq", "measurement",
           "baselines", "logs"});
  ExperimentConfig c;
  c.scenario = r.get<int>("scenario", c.scenario);
  if (c.scenario < 1 || c.scenario > 3) throw ConfigError("scenario: expected 1, 2 or 3");
  if (c.scenario == 3) c.ue_counts = {8};

  if (r.has("schedulers")) {
    const auto& s = r.raw("schedulers");
    if (!s.is_array()) throw ConfigError("schedulers: expected an array");
    c.schedulers.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string where = "schedulers[" + std::to_string(i) + "]";
      try {
        c.schedulers.push_back(parse_scheduler_kind(Reader::as<std::string>(s[i], where)));
      } catch (const ConfigError& e) {
        throw ConfigError(where + ": " + e.what());
      }
    }
  }
  if (r.has("seeds")) {
    const auto& s = r.raw("seeds");
    if (!s.is_array()) throw ConfigError("seeds: expected an array");
    c.seeds.clear();
    for (std::size_t i = 0; i < s.size(); ++i) {
      c.seeds.push_back(Reader::as<std::uint64_t>(s[i], "seeds[" + std::to_string(i) + "]"));
    }
  }
  if (r.has("ues")) {
    const auto& u = r.raw("ues");
    c.ue_counts.clear();
    if (u.is_array()) {
      for (std::size_t i = 0; i < u.size(); ++i) c.ue_counts.push_back(Reader::as<int>(u[i], "ues[" + std::to_string(i) + "]"));
    } else {
      Reader ur(u, "ues");
      ur.allow({"min", "max"});
      const int lo = ur.require<int>("min");
      const int hi = ur.require<int>("max");
      if (hi < lo) throw ConfigError("ues.max: must not be below ues.min");
      for (int n = lo; n <= hi; ++n) c.ue_counts.push_back(n);
    }
  }

  auto& e = c.engine;
  e.duration_us = r.get<Micros>("duration_us", e.duration_us);
  e.warmup_us = r.get<Micros>("warmup_us", e.warmup_us);
  c.bucket_us = r.get<Micros>("bucket_us", c.bucket_us);
  c.output_dir = r.get<std::string>("output_dir", c.output_dir.string());
  c.threads = r.get<unsigned>("threads", c.threads);

  if (r.has("clock")) {
    Reader s(r.raw("clock"), "clock");
    s.allow({"symbols_per_slot", "usable_symbols", "slot_duration_us"});
    e.clock.symbols_per_slot = s.get<int>("symbols_per_slot", e.clock.symbols_per_slot);
    e.clock.usable_symbols = s.get<int>("usable_symbols", e.clock.usable_symbols);
    e.clock.slot_duration_us = s.get<Micros>("slot_duration_us", e.clock.slot_duration_us);
  }
  if (r.has("timing")) {
    Reader s(r.raw("timing"), "timing");
    s.allow({"k0", "k2", "guard_symbols", "sr_delay", "bsr_symbols"});
    e.timing.k0 = s.get<int>("k0", e.timing.k0);
    e.timing.k2 = s.get<int>("k2", e.timing.k2);
    e.timing.guard_symbols = s.get<int>("guard_symbols", e.timing.guard_symbols);
    e.timing.sr_delay = s.get<int>("sr_delay", e.timing.sr_delay);
    e.timing.bsr_symbols = s.get<int>("bsr_symbols", e.timing.bsr_symbols);
  }
  if (r.has("gate")) {
    Reader s(r.raw("gate"), "gate");
    s.allow({"cv_interval_threshold", "cv_size_threshold", "min_samples"});
    e.gate.cv_interval_threshold = s.get<double>("cv_interval_threshold", e.gate.cv_interval_threshold);
    e.gate.cv_size_threshold = s.get<double>("cv_size_threshold", e.gate.cv_size_threshold);
    e.gate.min_samples = s.get<int>("min_samples", e.gate.min_samples);
  }
  if (r.has("link")) {
    Reader s(r.raw("link"), "link");
    s.allow({"bytes_per_symbol", "tx_error_probability", "per_ue"});
    e.bytes_per_symbol = s.get<Bytes>("bytes_per_symbol", e.bytes_per_symbol);
    e.tx_error_probability = s.get<double>("tx_error_probability", e.tx_error_probability);
    if (s.has("per_ue")) {
      const auto& p = s.raw("per_ue");
      if (!p.is_object()) throw ConfigError("link.per_ue: expected an object of UE id to bytes per symbol");
      for (const auto& [k, v] : p.items()) {
        int ue = 0;
        try {
          ue = std::stoi(k);
        } catch (const std::exception&) {
          throw ConfigError("link.per_ue." + k + ": key must be a UE id");
        }
        e.bytes_per_symbol_overrides[ue] = Reader::as<Bytes>(v, "link.per_ue." + k);
      }
    }
  }
  if (r.has("harq")) {
    Reader s(r.raw("harq"), "harq");
    s.allow({"max_retx"});
    e.max_retx = s.get<int>("max_retx", e.max_retx);
  }
  if (r.has("measurement")) {
    Reader s(r.raw("measurement"), "measurement");
    s.allow({"history_capacity"});
    e.history_capacity = s.get<std::size_t>("history_capacity", e.history_capacity);
  }
  if (r.has("baselines")) {
    Reader s(r.raw("baselines"), "baselines");
    s.allow({"largest_remainder"});
    e.largest_remainder = s.get<bool>("largest_remainder", e.largest_remainder);
  }
  if (r.has("logs")) {
    Reader s(r.raw("logs"), "logs");
    s.allow({"decisions", "gates", "trace"});
    c.write_decisions = s.get<bool>("decisions", false);
    c.write_gates = s.get<bool>("gates", false);
    c.write_trace = s.get<bool>("trace", false);
  }
  if (r.has("flow_overrides")) {
    Reader s(r.raw("flow_overrides"), "flow_overrides");
    s.allow({"message_size_bytes", "ip_overhead_bytes", "interval_us", "interval_jitter_fraction", "start_time_us",
             "pdb_us"});
    c.flow_overrides = r.raw("flow_overrides");
  }
  if (r.has("flows")) {
    const auto& fl = r.raw("flows");
    if (!fl.is_array() || fl.empty()) throw ConfigError("flows: expected a nonempty array");
    std::vector<FlowSpec> flows;
    std::set<int> ids;
    for (std::size_t i = 0; i < fl.size(); ++i) {
      flows.push_back(parse_flow(fl[i], "flows[" + std::to_string(i) + "]"));
      if (!ids.insert(flows.back().flow_id).second) {
        throw ConfigError("flows[" + std::to_string(i) + "].flow_id: duplicate id");
      }
    }
    std::set<int> ues;
    for (const auto& f : flows) ues.insert(f.ue_id);
    if (!r.has("ues")) c.ue_counts = {static_cast<int>(ues.size())};
    c.flows = std::move(flows);
  }
  c.engine.record_decisions = c.write_decisions;
  c.engine.record_gates = c.write_gates;
  c.engine.record_trace = c.write_trace;
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path.string());
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_experiment_config(j);
}

json to_json(const ExperimentConfig& c) {
  const auto& e = c.engine;
  json scheds = json::array();
  for (auto s : c.schedulers) scheds.push_back(std::string(to_string(s)));
  json per_ue = json::object();
  for (const auto& [ue, b] : e.bytes_per_symbol_overrides) per_ue[std::to_string(ue)] = b;
  json j = {
      {"scenario", c.scenario},
      {"schedulers", scheds},
      {"ues", c.ue_counts},
      {"seeds", c.seeds},
      {"duration_us", e.duration_us},
      {"warmup_us", e.warmup_us},
      {"bucket_us", c.bucket_us},
      {"output_dir", c.output_dir.string()},
      {"clock",
       {{"symbols_per_slot", e.clock.symbols_per_slot},
        {"usable_symbols", e.clock.usable_symbols},
        {"slot_duration_us", e.clock.slot_duration_us}}},
      {"timing",
       {{"k0", e.timing.k0},
        {"k2", e.timing.k2},
        {"guard_symbols", e.timing.guard_symbols},
        {"sr_delay", e.timing.sr_delay},
        {"bsr_symbols", e.timing.bsr_symbols}}},
      {"gate",
       {{"cv_interval_threshold", e.gate.cv_interval_threshold},
        {"cv_size_threshold", e.gate.cv_size_threshold},
        {"min_samples", e.gate.min_samples}}},
      {"link",
       {{"bytes_per_symbol", e.bytes_per_symbol},
        {"tx_error_probability", e.tx_error_probability},
        {"per_ue", per_ue}}},
      {"harq", {{"max_retx", e.max_retx}}},
      {"measurement", {{"history_capacity", e.history_capacity}}},
      {"baselines", {{"largest_remainder", e.largest_remainder}}},
      {"logs", {{"decisions", c.write_decisions}, {"gates", c.write_gates}, {"trace", c.write_trace}}},
      {"flow_overrides", c.flow_overrides},
  };
  return j;
}

std::vector<FlowSpec> resolve_flows(const ExperimentConfig& cfg, int n_ues) {
  if (cfg.flows) return *cfg.flows;
  auto flows = build_scenario(cfg.scenario, n_ues);
  if (!cfg.flow_overrides.empty()) {
    Reader r(cfg.flow_overrides, "flow_overrides");
    for (auto& f : flows) apply_flow_fields(r, f);
  }
  return flows;
}

std::vector<CellResult> run_cells(const ExperimentConfig& cfg) {
  std::vector<CellResult> cells;
  for (auto s : cfg.schedulers) {
    for (int n : cfg.ue_counts) {
      for (auto seed : cfg.seeds) cells.push_back({s, n, seed, {}});
    }
  }
  unsigned workers = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        auto& c = cells[i];
        c.metrics = run(resolve_flows(cfg, c.n_ues), c.scheduler, cfg.engine, c.seed, c.n_ues);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return cells;
}

std::vector<PlrBucket> plr_timeseries(const MetricsBundle& m, Micros bucket_us) {
  std::map<std::pair<Micros, int>, PlrBucket> buckets;
  for (const auto& p : m.packets) {
    if (!p.measured) continue;
    const Micros start = (p.arrival_time_us / bucket_us) * bucket_us;
    auto& b = buckets[{start, p.direction == Direction::kUl ? 0 : 1}];
    b.bucket_start_us = start;
    b.direction = p.direction;
    ++b.arrivals;
    if (p.fate == PacketFate::kDelivered) ++b.delivered;
  }
  std::vector<PlrBucket> out;
  for (auto& [key, b] : buckets) {
    b.plr = b.arrivals ? 1.0 - static_cast<double>(b.delivered) / static_cast<double>(b.arrivals) : 0.0;
    out.push_back(b);
  }
  return out;
}

void write_outputs(const ExperimentConfig& cfg, const std::vector<CellResult>& cells) {
  std::filesystem::create_directories(cfg.output_dir);
  const auto& dir = cfg.output_dir;

  {
    auto os = open_out(dir / "summary.csv");
    os << kSummaryHeader;
    for (const auto& c : cells) summary_row(os, c, "all", "all", summarize(c.metrics));
  }
  {
    auto os = open_out(dir / "summary_detail.csv");
    os << kSummaryHeader;
    for (const auto& c : cells) {
      std::set<std::pair<FlowId, int>> lcs;
      for (const auto& [lc, ledger] : c.metrics.bytes) lcs.insert({lc.flow, lc.dir == Direction::kUl ? 0 : 1});
      for (Direction d : {Direction::kUl, Direction::kDl}) {
        PacketFilter f;
        f.direction = d;
        summary_row(os, c, std::string(to_string(d)), "all", summarize(c.metrics, f));
      }
      for (const auto& [flow, d] : lcs) {
        PacketFilter f;
        f.direction = d == 0 ? Direction::kUl : Direction::kDl;
        f.flow = flow;
        summary_row(os, c, std::string(to_string(*f.direction)), std::to_string(flow), summarize(c.metrics, f));
      }
    }
  }
  {
    auto os = open_out(dir / "plr_timeseries.csv");
    os << "scheduler,n_ues,seed,bucket_start_us,direction,arrivals,delivered,plr\n";
    for (const auto& c : cells) {
      for (const auto& b : plr_timeseries(c.metrics, cfg.bucket_us)) {
        os << to_string(c.scheduler) << ',' << c.n_ues << ',' << c.seed << ',' << b.bucket_start_us << ','
           << to_string(b.direction) << ',' << b.arrivals << ',' << b.delivered << ',' << b.plr << '\n';
      }
    }
  }
  for (const auto& c : cells) {
    const std::string tag = cell_tag(c);
    if (cfg.write_decisions) {
      auto os = open_out(dir / ("decisions_" + tag + ".csv"));
      os << "slot,strategy,reward,direction,flow,purpose,first_symbol,n_symbols,bytes\n";
      for (const auto& d : c.metrics.decisions) {
        os << d.slot << ',' << to_string(d.strategy) << ',' << d.reward << ',' << to_string(d.direction) << ','
           << d.flow_id << ',' << (d.purpose == GrantPurpose::kBsr ? "bsr" : "data") << ',' << d.first_symbol << ','
           << d.n_symbols << ',' << d.bytes << '\n';
      }
    }
    if (cfg.write_gates) {
      auto os = open_out(dir / ("gates_" + tag + ".csv"));
      os << "slot,flow,direction,enabled,basis\n";
      for (const auto& g : c.metrics.gates) {
        os << g.slot << ',' << g.lc.flow << ',' << to_string(g.lc.dir) << ',' << (g.enabled ? 1 : 0) << ','
           << to_string(g.basis) << '\n';
      }
    }
    if (cfg.write_trace) {
      auto os = open_out(dir / ("trace_" + tag + ".csv"));
      os << "slot,flow,direction,actual_q,measured_q,transported\n";
      for (const auto& t : c.metrics.trace) {
        os << t.slot << ',' << t.flow_id << ',' << to_string(t.direction) << ',' << t.actual_q << ','
           << t.measured_q << ',' << t.transported << '\n';
      }
    }
  }

  json manifest;
  manifest["tool"] = "flexsim";
  manifest["version"] = kVersion;
  manifest["config"] = to_json(cfg);
  json flows_by_n = json::object();
  for (int n : cfg.ue_counts) {
    json arr = json::array();
    for (const auto& f : resolve_flows(cfg, n)) {
      arr.push_back({{"flow_id", f.flow_id},
                     {"ue_id", f.ue_id},
                     {"direction", std::string(to_string(f.direction))},
                     {"five_qi", f.qos.five_qi},
                     {"priority", f.qos.priority},
                     {"message_size_bytes", f.message_size_bytes},
                     {"ip_overhead_bytes", f.ip_overhead_bytes},
                     {"interval_us", f.interval_us},
                     {"interval_jitter_fraction", f.interval_jitter_fraction},
                     {"start_time_us", f.start_time_us},
                     {"pdb_us", f.qos.packet_delay_budget_us}});
    }
    flows_by_n[std::to_string(n)] = arr;
  }
  manifest["resolved_flows"] = flows_by_n;
  json cj = json::array();
  for (const auto& c : cells) {
    const auto& inv = c.metrics.invariants;
    cj.push_back({{"scheduler", std::string(to_string(c.scheduler))},
                  {"n_ues", c.n_ues},
                  {"seed", c.seed},
                  {"slots", c.metrics.slots_run},
                  {"packets", c.metrics.packets.size()},
                  {"granted_symbols", c.metrics.granted_symbols},
                  {"wasted_symbols", c.metrics.wasted_symbols},
                  {"gate_on_fraction", c.metrics.gate_samples
                                           ? static_cast<double>(c.metrics.gate_on_samples) /
                                                 static_cast<double>(c.metrics.gate_samples)
                                           : 0.0},
                  {"invariants",
                   {{"guard", inv.guard_violations},
                    {"overlap", inv.overlap_violations},
                    {"deadline", inv.deadline_violations},
                    {"capacity", inv.capacity_violations},
                    {"conservation", inv.conservation_violations}}}});
  }
  manifest["cells"] = cj;
  auto os = open_out(dir / "manifest.json");
  os << manifest.dump(2) << '\n';
}

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  auto cells = run_cells(cfg);
  write_outputs(cfg, cells);
  return cells;
}

}  // namespace flexsim
