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

#include "flexsim/engine.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace flexsim {

std::string_view to_string(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::kFlex:
      return "flex";
    case SchedulerKind::kPf:
      return "pf";
    case SchedulerKind::kMr:
      return "mr";
    case SchedulerKind::kQos:
      return "qos";
  }
  return "?";
}

SchedulerKind parse_scheduler_kind(std::string_view s) {
  if (s == "flex") return SchedulerKind::kFlex;
  if (s == "pf") return SchedulerKind::kPf;
  if (s == "mr") return SchedulerKind::kMr;
  if (s == "qos") return SchedulerKind::kQos;
  throw ConfigError("unknown scheduler '" + std::string(s) + "' (expected flex, pf, mr or qos)");
}

std::string_view to_string(PacketFate f) {
  switch (f) {
    case PacketFate::kInFlight:
      return "in_flight";
    case PacketFate::kDelivered:
      return "delivered";
    case PacketFate::kDiscardedPdb:
      return "discarded_pdb";
    case PacketFate::kDroppedErrorLimit:
      return "dropped_error_limit";
  }
  return "?";
}

void EngineConfig::validate() const {
  clock.validate();
  timing.validate();
  gate.validate();
  if (bytes_per_symbol <= 0) throw ConfigError("link.bytes_per_symbol must be positive");
  for (const auto& [ue, b] : bytes_per_symbol_overrides) {
    if (b <= 0) throw ConfigError("link.bytes_per_symbol override for UE " + std::to_string(ue) + " must be positive");
  }
  if (tx_error_probability < 0.0 || tx_error_probability >= 1.0) {
    throw ConfigError("link.tx_error_probability must be in [0, 1)");
  }
  if (max_retx < 1) throw ConfigError("max_retx must be at least 1");
  if (duration_us <= 0) throw ConfigError("duration_us must be positive");
  if (warmup_us < 0 || warmup_us >= duration_us) throw ConfigError("warmup_us must be in [0, duration_us)");
  if (timing.guard_symbols >= clock.usable_symbols) throw ConfigError("guard_symbols must be below usable_symbols");
}

Bytes LcQueue::total() const {
  Bytes t = status_bytes;
  for (const auto& s : retx) t += s.bytes;
  for (const auto& s : newtx) t += s.bytes;
  return t;
}

UlQueueSet LcQueue::view() const {
  UlQueueSet v;
  v.status_queue = status_bytes;
  for (const auto& s : retx) v.retx_queue += s.bytes;
  for (const auto& s : newtx) v.newtx_queue += s.bytes;
  return v;
}

namespace {

void purge(LcQueue& q, std::size_t packet) {
  auto same = [packet](const Segment& s) { return s.packet == packet; };
  std::erase_if(q.retx, same);
  std::erase_if(q.newtx, same);
}

}  // namespace

TxOutcome execute_grant(LcQueue& queue, Bytes tb_bytes, bool error, int max_retx, std::vector<Bytes>& remaining) {
  TxOutcome out;
  out.error = error;
  Bytes budget = tb_bytes;

  const Bytes status = std::min(budget, queue.status_bytes);
  queue.status_bytes -= status;
  budget -= status;
  out.transported += status;

  std::vector<Segment> pieces;
  for (auto* dq : {&queue.retx, &queue.newtx}) {
    while (budget > 0 && !dq->empty()) {
      Segment& head = dq->front();
      const Bytes take = std::min(budget, head.bytes);
      pieces.push_back({head.packet, take, head.attempts});
      head.bytes -= take;
      budget -= take;
      if (head.bytes == 0) dq->pop_front();
    }
  }

  std::set<std::size_t> dropped;
  for (auto& p : pieces) {
    out.transported += p.bytes;
    if (!error) {
      out.delivered += p.bytes;
      remaining[p.packet] -= p.bytes;
      if (remaining[p.packet] == 0) out.completed.push_back(p.packet);
      continue;
    }
    out.failed += p.bytes;
    if (dropped.contains(p.packet)) continue;
    if (p.attempts + 1 >= max_retx) {
      dropped.insert(p.packet);
      continue;
    }
    queue.retx.push_back({p.packet, p.bytes, p.attempts + 1});
  }
  if (!error) out.delivered += status;
  for (std::size_t pkt : dropped) {
    purge(queue, pkt);
    out.dropped_bytes += remaining[pkt];
    remaining[pkt] = 0;
    out.dropped_packets.push_back(pkt);
  }
  return out;
}

std::vector<std::size_t> discard_expired(LcQueue& queue, Micros now_us, Micros pdb_us,
                                         const std::vector<PacketRecord>& packets) {
  std::set<std::size_t> expired;
  auto old = [&](const Segment& s) { return now_us - packets[s.packet].arrival_time_us > pdb_us; };
  for (const auto& s : queue.retx) {
    if (old(s)) expired.insert(s.packet);
  }
  // New transmissions queue in arrival order.
  for (const auto& s : queue.newtx) {
    if (!old(s)) break;
    expired.insert(s.packet);
  }
  for (std::size_t pkt : expired) purge(queue, pkt);
  return {expired.begin(), expired.end()};
}

std::unique_ptr<Scheduler> make_scheduler(SchedulerKind kind, const EngineConfig& cfg,
                                          const std::vector<FlowSpec>& flows, const LinkModel& link) {
  SchedulerConfig sc{.clock = cfg.clock,
                     .timing = cfg.timing,
                     .gate = cfg.gate,
                     .history_capacity = cfg.history_capacity,
                     .largest_remainder = cfg.largest_remainder,
                     .log_gates = cfg.record_gates};
  switch (kind) {
    case SchedulerKind::kFlex:
      return std::make_unique<FlexScheduler>(sc, flows, link);
    case SchedulerKind::kPf:
      return std::make_unique<BaselineScheduler>(BaselineKind::kPf, sc, flows, link);
    case SchedulerKind::kMr:
      return std::make_unique<BaselineScheduler>(BaselineKind::kMr, sc, flows, link);
    case SchedulerKind::kQos:
      return std::make_unique<BaselineScheduler>(BaselineKind::kQos, sc, flows, link);
  }
  throw ConfigError("unknown scheduler kind");
}

namespace {

struct Channel {
  LcId lc;
  UeId ue = 0;
  Micros pdb_us = 0;
  Bytes bytes_per_symbol = 1;
  ArrivalProcess arrivals;
  LcQueue queue;
  Rng error_rng;
  bool sr_outstanding = false;
  std::optional<SlotIndex> sr_due;
  SlotIndex sr_raised = 0;
  int pending_grants = 0;
};

// Tracks the direction sequence of occupied symbols across slots and counts
// DL -> UL switches that lack the guard interval.
struct GuardTracker {
  std::optional<Direction> last;
  int idle = 0;

  std::int64_t advance(const std::vector<std::optional<Direction>>& symbols, int guard) {
    std::int64_t violations = 0;
    for (const auto& d : symbols) {
      if (!d) {
        idle = std::min(idle + 1, 1 << 20);
        continue;
      }
      if (last == Direction::kDl && *d == Direction::kUl && idle < guard) ++violations;
      last = d;
      idle = 0;
    }
    return violations;
  }
};

}  // namespace

MetricsBundle run(const std::vector<FlowSpec>& flows, SchedulerKind kind, const EngineConfig& cfg,
                  std::uint64_t seed, int n_ues) {
  cfg.validate();
  if (flows.empty()) throw ConfigError("scenario has no flows");
  for (const auto& f : flows) f.validate();

  LinkModel link(cfg.tx_error_probability);
  for (const auto& f : flows) {
    auto it = cfg.bytes_per_symbol_overrides.find(f.ue_id);
    link.set_bytes_per_symbol(f.ue_id, it == cfg.bytes_per_symbol_overrides.end() ? cfg.bytes_per_symbol : it->second);
  }
  auto scheduler = make_scheduler(kind, cfg, flows, link);

  std::vector<Channel> channels;
  Micros max_pdb = 0;
  for (const auto& f : flows) {
    for (Direction d : {Direction::kUl, Direction::kDl}) {
      if (!f.carries(d)) continue;
      const LcId lc{f.flow_id, d};
      channels.push_back(Channel{.lc = lc,
                                 .ue = f.ue_id,
                                 .pdb_us = f.qos.packet_delay_budget_us,
                                 .bytes_per_symbol = link.bytes_per_symbol(f.ue_id),
                                 .arrivals = ArrivalProcess(f, d, seed),
                                 .queue = {},
                                 .error_rng = Rng::stream(seed, 5000 + static_cast<std::uint64_t>(lc.key()))});
      max_pdb = std::max(max_pdb, f.qos.packet_delay_budget_us);
    }
  }
  std::map<LcId, std::size_t> index;
  for (std::size_t i = 0; i < channels.size(); ++i) index[channels[i].lc] = i;

  const auto& clock = cfg.clock;
  const auto& timing = cfg.timing;
  const int usable = clock.usable_symbols;
  const SlotIndex last_slot =
      clock.first_slot_at_or_after(cfg.duration_us + max_pdb) + 2 * (timing.k2 + timing.sr_delay) + 2;

  MetricsBundle m;
  m.scheduler = scheduler->name();
  m.n_ues = n_ues;
  m.seed = seed;
  m.duration_us = cfg.duration_us;
  m.warmup_us = cfg.warmup_us;
  std::vector<Bytes> remaining;

  std::map<SlotIndex, std::vector<Allocation>> pipeline;
  std::map<SlotIndex, std::vector<int>> guards;
  std::vector<BsrEvent> bsrs_next;
  std::map<LcId, TxFeedback> feedback_next;
  GuardTracker tracker;

  for (SlotIndex s = 0; s <= last_slot; ++s) {
    const Micros t0 = clock.slot_start_us(s);

    // Arrivals become visible at the first slot start at or after them.
    for (auto& ch : channels) {
      const bool was_empty = ch.queue.total() == 0;
      bool arrived = false;
      while (ch.arrivals.peek().arrival_time_us <= t0 && ch.arrivals.peek().arrival_time_us < cfg.duration_us) {
        const PacketArrival a = ch.arrivals.pop();
        PacketRecord rec{.flow_id = a.flow_id,
                         .direction = a.direction,
                         .sequence_number = a.sequence_number,
                         .size_bytes = a.size_bytes,
                         .arrival_time_us = a.arrival_time_us,
                         .delivery_time_us = std::nullopt,
                         .fate = PacketFate::kInFlight,
                         .measured = a.arrival_time_us >= cfg.warmup_us && a.arrival_time_us < cfg.duration_us};
        m.packets.push_back(rec);
        remaining.push_back(a.size_bytes);
        ch.queue.newtx.push_back({m.packets.size() - 1, a.size_bytes, 0});
        m.bytes[ch.lc].arrived += a.size_bytes;
        arrived = true;
      }
      if (ch.lc.dir == Direction::kUl && arrived && was_empty && ch.pending_grants == 0 && !ch.sr_outstanding) {
        ch.sr_outstanding = true;
        ch.sr_raised = s;
        ch.sr_due = s + timing.sr_delay;
      }
    }

    SlotInput in;
    in.now = s;
    for (auto& ch : channels) {
      if (ch.sr_due && *ch.sr_due == s) {
        in.srs.push_back({ch.lc, ch.sr_raised});
        ch.sr_due.reset();
      }
      if (ch.lc.dir == Direction::kDl) in.dl_buffers[ch.lc] = ch.queue.total();
    }
    in.bsrs = std::move(bsrs_next);
    bsrs_next.clear();
    for (const auto& [lc, fb] : feedback_next) in.feedback.push_back(fb);
    feedback_next.clear();

    SlotDecision d = scheduler->tick(in);

    if (d.ul_target != s + timing.k2 && !d.ul_grants.empty()) ++m.invariants.deadline_violations;
    if (d.dl_target != s + timing.k0 && !d.dl_grants.empty()) ++m.invariants.deadline_violations;
    for (const auto& g : d.ul_grants) {
      if (d.ul_target < s + timing.k2) continue;  // rejected: too late for the UE to prepare
      pipeline[d.ul_target].push_back(g);
      auto& ch = channels[index.at(g.lc)];
      ++ch.pending_grants;
      ch.sr_outstanding = false;
      ch.sr_due.reset();
    }
    for (const auto& g : d.dl_grants) {
      if (d.dl_target < s + timing.k0) continue;
      pipeline[d.dl_target].push_back(g);
    }
    if (d.plan_for_dl_target) {
      guards[d.dl_target] = d.plan_for_dl_target->guard_symbol_positions;
      if (cfg.record_decisions) {
        const auto& p = *d.plan_for_dl_target;
        if (p.allocations.empty()) {
          m.decisions.push_back({d.dl_target, p.strategy, p.reward, Direction::kDl, -1, GrantPurpose::kData, 0, 0, 0});
        }
        for (const auto& a : p.allocations) {
          m.decisions.push_back(
              {d.dl_target, p.strategy, p.reward, a.dir, a.lc.flow, a.purpose, a.first_symbol, a.n_symbols, a.bytes});
        }
      }
    }
    for (const auto& g : d.gates) {
      if (g.enabled) ++m.gate_on_samples;
    }
    m.gate_samples += static_cast<std::int64_t>(channels.size());
    if (cfg.record_gates) m.gates.insert(m.gates.end(), d.gates.begin(), d.gates.end());

    // Execute this slot's grants.
    std::vector<Allocation> grants;
    if (auto it = pipeline.find(s); it != pipeline.end()) {
      grants = std::move(it->second);
      pipeline.erase(it);
    }
    std::vector<std::optional<Direction>> occupancy(static_cast<std::size_t>(usable));
    for (const auto& g : grants) {
      if (g.first_symbol < 0 || g.n_symbols <= 0 || g.end_symbol() > usable) {
        ++m.invariants.overlap_violations;
        continue;
      }
      for (int i = g.first_symbol; i < g.end_symbol(); ++i) {
        if (occupancy[static_cast<std::size_t>(i)]) ++m.invariants.overlap_violations;
        occupancy[static_cast<std::size_t>(i)] = g.dir;
      }
    }
    if (auto it = guards.find(s); it != guards.end()) {
      for (int pos : it->second) {
        if (pos >= 0 && pos < usable && occupancy[static_cast<std::size_t>(pos)]) ++m.invariants.guard_violations;
      }
      guards.erase(it);
    }
    m.invariants.guard_violations += tracker.advance(occupancy, timing.guard_symbols);

    std::map<LcId, Bytes> transported_in_slot;
    for (const auto& g : grants) {
      auto& ch = channels[index.at(g.lc)];
      const Bytes tb = static_cast<Bytes>(g.n_symbols) * ch.bytes_per_symbol;
      if (g.bytes > tb) ++m.invariants.capacity_violations;
      const Bytes before = ch.queue.total();
      if (g.dir == Direction::kUl) {
        --ch.pending_grants;
        // Every UL transmission carries a BSR with the pre-transmission queue.
        bsrs_next.push_back({g.lc, s, before});
      }
      const bool error = ch.error_rng.bernoulli(link.tx_error_probability());
      TxOutcome out = execute_grant(ch.queue, tb, error, cfg.max_retx, remaining);
      const Micros done = clock.usable_symbol_end_us(s, g.end_symbol());
      for (std::size_t pkt : out.completed) {
        m.packets[pkt].fate = PacketFate::kDelivered;
        m.packets[pkt].delivery_time_us = done;
      }
      for (std::size_t pkt : out.dropped_packets) m.packets[pkt].fate = PacketFate::kDroppedErrorLimit;
      auto& ledger = m.bytes[g.lc];
      ledger.delivered += out.delivered;
      ledger.discarded += out.dropped_bytes;

      auto& fb = feedback_next[g.lc];
      fb.lc = g.lc;
      fb.slot = s;
      fb.delivered += out.delivered;
      fb.failed += out.failed;
      transported_in_slot[g.lc] += out.transported;
      m.granted_symbols += g.n_symbols;
      if (out.transported == 0) m.wasted_symbols += g.n_symbols;
    }

    if (cfg.record_trace) {
      for (const auto& ch : channels) {
        const FlowBufferHistory* h = scheduler->history(ch.lc);
        const Bytes moved = transported_in_slot.contains(ch.lc) ? transported_in_slot.at(ch.lc) : 0;
        TraceRow row{s, ch.lc.flow, ch.lc.dir, ch.queue.total() + moved, 0, moved};
        if (h && h->contains(s)) row.measured_q = h->q(s);
        m.trace.push_back(row);
      }
    }

    // Packets older than their delay budget at the end of the slot are gone.
    const Micros t_end = clock.slot_start_us(s + 1);
    for (auto& ch : channels) {
      for (std::size_t pkt : discard_expired(ch.queue, t_end, ch.pdb_us, m.packets)) {
        m.packets[pkt].fate = PacketFate::kDiscardedPdb;
        m.bytes[ch.lc].discarded += remaining[pkt];
        remaining[pkt] = 0;
      }
    }
  }

  m.slots_run = last_slot + 1;
  for (auto& ch : channels) {
    auto& ledger = m.bytes[ch.lc];
    ledger.queued = ch.queue.total();
    if (ledger.arrived != ledger.delivered + ledger.discarded + ledger.queued) ++m.invariants.conservation_violations;
  }
  // Every late or over-granted byte is accounted; also cross-check packets.
  for (std::size_t i = 0; i < m.packets.size(); ++i) {
    const bool gone = m.packets[i].fate == PacketFate::kDelivered || m.packets[i].fate == PacketFate::kDiscardedPdb ||
                      m.packets[i].fate == PacketFate::kDroppedErrorLimit;
    if (gone && remaining[i] != 0) ++m.invariants.conservation_violations;
  }
  return m;
}

LatencySummary summarize(const MetricsBundle& m, const PacketFilter& filter) {
  LatencySummary s;
  std::vector<double> lat;
  Bytes delivered_bytes = 0;
  for (const auto& p : m.packets) {
    if (!p.measured) continue;
    if (filter.direction && p.direction != *filter.direction) continue;
    if (filter.flow && p.flow_id != *filter.flow) continue;
    if (filter.from_us && p.arrival_time_us < *filter.from_us) continue;
    if (filter.to_us && p.arrival_time_us >= *filter.to_us) continue;
    ++s.arrivals;
    if (p.fate != PacketFate::kDelivered) continue;
    ++s.delivered;
    delivered_bytes += p.size_bytes;
    lat.push_back(static_cast<double>(*p.latency_us()));
  }
  if (s.arrivals > 0) s.plr = 1.0 - static_cast<double>(s.delivered) / static_cast<double>(s.arrivals);
  if (!lat.empty()) {
    std::sort(lat.begin(), lat.end());
    double sum = 0.0;
    for (double x : lat) sum += x;
    s.mean_us = sum / static_cast<double>(lat.size());
    const std::size_t n = lat.size();
    s.median_us = n % 2 == 1 ? lat[n / 2] : 0.5 * (lat[n / 2 - 1] + lat[n / 2]);
    const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(n)));
    s.p99_us = lat[std::max<std::size_t>(rank, 1) - 1];
  }
  const Micros from = filter.from_us.value_or(m.warmup_us);
  const Micros to = filter.to_us.value_or(m.duration_us);
  if (to > from) s.throughput_bps = static_cast<double>(delivered_bytes) * 1e6 / static_cast<double>(to - from);
  return s;
}

}  // namespace flexsim
