// Copyright 2026 The tcx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <utility>

#include "../common/hash.hpp"
#include "tcx/error.hpp"
#include "tcx/simkernel.hpp"

namespace tcx {
namespace {

std::vector<Action> sorted_signal_actions(const std::vector<Action>& actions, bool invert) {
  std::vector<Action> out;
  for (const auto& a : actions) {
    if (a.is_signal_action()) out.push_back(invert ? *complement(a) : a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Action> sorted_call_actions(const std::vector<Action>& actions, bool invert) {
  std::vector<Action> out;
  for (const auto& a : actions) {
    if (a.is_call_action()) out.push_back(invert ? *complement(a) : a);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// The master transition whose signal actions are the mirror image of `peer`.
const Transition* lockstep_partner(const InterfaceFsm& master, StateId m,
                                   const std::vector<Action>& peer) {
  const auto wanted = sorted_signal_actions(peer, true);
  for (const Transition* t : master.outgoing(m)) {
    if (sorted_signal_actions(t->actions, false) == wanted) return t;
  }
  return nullptr;
}

const Transition* call_partner(const InterfaceFsm& slave, StateId s,
                               const std::vector<Action>& peer) {
  const auto wanted = sorted_call_actions(peer, true);
  for (const Transition* t : slave.outgoing(s)) {
    if (sorted_call_actions(t->actions, false) == wanted) return t;
  }
  return nullptr;
}

// State and bookkeeping shared by all transfers of one run.
class Simulator {
 public:
  Simulator(const ChannelSet& channels, const WorkloadSpec& workload, const DelayModel& delays,
            const SimOptions& options)
      : channels_(channels), workload_(workload), delays_(delays), options_(options) {
    if (!options_.delay_ns) delays_.check();
    const TimeNs period = channels_.write.master.clock_period_ns;
    if (channels_.read && channels_.read->master.clock_period_ns != period) {
      throw SimulationError("invalid-channel", "read and write masters use different clocks");
    }
    if (period <= 0) throw SimulationError("invalid-channel", "master must be a CA FSM");
    ca_ = {"ca", 0, period};
    pvt_ = {"pvt", 0, 0};
  }

  SimTrace run() {
    for (std::uint64_t txn = 0; txn < workload_.transfers.size(); ++txn) {
      const Transfer& tr = workload_.transfers[txn];
      const Channel& ch = channels_.for_kind(tr.kind);
      if (tr.idle_gap_cycles > 0) {
        ca_ = advance_local_clock(ca_, tr.idle_gap_cycles);
        log(ca_.now_ns, "master", "idle " + std::to_string(tr.idle_gap_cycles) + " cycles");
      }
      if (ch.transactor) {
        run_mixed(ch, txn, tr);
      } else {
        run_pure_ca(ch, txn, tr);
      }
    }
    std::sort(trace_.records.begin(), trace_.records.end());
    return std::move(trace_);
  }

 private:
  void log(TimeNs t, std::string component, std::string description) {
    trace_.events.push_back({t, std::move(component), std::move(description)});
  }

  TimeNs delay_for(std::uint64_t txn) {
    const TimeNs period = ca_.period_ns;
    if (!options_.delay_ns) return delays_.delay_cycles(txn) * period;
    const TimeNs raw = options_.delay_ns(txn);
    if (raw < 0) {
      throw SimulationError("invalid-delay", "negative delay " + std::to_string(raw) + " ns",
                            txn);
    }
    if (raw % period == 0) return raw;
    if (options_.strict_alignment) {
      throw SimulationError("delay-not-cycle-multiple",
                            "delay " + std::to_string(raw) + " ns is not a multiple of " +
                                std::to_string(period) + " ns",
                            txn);
    }
    const TimeNs rounded = (raw / period + 1) * period;
    log(ca_.now_ns, "kernel",
        "txn " + std::to_string(txn) + ": delay " + std::to_string(raw) +
            " ns rounded up to " + std::to_string(rounded) + " ns");
    return rounded;
  }

  void check_budget(std::int64_t& cycles, std::uint64_t txn) const {
    if (++cycles > options_.max_cycles_per_transfer) {
      throw SimulationError("protocol-deadlock",
                            "transfer exceeded " +
                                std::to_string(options_.max_cycles_per_transfer) + " cycles",
                            txn);
    }
  }

  [[noreturn]] static void deadlock(std::uint64_t txn, const std::string& where) {
    throw SimulationError("protocol-deadlock",
                          "txn " + std::to_string(txn) + ": no enabled transition at " + where,
                          txn);
  }

  // Hold cycles left at the last handshake state, computed on first use.
  bool delay_guard_allows(const std::vector<Action>& actions, std::optional<std::int64_t>& remaining,
                          bool delay_known, TimeNs begin, TimeNs delay, std::uint64_t txn) {
    const bool consume =
        std::any_of(actions.begin(), actions.end(),
                    [](const Action& a) { return a.kind == ActionKind::consume_delay_cycle; });
    const bool elapsed = std::any_of(actions.begin(), actions.end(), [](const Action& a) {
      return a.kind == ActionKind::delay_elapsed;
    });
    if (!consume && !elapsed) return true;
    if (!delay_known) return false;
    if (!remaining) {
      try {
        remaining = wrap_clock_for_call(begin, delay, ca_.now_ns + ca_.period_ns, ca_.period_ns)
                        .hold_cycles;
      } catch (const SimulationError& e) {
        throw SimulationError(e.code(), "txn " + std::to_string(txn) + ": " + e.what(), txn);
      }
      if (*remaining > 0) {
        log(ca_.now_ns, "transactor",
            "hold handshake for " + std::to_string(*remaining) + " extra cycles");
      }
    }
    if (consume && *remaining <= 0) return false;
    if (elapsed && *remaining != 0) return false;
    return true;
  }

  void run_mixed(const Channel& ch, std::uint64_t txn, const Transfer& tr) {
    const TransactorFsm& g = *ch.transactor;
    const InterfaceFsm& master = ch.master;
    const InterfaceFsm& slave = ch.slave;
    const auto& entries = g.mapping.entries;
    const bool coherent = options_.mode == TimingMode::coherent;
    const TimeNs delay = delay_for(txn);
    const TimeNs begin = ca_.now_ns;

    StateId m = master.initial;
    StateId s = slave.initial;
    StatePair pair = g.initial_pair;
    std::size_t bound = 0;
    std::uint64_t beat = 0;
    std::vector<std::uint64_t> entry_values(entries.size(), 0);
    std::vector<std::uint64_t> ca_values;
    std::vector<std::uint64_t> pvt_values;
    std::optional<std::int64_t> remaining;
    bool delay_known = false;
    std::optional<TimeNs> pvt_begin;
    TimeNs pvt_end = 0;
    std::int64_t cycles = 0;
    log(begin, "master", "txn " + std::to_string(txn) + " begins (" +
                             std::string(to_string(tr.kind)) + ")");

    while (true) {
      // Transactor <-> PVT exchanges take no CA time.
      for (bool fired = true; fired;) {
        fired = false;
        for (const TransactorTransition* t : g.outgoing(pair)) {
          if (t->side != Side::initiator || t->is_self_loop()) continue;
          const Transition* st = call_partner(slave, s, t->actions);
          if (!st) continue;
          log(ca_.now_ns, "transactor", to_string(t->from) + " -> " + to_string(t->to) + " I");
          if (t->step().has(ActionKind::delay_receive)) {
            delay_known = true;
            pvt_end = pvt_begin.value_or(begin) + delay;
          }
          for (const auto& a : t->actions) {
            switch (a.kind) {
              case ActionKind::begin_call_send:
                pvt_begin = coherent ? begin : std::max(ca_.now_ns, pvt_.now_ns);
                pvt_.now_ns = *pvt_begin;
                log(pvt_.now_ns, "slave", "txn " + std::to_string(txn) + " call begins");
                break;
              case ActionKind::payload_send:
                pvt_values.assign(entry_values.begin(),
                                  entry_values.begin() + static_cast<std::ptrdiff_t>(bound));
                break;
              case ActionKind::response_receive:
                for (std::size_t i = pvt_values.size(); i < entries.size(); ++i) {
                  entry_values[i] = detail::beat_value(tr.payload_digest, i);
                  pvt_values.push_back(entry_values[i]);
                }
                break;
              case ActionKind::end_call_receive:
                pvt_.now_ns = std::max(pvt_.now_ns, pvt_end);
                log(pvt_.now_ns, "slave",
                    "txn " + std::to_string(txn) + " call returns, delay " +
                        std::to_string(delay) + " ns");
                break;
              default:
                break;
            }
          }
          pair = t->to;
          s = st->to;
          fired = true;
          break;
        }
      }
      if (pair == g.final_pair && m == master.final_state) break;

      const TransactorTransition* chosen = nullptr;
      const Transition* partner = nullptr;
      for (const TransactorTransition* t : g.outgoing(pair)) {
        if (t->side != Side::target) continue;
        if (!delay_guard_allows(t->actions, remaining, delay_known, begin, delay, txn)) continue;
        if (const Transition* mt = lockstep_partner(master, m, t->actions)) {
          chosen = t;
          partner = mt;
          break;
        }
      }
      if (!chosen) {
        deadlock(txn, "master state " + std::to_string(m) + ", transactor " + to_string(pair));
      }
      for (const auto& a : chosen->actions) {
        if (!a.is_data_action()) continue;
        const bool mapped = g.mapping.maps(a.signal);
        std::uint64_t v = 0;
        if (a.kind == ActionKind::sample_data) {
          v = detail::beat_value(tr.payload_digest, beat);
          if (mapped && bound < entries.size()) entry_values[bound++] = v;
        } else if (mapped && bound < entries.size()) {
          v = entry_values[bound++];
        }
        ++beat;
        ca_values.push_back(v);
      }
      if (std::any_of(chosen->actions.begin(), chosen->actions.end(), [](const Action& a) {
            return a.kind == ActionKind::consume_delay_cycle;
          })) {
        --*remaining;
      }
      log(ca_.now_ns, "master", std::to_string(m) + " -> " + std::to_string(partner->to));
      log(ca_.now_ns, "transactor",
          to_string(chosen->from) + " -> " + to_string(chosen->to) + " T");
      ca_ = advance_local_clock(ca_, 1);
      m = partner->to;
      pair = chosen->to;
      check_budget(cycles, txn);
    }

    if (!pvt_begin || s != slave.final_state) {
      deadlock(txn, "slave state " + std::to_string(s) + " (call never completed)");
    }
    log(ca_.now_ns, "master", "txn " + std::to_string(txn) + " ends");
    trace_.records.push_back({txn, RecordSide::ca, begin, ca_.now_ns, detail::fnv1a(ca_values)});
    trace_.records.push_back(
        {txn, RecordSide::pvt, *pvt_begin, pvt_end, detail::fnv1a(pvt_values)});
  }

  void run_pure_ca(const Channel& ch, std::uint64_t txn, const Transfer& tr) {
    const InterfaceFsm& master = ch.master;
    const InterfaceFsm& slave = ch.slave;
    const TimeNs delay = delay_for(txn);
    const TimeNs begin = ca_.now_ns;
    StateId m = master.initial;
    StateId s = slave.initial;
    std::uint64_t beat = 0;
    std::vector<std::uint64_t> values;
    std::optional<std::int64_t> remaining;
    std::int64_t cycles = 0;
    log(begin, "master", "txn " + std::to_string(txn) + " begins (" +
                             std::string(to_string(tr.kind)) + ")");
    while (!(m == master.final_state && s == slave.final_state)) {
      const Transition* chosen = nullptr;
      const Transition* partner = nullptr;
      for (const Transition* st : slave.outgoing(s)) {
        if (!delay_guard_allows(st->actions, remaining, true, begin, delay, txn)) continue;
        if (const Transition* mt = lockstep_partner(master, m, st->actions)) {
          chosen = st;
          partner = mt;
          break;
        }
      }
      if (!chosen) {
        deadlock(txn, "master state " + std::to_string(m) + ", slave state " + std::to_string(s));
      }
      for (const auto& a : chosen->actions) {
        if (!a.is_data_action()) continue;
        values.push_back(detail::beat_value(tr.payload_digest, beat++));
      }
      if (chosen->has(ActionKind::consume_delay_cycle)) --*remaining;
      log(ca_.now_ns, "master", std::to_string(m) + " -> " + std::to_string(partner->to));
      log(ca_.now_ns, "slave", std::to_string(s) + " -> " + std::to_string(chosen->to));
      ca_ = advance_local_clock(ca_, 1);
      m = partner->to;
      s = chosen->to;
      check_budget(cycles, txn);
    }
    log(ca_.now_ns, "master", "txn " + std::to_string(txn) + " ends");
    const std::uint64_t digest = detail::fnv1a(values);
    trace_.records.push_back({txn, RecordSide::ca, begin, ca_.now_ns, digest});
    trace_.records.push_back({txn, RecordSide::pvt, begin, ca_.now_ns, digest});
  }

  const ChannelSet& channels_;
  const WorkloadSpec& workload_;
  DelayModel delays_;
  const SimOptions& options_;
  LocalClock ca_;
  LocalClock pvt_;
  SimTrace trace_;
};

}  // namespace

SimTrace run_cosimulation(const ChannelSet& channels, const WorkloadSpec& workload,
                          const DelayModel& delays, const SimOptions& options) {
  return Simulator(channels, workload, delays, options).run();
}

SimTrace run_cosimulation(const InterfaceFsm& master, const TransactorFsm& transactor,
                          const InterfaceFsm& slave, const WorkloadSpec& workload,
                          const DelayModel& delays, const SimOptions& options) {
  ChannelSet channels{{master, transactor, slave}, std::nullopt};
  return run_cosimulation(channels, workload, delays, options);
}

SimTrace run_reference(const InterfaceFsm& master, const InterfaceFsm& slave,
                       const WorkloadSpec& workload, const DelayModel& delays,
                       const SimOptions& options) {
  ChannelSet channels{{master, std::nullopt, slave}, std::nullopt};
  return run_cosimulation(channels, workload, delays, options);
}

}  // namespace tcx
