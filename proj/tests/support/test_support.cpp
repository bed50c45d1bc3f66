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

#include "test_support.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <stdexcept>

namespace tcx::testing {
namespace {

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }
bool coin(std::mt19937_64& rng) { return rng() % 2 == 0; }

InterfaceFsm checked(InterfaceFsm fsm) {
  fsm = canonicalize(std::move(fsm));
  const ValidationReport report = validate(fsm);
  if (!report.ok()) {
    throw std::logic_error("generator produced an invalid FSM: " +
                           report.violations.front().code + "\n" + serialize_fsm(fsm));
  }
  return fsm;
}

InterfaceFsm random_ca(std::mt19937_64& rng) {
  InterfaceFsm f;
  f.name = "ca" + std::to_string(below(rng, 1000));
  f.role = coin(rng) ? Role::initiator : Role::target;
  f.level = Level::ca;
  f.clock_period_ns = 5 * static_cast<std::int64_t>(1 + below(rng, 4));
  f.signals.push_back({"H", SignalKind::handshake, coin(rng)});
  const bool with_g = coin(rng);
  const bool with_d = coin(rng);
  const bool with_e = coin(rng);
  if (with_g) f.signals.push_back({"G", SignalKind::handshake, coin(rng)});
  if (with_d) f.signals.push_back({"D", SignalKind::data, true});
  if (with_e) f.signals.push_back({"E", SignalKind::data, true});
  const bool drive = f.role == Role::initiator;

  auto extras = [&](std::vector<Action>& actions) {
    if (with_g && below(rng, 3) == 0) {
      const int level = static_cast<int>(below(rng, 2));
      actions.push_back(drive ? Action::drive_level("G", level) : Action::require_level("G", level));
    }
    for (const char* sig : {"D", "E"}) {
      const bool declared = sig[0] == 'D' ? with_d : with_e;
      if (!declared || below(rng, 3) != 0) continue;
      actions.push_back(coin(rng) ? Action::drive_data(sig) : Action::sample_data(sig));
    }
    std::shuffle(actions.begin() + 1, actions.end(), rng);
  };

  const int k = static_cast<int>(below(rng, 6));
  f.initial = 0;
  f.final_state = k;
  for (int i = 0; i < k; ++i) {
    const int x = static_cast<int>(below(rng, 2));
    Transition spine{i, i + 1, {drive ? Action::drive_level("H", x) : Action::require_level("H", x)}};
    extras(spine.actions);
    f.transitions.push_back(spine);
    if (below(rng, 3) == 0) {
      const int to = static_cast<int>(below(rng, static_cast<std::uint64_t>(k)));
      if (to == i + 1) continue;
      Transition side{i, to, {drive ? Action::drive_level("H", 1 - x)
                                    : Action::require_level("H", 1 - x)}};
      extras(side.actions);
      f.transitions.push_back(side);
    }
  }
  return checked(std::move(f));
}

InterfaceFsm random_pvt(std::mt19937_64& rng) {
  static const ActionKind kinds[] = {
      ActionKind::begin_call_send,  ActionKind::begin_call_receive, ActionKind::payload_send,
      ActionKind::payload_receive,  ActionKind::end_call_send,      ActionKind::end_call_receive,
      ActionKind::delay_send,       ActionKind::delay_receive,      ActionKind::response_send,
      ActionKind::response_receive,
  };
  InterfaceFsm f;
  f.name = "pvt" + std::to_string(below(rng, 1000));
  f.role = coin(rng) ? Role::initiator : Role::target;
  f.level = Level::pvt;
  for (const char* field : {"addr", "data", "len"}) {
    if (coin(rng) || f.payload_fields.empty()) f.payload_fields.push_back(field);
  }
  const int k = static_cast<int>(below(rng, 5));
  f.initial = 0;
  f.final_state = k;
  for (int i = 0; i < k; ++i) {
    Transition t{i, i + 1, {}};
    const int n = 1 + static_cast<int>(below(rng, 3));
    for (int j = 0; j < n; ++j) {
      Action a = Action::of(kinds[below(rng, std::size(kinds))]);
      if (std::find(t.actions.begin(), t.actions.end(), a) == t.actions.end()) {
        t.actions.push_back(a);
      }
    }
    f.transitions.push_back(t);
  }
  return checked(std::move(f));
}

}  // namespace

InterfaceFsm random_fsm(std::mt19937_64& rng) {
  return below(rng, 3) == 0 ? random_pvt(rng) : random_ca(rng);
}

RandomProtocol random_protocol(std::mt19937_64& rng) {
  RandomProtocol out;
  out.beats = static_cast<int>(below(rng, 4));
  out.read = out.beats > 0 && coin(rng);
  const bool high = coin(rng);
  const int on = high ? 1 : 0;
  const int off = 1 - on;
  const std::string bus = out.read ? "HRDATA" : "HWDATA";

  InterfaceFsm m;
  m.name = out.read ? "rd" : "wr";
  m.role = Role::initiator;
  m.level = Level::ca;
  m.clock_period_ns = std::vector<std::int64_t>{5, 10, 20}[below(rng, 3)];
  m.signals = {{"HADDR", SignalKind::data, true},
               {"HREADY", SignalKind::handshake, high},
               {"HTRANS", SignalKind::handshake, true}};
  if (out.beats > 0) m.signals.push_back({bus, SignalKind::data, true});
  m.initial = 0;
  m.transitions.push_back({0, 1, {Action::drive_level("HTRANS", 1), Action::drive_data("HADDR")}});
  StateId s = 1;
  for (int b = 0; b < out.beats; ++b, ++s) {
    m.transitions.push_back(
        {s, s + 1,
         {Action::require_level("HREADY", on),
          out.read ? Action::sample_data(bus) : Action::drive_data(bus)}});
    if (coin(rng)) m.transitions.push_back({s, s, {Action::require_level("HREADY", off)}});
  }
  m.transitions.push_back({s, s + 1, {Action::drive_level("HTRANS", 0)}});
  ++s;
  // The final handshake must be able to wait, or a long call could never be matched.
  m.transitions.push_back({s, s, {Action::require_level("HREADY", off)}});
  m.transitions.push_back({s, s + 1, {Action::require_level("HREADY", on)}});
  m.final_state = s + 1;
  out.ca_initiator = checked(std::move(m));

  InterfaceFsm p;
  p.name = "pvt";
  p.role = Role::target;
  p.level = Level::pvt;
  p.payload_fields = {"addr"};
  if (out.beats > 0) p.payload_fields.push_back("data");
  p.initial = 0;
  p.final_state = 2;
  p.transitions = {
      {0, 1, {Action::of(ActionKind::begin_call_receive), Action::of(ActionKind::payload_receive)}},
      {1, 2,
       {Action::of(ActionKind::end_call_send), Action::of(ActionKind::delay_send),
        Action::of(ActionKind::response_send)}},
  };
  out.pvt_target = checked(std::move(p));

  out.mapping.name = "L";
  out.mapping.entries.push_back({"addr", std::nullopt, "HADDR"});
  for (int b = 0; b < out.beats; ++b) out.mapping.entries.push_back({"data", b, bus});
  return out;
}

std::string random_text(std::mt19937_64& rng, std::size_t max_len) {
  static const std::vector<std::string> words = {
      "ifsm", "v1", "fsm", "role", "level", "ca", "pvt", "initiator", "target", "clock_period",
      "ns", "signal", "field", "data", "handshake", "active", "high", "low", "initial", "final",
      "on", "map", "tfsm", "transactor", "side", "T", "I", "bound", "begin_call", "payload",
      "delay", "consume_delay", "HREADY", "HADDR", "{", "}", "(", ")", "[", "]", ";", ":", ",",
      "=", "->", "<-", "!", "?", "0", "1", "7", "99999999999999999999", "#", "\n", "@", "\t"};
  std::string out;
  const std::size_t len = below(rng, max_len + 1);
  while (out.size() < len) {
    if (below(rng, 4) == 0) {
      out += static_cast<char>(below(rng, 256));
    } else {
      out += words[below(rng, words.size())];
      out += below(rng, 3) == 0 ? "" : " ";
    }
  }
  return out;
}

std::string mutate(std::mt19937_64& rng, const std::string& text, int edits) {
  std::string out = text;
  for (int i = 0; i < edits && !out.empty(); ++i) {
    const std::size_t pos = below(rng, out.size());
    const std::size_t len = 1 + below(rng, std::min<std::size_t>(12, out.size() - pos));
    switch (below(rng, 4)) {
      case 0: out.erase(pos, len); break;
      case 1: out.insert(pos, out.substr(pos, len)); break;
      case 2: std::swap(out[pos], out[below(rng, out.size())]); break;
      default: out.insert(pos, 1, "{};:,=!?()[]-<>#0123456789xX\n "[below(rng, 30)]); break;
    }
  }
  return out;
}

std::set<StateId> bfs_reachable(const InterfaceFsm& fsm, StateId from) {
  std::set<StateId> seen{from};
  std::deque<StateId> queue{from};
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (const auto& t : fsm.transitions) {
      if (t.from == s && seen.insert(t.to).second) queue.push_back(t.to);
    }
  }
  return seen;
}

std::set<StatePair> live_pairs(const TransactorFsm& g) {
  auto search = [&](StatePair start, bool forward) {
    std::set<StatePair> seen{start};
    std::vector<StatePair> stack{start};
    while (!stack.empty()) {
      const StatePair s = stack.back();
      stack.pop_back();
      for (const auto& t : g.transitions) {
        const StatePair a = forward ? t.from : t.to;
        const StatePair b = forward ? t.to : t.from;
        if (a == s && seen.insert(b).second) stack.push_back(b);
      }
    }
    return seen;
  };
  const auto fwd = search(g.initial_pair, true);
  const auto bwd = search(g.final_pair, false);
  std::set<StatePair> out;
  std::set_intersection(fwd.begin(), fwd.end(), bwd.begin(), bwd.end(),
                        std::inserter(out, out.end()));
  return out;
}

namespace {

// Path state of the oracle replay.
struct Replay {
  std::size_t next = 0;
  bool got_payload = false;
  bool got_response = false;
  bool got_delay = false;
  bool open = false;
};

}  // namespace

std::vector<ProductPath> legal_product_paths(const InterfaceFsm& target,
                                             const InterfaceFsm& initiator,
                                             const PayloadMapping& mapping,
                                             bool require_delay_consumption, std::size_t limit) {
  std::set<std::string> sampled;
  for (const InterfaceFsm* f : {&target, &initiator}) {
    for (const auto& t : f->transitions) {
      for (const auto& a : t.actions) {
        if (a.kind == ActionKind::sample_data) sampled.insert(a.signal);
      }
    }
  }
  const auto& L = mapping.entries;
  auto mapped = [&](const std::string& sig) {
    return std::any_of(L.begin(), L.end(), [&](const MappingEntry& e) { return e.signal == sig; });
  };

  auto fire = [&](StatePair at, Side side, const Transition& t, Replay r) -> std::optional<Replay> {
    const bool other_final =
        side == Side::target ? at.q == initiator.final_state : at.p == target.final_state;
    for (const auto& a : t.actions) {
      switch (a.kind) {
        case ActionKind::sample_data:
        case ActionKind::drive_data:
          if (!mapped(a.signal)) break;
          if (r.next >= L.size() || L[r.next].signal != a.signal) return std::nullopt;
          if (a.kind == ActionKind::drive_data && !r.got_payload && !r.got_response) {
            return std::nullopt;
          }
          ++r.next;
          break;
        case ActionKind::payload_send:
        case ActionKind::response_send:
          for (std::size_t j = r.next; j < L.size(); ++j) {
            if (sampled.contains(L[j].signal)) return std::nullopt;
          }
          break;
        case ActionKind::payload_receive: r.got_payload = true; break;
        case ActionKind::response_receive: r.got_response = true; break;
        case ActionKind::delay_receive: r.got_delay = true; break;
        case ActionKind::begin_call_send: r.open = true; break;
        case ActionKind::end_call_receive: r.open = false; break;
        case ActionKind::delay_send:
          if (!other_final) return std::nullopt;
          break;
        case ActionKind::consume_delay_cycle:
        case ActionKind::delay_elapsed:
          if (!r.got_delay) return std::nullopt;
          break;
        default: break;
      }
    }
    if (side == Side::target && t.to == target.final_state && t.from != t.to) {
      if (target.level == Level::pvt) {
        if (!other_final) return std::nullopt;
      } else {
        if (!r.got_delay) return std::nullopt;
        if (require_delay_consumption && !t.has(ActionKind::delay_elapsed)) return std::nullopt;
      }
    }
    return r;
  };

  const StatePair start{target.initial, initiator.initial};
  const StatePair goal{target.final_state, initiator.final_state};
  std::vector<ProductPath> out;
  ProductPath path;
  std::set<StatePair> on_path{start};
  std::size_t budget = limit;
  std::function<void(StatePair, const Replay&)> walk = [&](StatePair at, const Replay& r) {
    if (budget == 0) return;
    --budget;
    if (at == goal) {
      if (!r.open) out.push_back(path);
      return;
    }
    for (Side side : {Side::target, Side::initiator}) {
      const InterfaceFsm& f = side == Side::target ? target : initiator;
      const StateId here = side == Side::target ? at.p : at.q;
      for (const auto& t : f.transitions) {
        if (t.from != here || t.is_self_loop()) continue;
        const StatePair next = side == Side::target ? StatePair{t.to, at.q} : StatePair{at.p, t.to};
        if (on_path.contains(next)) continue;
        auto after = fire(at, side, t, r);
        if (!after) continue;
        path.push_back({at, next, side, t});
        on_path.insert(next);
        walk(next, *after);
        on_path.erase(next);
        path.pop_back();
      }
    }
  };
  walk(start, Replay{});
  return out;
}

std::vector<std::vector<TransactorTransition>> transactor_paths(const TransactorFsm& g) {
  std::vector<std::vector<TransactorTransition>> out;
  std::vector<TransactorTransition> path;
  std::set<StatePair> on_path{g.initial_pair};
  std::function<void(StatePair)> walk = [&](StatePair at) {
    if (at == g.final_pair) {
      out.push_back(path);
      return;
    }
    for (const auto& t : g.transitions) {
      if (t.from != at || t.is_self_loop() || on_path.contains(t.to)) continue;
      path.push_back(t);
      on_path.insert(t.to);
      walk(t.to);
      on_path.erase(t.to);
      path.pop_back();
    }
  };
  walk(g.initial_pair);
  return out;
}

bool per_component_monotone(const SimTrace& trace) {
  std::map<std::string, TimeNs> last;
  for (const auto& e : trace.events) {
    auto [it, fresh] = last.try_emplace(e.component, e.time_ns);
    if (!fresh && e.time_ns < it->second) return false;
    it->second = e.time_ns;
  }
  return true;
}

}  // namespace tcx::testing
