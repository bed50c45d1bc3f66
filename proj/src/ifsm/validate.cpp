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
#include <deque>
#include <map>

#include "tcx/ifsm.hpp"

namespace tcx {
namespace {

class Checker {
 public:
  explicit Checker(const InterfaceFsm& fsm) : fsm_(fsm) {}

  ValidationReport run() {
    check_header();
    check_declarations();
    check_states();
    check_actions();
    check_graph();
    check_determinism();
    return std::move(report_);
  }

 private:
  void add(std::string code, std::string message,
           std::optional<StateId> state = std::nullopt,
           std::optional<std::size_t> transition = std::nullopt,
           std::optional<std::string> signal = std::nullopt) {
    report_.violations.push_back({std::move(code), std::move(message), state,
                                  transition, std::move(signal)});
  }

  void check_header() {
    if (fsm_.level == Level::ca && fsm_.clock_period_ns <= 0) {
      add("clock-period-missing",
          "CA FSM '" + fsm_.name + "' needs a positive clock period");
    }
    if (fsm_.level == Level::pvt && fsm_.clock_period_ns != 0) {
      add("clock-period-forbidden-at-pvt",
          "PVT FSM '" + fsm_.name + "' must not declare a clock period");
    }
  }

  void check_declarations() {
    if (fsm_.level == Level::pvt) {
      for (const auto& s : fsm_.signals) {
        add("signal-forbidden-at-pvt", "PVT FSM declares signal '" + s.name + "'",
            std::nullopt, std::nullopt, s.name);
      }
    } else {
      for (const auto& f : fsm_.payload_fields) {
        add("field-forbidden-at-ca", "CA FSM declares payload field '" + f + "'");
      }
    }
    std::map<std::string, int> seen;
    for (const auto& s : fsm_.signals) {
      if (++seen[s.name] == 2) {
        add("duplicate-signal", "signal '" + s.name + "' declared twice",
            std::nullopt, std::nullopt, s.name);
      }
    }
    std::map<std::string, int> fields;
    for (const auto& f : fsm_.payload_fields) {
      if (++fields[f] == 2) add("duplicate-field", "field '" + f + "' declared twice");
    }
    if (fsm_.level == Level::ca && !fsm_.transitions.empty() &&
        std::none_of(fsm_.signals.begin(), fsm_.signals.end(), [](const SignalDecl& s) {
          return s.kind == SignalKind::handshake;
        })) {
      add("no-handshake-signal",
          "CA FSM '" + fsm_.name + "' declares no handshake signal");
    }
  }

  void check_states() {
    if (!fsm_.states.contains(fsm_.initial)) {
      add("initial-not-state",
          "initial state " + std::to_string(fsm_.initial) + " is not a state",
          fsm_.initial);
    }
    if (!fsm_.states.contains(fsm_.final_state)) {
      add("final-not-state",
          "final state " + std::to_string(fsm_.final_state) + " is not a state",
          fsm_.final_state);
    }
    for (std::size_t i = 0; i < fsm_.transitions.size(); ++i) {
      const auto& t = fsm_.transitions[i];
      for (StateId s : {t.from, t.to}) {
        if (!fsm_.states.contains(s)) {
          add("undeclared-state",
              "transition " + to_string(t) + " uses undeclared state " +
                  std::to_string(s),
              s, i);
        }
      }
      if (t.from == fsm_.final_state) {
        add("final-not-terminal",
            "final state " + std::to_string(fsm_.final_state) +
                " has outgoing transition " + to_string(t),
            t.from, i);
      }
    }
  }

  void check_actions() {
    for (std::size_t i = 0; i < fsm_.transitions.size(); ++i) {
      const auto& t = fsm_.transitions[i];
      if (t.actions.empty()) {
        add("empty-transition", "transition " + to_string(t) + " carries no action",
            t.from, i);
      }
      for (const auto& a : t.actions) check_action(t, i, a);
    }
  }

  void check_action(const Transition& t, std::size_t index, const Action& a) {
    const bool ca = fsm_.level == Level::ca;
    if (ca && a.is_call_action()) {
      add("action-level-mismatch",
          "CA transition " + to_string(t) + " uses transaction-level action '" +
              to_string(a) + "'",
          t.from, index);
      return;
    }
    if (!ca && !a.is_call_action()) {
      add("action-level-mismatch",
          "PVT transition " + to_string(t) + " uses signal-level action '" +
              to_string(a) + "'",
          t.from, index);
      return;
    }
    if (!a.is_signal_action()) return;
    const SignalDecl* decl = fsm_.find_signal(a.signal);
    if (decl == nullptr) {
      add("undeclared-signal",
          "transition " + to_string(t) + " references undeclared signal '" +
              a.signal + "'",
          t.from, index, a.signal);
      return;
    }
    if (a.is_level_action()) {
      if (a.level != 0 && a.level != 1) {
        add("invalid-level", "level " + std::to_string(a.level) + " on signal '" +
                                 a.signal + "' is not 0 or 1",
            t.from, index, a.signal);
      }
      if (decl->kind != SignalKind::handshake) {
        add("level-action-on-data-signal",
            "level action '" + to_string(a) + "' on data signal", t.from, index,
            a.signal);
      }
    } else if (decl->kind != SignalKind::data) {
      add("data-action-on-handshake-signal",
          "data action '" + to_string(a) + "' on handshake signal", t.from, index,
          a.signal);
    }
  }

  void check_graph() {
    std::map<StateId, std::vector<StateId>> forward;
    std::map<StateId, std::vector<StateId>> backward;
    for (const auto& t : fsm_.transitions) {
      forward[t.from].push_back(t.to);
      backward[t.to].push_back(t.from);
    }
    auto reach = [](StateId start, std::map<StateId, std::vector<StateId>>& edges) {
      std::set<StateId> seen{start};
      std::deque<StateId> queue{start};
      while (!queue.empty()) {
        StateId s = queue.front();
        queue.pop_front();
        for (StateId next : edges[s]) {
          if (seen.insert(next).second) queue.push_back(next);
        }
      }
      return seen;
    };
    const auto from_initial = reach(fsm_.initial, forward);
    const auto to_final = reach(fsm_.final_state, backward);
    for (StateId s : fsm_.states) {
      if (!from_initial.contains(s)) {
        add("unreachable-state",
            "state " + std::to_string(s) + " is unreachable from the initial state", s);
      } else if (!to_final.contains(s)) {
        add("dead-state",
            "state " + std::to_string(s) + " cannot reach the final state", s);
      }
    }
  }

  // Two transitions leaving one state may coexist only when some signal
  // level (required or driven) or the delay-control guard tells them apart.
  static bool distinguishable(const Transition& a, const Transition& b) {
    for (const auto& x : a.actions) {
      for (const auto& y : b.actions) {
        if (x.is_level_action() && y.is_level_action() && x.signal == y.signal &&
            x.level != y.level) {
          return true;
        }
        if (x.is_delay_control() && y.is_delay_control() && x.kind != y.kind) {
          return true;
        }
      }
    }
    return false;
  }

  void check_determinism() {
    const auto& ts = fsm_.transitions;
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        if (ts[i].from != ts[j].from) continue;
        if (!distinguishable(ts[i], ts[j])) {
          add("nondeterministic",
              "transitions " + to_string(ts[i]) + " and " + to_string(ts[j]) +
                  " have overlapping guards",
              ts[i].from, j);
        }
      }
    }
  }

  const InterfaceFsm& fsm_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate(const InterfaceFsm& fsm) { return Checker(fsm).run(); }

}  // namespace tcx
