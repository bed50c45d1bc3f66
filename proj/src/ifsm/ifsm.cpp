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
#include <sstream>

#include "tcx/error.hpp"
#include "tcx/ifsm.hpp"

namespace tcx {

bool Action::is_signal_action() const {
  return is_data_action() || is_level_action();
}

bool Action::is_level_action() const {
  return kind == ActionKind::drive_level || kind == ActionKind::require_level;
}

bool Action::is_data_action() const {
  return kind == ActionKind::drive_data || kind == ActionKind::sample_data;
}

bool Action::is_call_action() const {
  return !is_signal_action() && !is_delay_control();
}

bool Action::is_delay_control() const {
  return kind == ActionKind::consume_delay_cycle ||
         kind == ActionKind::delay_elapsed;
}

std::string to_string(const Action& action) {
  switch (action.kind) {
    case ActionKind::drive_data:
      return action.signal + "!";
    case ActionKind::sample_data:
      return action.signal + "?";
    case ActionKind::drive_level:
      return action.signal + "!" + std::to_string(action.level);
    case ActionKind::require_level:
      return action.signal + "?" + std::to_string(action.level);
    case ActionKind::begin_call_send:
      return "begin_call!";
    case ActionKind::begin_call_receive:
      return "begin_call?";
    case ActionKind::payload_send:
      return "payload!";
    case ActionKind::payload_receive:
      return "payload?";
    case ActionKind::end_call_send:
      return "end_call!";
    case ActionKind::end_call_receive:
      return "end_call?";
    case ActionKind::delay_send:
      return "delay!";
    case ActionKind::delay_receive:
      return "delay?";
    case ActionKind::response_send:
      return "response!";
    case ActionKind::response_receive:
      return "response?";
    case ActionKind::consume_delay_cycle:
      return "consume_delay";
    case ActionKind::delay_elapsed:
      return "delay_elapsed";
  }
  return "?";
}

std::optional<Action> complement(const Action& action) {
  Action out = action;
  switch (action.kind) {
    case ActionKind::drive_data: out.kind = ActionKind::sample_data; break;
    case ActionKind::sample_data: out.kind = ActionKind::drive_data; break;
    case ActionKind::drive_level: out.kind = ActionKind::require_level; break;
    case ActionKind::require_level: out.kind = ActionKind::drive_level; break;
    case ActionKind::begin_call_send:
      out.kind = ActionKind::begin_call_receive;
      break;
    case ActionKind::begin_call_receive:
      out.kind = ActionKind::begin_call_send;
      break;
    case ActionKind::payload_send: out.kind = ActionKind::payload_receive; break;
    case ActionKind::payload_receive: out.kind = ActionKind::payload_send; break;
    case ActionKind::end_call_send: out.kind = ActionKind::end_call_receive; break;
    case ActionKind::end_call_receive: out.kind = ActionKind::end_call_send; break;
    case ActionKind::delay_send: out.kind = ActionKind::delay_receive; break;
    case ActionKind::delay_receive: out.kind = ActionKind::delay_send; break;
    case ActionKind::response_send:
      out.kind = ActionKind::response_receive;
      break;
    case ActionKind::response_receive:
      out.kind = ActionKind::response_send;
      break;
    case ActionKind::consume_delay_cycle:
    case ActionKind::delay_elapsed:
      return std::nullopt;
  }
  return out;
}

bool Transition::has(ActionKind kind) const {
  return std::any_of(actions.begin(), actions.end(),
                     [kind](const Action& a) { return a.kind == kind; });
}

std::string to_string(const Transition& transition) {
  std::ostringstream out;
  out << transition.from << " -> " << transition.to << " :";
  for (std::size_t i = 0; i < transition.actions.size(); ++i) {
    out << (i == 0 ? " " : ", ") << to_string(transition.actions[i]);
  }
  return out.str();
}

const SignalDecl* InterfaceFsm::find_signal(std::string_view signal) const {
  for (const auto& decl : signals) {
    if (decl.name == signal) return &decl;
  }
  return nullptr;
}

std::vector<const Transition*> InterfaceFsm::outgoing(StateId state) const {
  std::vector<const Transition*> out;
  for (const auto& t : transitions) {
    if (t.from == state) out.push_back(&t);
  }
  return out;
}

std::size_t InterfaceFsm::outdegree(StateId state) const {
  return static_cast<std::size_t>(
      std::count_if(transitions.begin(), transitions.end(),
                    [state](const Transition& t) { return t.from == state; }));
}

InterfaceFsm canonicalize(InterfaceFsm fsm) {
  std::sort(fsm.signals.begin(), fsm.signals.end(),
            [](const SignalDecl& a, const SignalDecl& b) { return a.name < b.name; });
  std::sort(fsm.transitions.begin(), fsm.transitions.end());
  fsm.transitions.erase(
      std::unique(fsm.transitions.begin(), fsm.transitions.end()),
      fsm.transitions.end());
  fsm.states.insert(fsm.initial);
  fsm.states.insert(fsm.final_state);
  for (const auto& t : fsm.transitions) {
    fsm.states.insert(t.from);
    fsm.states.insert(t.to);
  }
  return fsm;
}

std::string_view to_string(Role role) {
  return role == Role::initiator ? "initiator" : "target";
}

std::string_view to_string(Level level) {
  return level == Level::ca ? "ca" : "pvt";
}

std::string_view to_string(SignalKind kind) {
  return kind == SignalKind::data ? "data" : "handshake";
}

bool ValidationReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [code](const Violation& v) { return v.code == code; });
}

InterfaceFsm complement(const InterfaceFsm& fsm) {
  InterfaceFsm out = fsm;
  out.role = fsm.role == Role::initiator ? Role::target : Role::initiator;
  for (auto& t : out.transitions) {
    for (auto& a : t.actions) {
      auto inverted = complement(a);
      if (!inverted) {
        throw FsmError("no-complement",
                       "action '" + to_string(a) + "' on transition " +
                           to_string(t) + " has no complement");
      }
      a = *inverted;
    }
  }
  return canonicalize(std::move(out));
}

}  // namespace tcx
