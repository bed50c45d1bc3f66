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

#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tcx {

using StateId = int;

enum class SignalKind : std::uint8_t { data, handshake };
enum class Role : std::uint8_t { initiator, target };
enum class Level : std::uint8_t { ca, pvt };

struct SignalDecl {
  std::string name;
  SignalKind kind = SignalKind::data;
  // Level at which a handshake signal counts as raised. Holding the signal
  // inactive means driving the opposite level.
  bool active_high = true;

  int active_level() const { return active_high ? 1 : 0; }
  int inactive_level() const { return active_high ? 0 : 1; }

  auto operator<=>(const SignalDecl&) const = default;
};

enum class ActionKind : std::uint8_t {
  drive_data,
  sample_data,
  drive_level,
  require_level,
  begin_call_send,
  begin_call_receive,
  payload_send,
  payload_receive,
  end_call_send,
  end_call_receive,
  delay_send,
  delay_receive,
  response_send,
  response_receive,
  // Only produced by apply_delay_consumption; neither has a complement.
  consume_delay_cycle,
  delay_elapsed,
};

struct Action {
  ActionKind kind = ActionKind::drive_data;
  std::string signal;  // signal-class actions only
  int level = 0;       // drive_level / require_level only

  static Action drive_data(std::string signal) {
    return {ActionKind::drive_data, std::move(signal), 0};
  }
  static Action sample_data(std::string signal) {
    return {ActionKind::sample_data, std::move(signal), 0};
  }
  static Action drive_level(std::string signal, int level) {
    return {ActionKind::drive_level, std::move(signal), level};
  }
  static Action require_level(std::string signal, int level) {
    return {ActionKind::require_level, std::move(signal), level};
  }
  static Action of(ActionKind kind) { return {kind, {}, 0}; }

  bool is_signal_action() const;
  bool is_level_action() const;
  bool is_data_action() const;
  bool is_call_action() const;   // call/payload/delay/response classes
  bool is_delay_control() const;  // consume_delay_cycle / delay_elapsed

  auto operator<=>(const Action&) const = default;
};

// DSL spelling, e.g. "HREADY!1", "HADDR?", "begin_call!", "consume_delay".
std::string to_string(const Action& action);

// '!' <-> '?' inversion. Empty for the delay-control kinds.
std::optional<Action> complement(const Action& action);

struct Transition {
  StateId from = 0;
  StateId to = 0;
  std::vector<Action> actions;

  bool is_self_loop() const { return from == to; }
  bool has(ActionKind kind) const;

  auto operator<=>(const Transition&) const = default;
};

std::string to_string(const Transition& transition);

// A protocol interface as an action-labelled state graph. Values produced by
// this library are canonical: signals sorted by name, states ascending,
// transitions sorted by (from, to, actions) with exact duplicates removed.
struct InterfaceFsm {
  std::string name;
  Role role = Role::initiator;
  Level level = Level::ca;
  std::int64_t clock_period_ns = 0;  // CA only
  std::vector<SignalDecl> signals;   // CA only
  std::vector<std::string> payload_fields;  // PVT only, declaration order
  std::set<StateId> states;
  StateId initial = 0;
  StateId final_state = 0;
  std::vector<Transition> transitions;

  const SignalDecl* find_signal(std::string_view signal) const;
  std::vector<const Transition*> outgoing(StateId state) const;
  std::size_t outdegree(StateId state) const;

  bool operator==(const InterfaceFsm&) const = default;
};

InterfaceFsm canonicalize(InterfaceFsm fsm);

std::string_view to_string(Role role);
std::string_view to_string(Level level);
std::string_view to_string(SignalKind kind);

struct Violation {
  std::string code;
  std::string message;
  std::optional<StateId> state;
  std::optional<std::size_t> transition;  // index into fsm.transitions
  std::optional<std::string> signal;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

ValidationReport validate(const InterfaceFsm& fsm);

// Inverts every action and flips the role. Throws FsmError "no-complement"
// when a delay-control action is present.
InterfaceFsm complement(const InterfaceFsm& fsm);

// The unique state whose transition into the final state raises a handshake
// signal. Throws FsmError "no-last-handshake" / "ambiguous-last-handshake".
StateId find_last_handshake_state(const InterfaceFsm& fsm);

// Converts the last handshake state into a delay consumption model: its
// self-loops are replaced by one loop that consumes a delay cycle while
// holding the handshake inactive, and every final-bound transition from it
// gains a delay-elapsed guard. Throws FsmError "already-transformed" when a
// consume loop exists.
InterfaceFsm apply_delay_consumption(const InterfaceFsm& fsm);

bool has_delay_consumption(const InterfaceFsm& fsm);

// Drops consume loops and delay-elapsed guards again. Used to build the
// conventional baseline from an already prepared target.
InterfaceFsm remove_delay_consumption(const InterfaceFsm& fsm);

// Removes every self-loop except those on the last handshake state. When the
// FSM has no (unique) last handshake state all self-loops go.
InterfaceFsm strip_self_loops(const InterfaceFsm& fsm);

// strip_self_loops followed by apply_delay_consumption for CA targets; PVT
// FSMs only get their self-loops stripped.
InterfaceFsm prepare_target(const InterfaceFsm& fsm);

}  // namespace tcx
