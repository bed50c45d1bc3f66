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
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tcx/dsl.hpp"
#include "tcx/ifsm.hpp"

namespace tcx {

// Which of the two composed FSMs a transactor transition advances: the
// target-side FSM T (p component) or the initiator-side FSM I (q component).
enum class Side : std::uint8_t { target, initiator };

std::string_view to_string(Side side);  // "T" / "I"

struct StatePair {
  StateId p = 0;  // state of T
  StateId q = 0;  // state of I

  auto operator<=>(const StatePair&) const = default;
};

std::string to_string(StatePair pair);  // "(p,q)"

// What the transactor has done so far along one search path.
struct LegalityContext {
  std::size_t bound = 0;  // mapping entries bound so far, in mapping order
  bool payload_sent = false;
  bool payload_received = false;
  bool response_sent = false;
  bool response_received = false;
  bool delay_received = false;
  bool delay_sent = false;
  bool call_open = false;  // outgoing call issued and not yet ended

  std::vector<MappingEntry> bound_fields(const PayloadMapping& mapping) const;
  auto operator<=>(const LegalityContext&) const = default;
};

// The parts of a side FSM the transactor needs at run time.
struct SideInfo {
  std::string name;
  Role role = Role::target;
  Level level = Level::ca;
  std::int64_t clock_period_ns = 0;
  std::vector<SignalDecl> signals;
  std::vector<std::string> payload_fields;
  StateId initial = 0;
  StateId final_state = 0;

  bool operator==(const SideInfo&) const = default;
};

SideInfo describe_side(const InterfaceFsm& fsm);

struct TransactorTransition {
  StatePair from;
  StatePair to;
  Side side = Side::target;
  std::vector<Action> actions;
  LegalityContext context;  // snapshot before this transition fires

  bool is_self_loop() const { return from == to; }
  // The side-local transition this step executes.
  Transition step() const;
  auto operator<=>(const TransactorTransition&) const = default;
};

struct TransactorFsm {
  std::string name;
  SideInfo target;
  SideInfo initiator;
  PayloadMapping mapping;
  StatePair initial_pair;
  StatePair final_pair;
  std::vector<TransactorTransition> transitions;  // sorted

  std::set<StatePair> pairs() const;
  std::vector<const TransactorTransition*> outgoing(StatePair pair) const;
  const SideInfo& side(Side s) const { return s == Side::target ? target : initiator; }

  bool operator==(const TransactorFsm&) const = default;
};

struct SynthOptions {
  // Final-bound CA target transitions must carry the delay-elapsed guard
  // inserted by apply_delay_consumption. Turned off only for the
  // conventional baseline.
  bool require_delay_consumption = true;
};

// One DFS expansion: how many candidate transitions were examined against
// the out-degrees of p in T and q in I.
struct StepRecord {
  StatePair pair;
  std::size_t examined = 0;
  std::size_t target_outdegree = 0;
  std::size_t initiator_outdegree = 0;
};

struct SynthStats {
  std::size_t expansions = 0;
  std::size_t pushes = 0;
  std::size_t revisits = 0;
  std::size_t pruned_pairs = 0;
  std::vector<StepRecord> steps;

  std::size_t max_examined() const;
  bool within_bound() const;  // examined <= n + m on every step
};

// Inputs of one synthesis run plus derived lookups.
class SynthesisProblem {
 public:
  SynthesisProblem(InterfaceFsm target, InterfaceFsm initiator, PayloadMapping mapping,
                   SynthOptions options = {});

  const InterfaceFsm& target() const { return target_; }
  const InterfaceFsm& initiator() const { return initiator_; }
  const InterfaceFsm& fsm(Side side) const {
    return side == Side::target ? target_ : initiator_;
  }
  const PayloadMapping& mapping() const { return mapping_; }
  const SynthOptions& options() const { return options_; }
  StatePair initial_pair() const { return {target_.initial, initiator_.initial}; }
  StatePair final_pair() const { return {target_.final_state, initiator_.final_state}; }

  // Entry i is collected when the transactor samples its signal from the CA
  // bus (it must reach the PVT side), distributed when it drives it.
  bool collected(std::size_t entry) const { return collected_.at(entry); }

 private:
  InterfaceFsm target_;
  InterfaceFsm initiator_;
  PayloadMapping mapping_;
  SynthOptions options_;
  std::vector<bool> collected_;
};

// Payload correctness of firing `t` (a transition of `side` leaving the
// pair's state on that side) in context `ctx`.
bool check_data_legality(const SynthesisProblem& problem, StatePair pair, Side side,
                         const Transition& t, const LegalityContext& ctx);

// Timing coherence of firing `t`: no transaction boundary before the
// transaction time is known.
bool check_timing_legality(const SynthesisProblem& problem, StatePair pair, Side side,
                           const Transition& t, const LegalityContext& ctx);

// Context after firing `t`. Assumes check_data_legality holds.
LegalityContext advance_context(const SynthesisProblem& problem, Side side,
                                const Transition& t, LegalityContext ctx);

// DFS over state pairs, emitting only legal single-sided transitions. T is
// expected to have gone through prepare_target when it is CA level. Throws
// SynthesisError ("no-legal-transactor", "invalid-input", ...).
TransactorFsm generate_transactor(const InterfaceFsm& target, const InterfaceFsm& initiator,
                                  const PayloadMapping& mapping, SynthOptions options = {},
                                  SynthStats* stats = nullptr);

// Keeps only pairs on some initial -> final path. Throws "empty-after-prune".
TransactorFsm prune_dead_states(const TransactorFsm& g);

// Post-hoc re-verification. Returns one message per problem found: a
// transition that is not single-sided, fails a legality check under its
// recorded context, or breaks legality when replayed along a path.
std::vector<std::string> verify_transactor(const TransactorFsm& g,
                                           const SynthesisProblem& problem);

std::string serialize_transactor(const TransactorFsm& g);
TransactorFsm parse_transactor(std::string_view text);

}  // namespace tcx
