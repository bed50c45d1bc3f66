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
#include <utility>

#include "tcx/error.hpp"
#include "tcx/synth.hpp"

namespace tcx {

std::string_view to_string(Side side) { return side == Side::target ? "T" : "I"; }

std::string to_string(StatePair pair) {
  return "(" + std::to_string(pair.p) + "," + std::to_string(pair.q) + ")";
}

SideInfo describe_side(const InterfaceFsm& fsm) {
  return {fsm.name,    fsm.role,           fsm.level,   fsm.clock_period_ns,
          fsm.signals, fsm.payload_fields, fsm.initial, fsm.final_state};
}

Transition TransactorTransition::step() const {
  if (side == Side::target) return {from.p, to.p, actions};
  return {from.q, to.q, actions};
}

std::set<StatePair> TransactorFsm::pairs() const {
  std::set<StatePair> out{initial_pair, final_pair};
  for (const auto& t : transitions) {
    out.insert(t.from);
    out.insert(t.to);
  }
  return out;
}

std::vector<const TransactorTransition*> TransactorFsm::outgoing(StatePair pair) const {
  std::vector<const TransactorTransition*> out;
  for (const auto& t : transitions) {
    if (t.from == pair) out.push_back(&t);
  }
  return out;
}

std::size_t SynthStats::max_examined() const {
  std::size_t best = 0;
  for (const auto& s : steps) best = std::max(best, s.examined);
  return best;
}

bool SynthStats::within_bound() const {
  return std::all_of(steps.begin(), steps.end(), [](const StepRecord& s) {
    return s.examined <= s.target_outdegree + s.initiator_outdegree;
  });
}

SynthesisProblem::SynthesisProblem(InterfaceFsm target, InterfaceFsm initiator,
                                   PayloadMapping mapping, SynthOptions options)
    : target_(std::move(target)),
      initiator_(std::move(initiator)),
      mapping_(std::move(mapping)),
      options_(options) {
  collected_.assign(mapping_.entries.size(), false);
  for (const InterfaceFsm* fsm : {&target_, &initiator_}) {
    for (const auto& t : fsm->transitions) {
      for (const auto& a : t.actions) {
        if (a.kind != ActionKind::sample_data) continue;
        for (std::size_t i = 0; i < mapping_.entries.size(); ++i) {
          if (mapping_.entries[i].signal == a.signal) collected_[i] = true;
        }
      }
    }
  }
}

namespace {

void check_inputs(const SynthesisProblem& problem) {
  for (Side side : {Side::target, Side::initiator}) {
    const InterfaceFsm& fsm = problem.fsm(side);
    ValidationReport report = validate(fsm);
    if (!report.ok()) {
      throw SynthesisError("invalid-input", std::string(to_string(side)) + "-side FSM '" +
                                                fsm.name + "' is invalid: " +
                                                report.violations.front().message);
    }
  }
  if (auto code = check_mapping(problem.mapping())) {
    throw SynthesisError("invalid-input", "payload mapping '" + problem.mapping().name +
                                              "' violates " + *code);
  }
  for (const auto& e : problem.mapping().entries) {
    bool declared = false;
    bool field_ok = true;
    for (Side side : {Side::target, Side::initiator}) {
      const InterfaceFsm& fsm = problem.fsm(side);
      if (const SignalDecl* s = fsm.find_signal(e.signal); s && s->kind == SignalKind::data) {
        declared = true;
      }
      if (fsm.level == Level::pvt && !fsm.payload_fields.empty() &&
          std::find(fsm.payload_fields.begin(), fsm.payload_fields.end(), e.field) ==
              fsm.payload_fields.end()) {
        field_ok = false;
      }
    }
    if (!declared) {
      throw SynthesisError("invalid-input", "mapping entry '" + e.label() +
                                                "' names no declared data signal '" +
                                                e.signal + "'");
    }
    if (!field_ok) {
      throw SynthesisError("invalid-input",
                           "mapping field '" + e.field + "' is not a declared payload field");
    }
  }
  const InterfaceFsm& target = problem.target();
  if (problem.options().require_delay_consumption && target.level == Level::ca &&
      !has_delay_consumption(target)) {
    throw SynthesisError("target-not-prepared",
                         "CA target '" + target.name +
                             "' has no delay consumption model; run prepare_target first");
  }
}

}  // namespace

TransactorFsm generate_transactor(const InterfaceFsm& target, const InterfaceFsm& initiator,
                                  const PayloadMapping& mapping, SynthOptions options,
                                  SynthStats* stats) {
  const SynthesisProblem problem(target, initiator, mapping, options);
  check_inputs(problem);

  SynthStats local;
  SynthStats& st = stats ? *stats : local;
  st = SynthStats{};

  TransactorFsm g;
  g.name = target.name + "__" + initiator.name;
  g.target = describe_side(problem.target());
  g.initiator = describe_side(problem.initiator());
  g.mapping = mapping;
  g.initial_pair = problem.initial_pair();
  g.final_pair = problem.final_pair();

  std::vector<std::pair<StatePair, LegalityContext>> stack;
  std::set<StatePair> visited;
  stack.emplace_back(g.initial_pair, LegalityContext{});
  ++st.pushes;
  bool found = false;

  while (!stack.empty()) {
    auto [pair, ctx] = stack.back();
    stack.pop_back();
    if (visited.contains(pair)) {
      // Everything below this pair has been explored without success.
      ++st.revisits;
      std::erase_if(g.transitions,
                    [pair = pair](const TransactorTransition& t) { return t.from == pair; });
      continue;
    }
    visited.insert(pair);
    ++st.expansions;
    if (pair == g.final_pair && !ctx.call_open) {
      found = true;
      break;
    }

    StepRecord step{pair, 0, problem.target().outdegree(pair.p),
                    problem.initiator().outdegree(pair.q)};
    for (Side side : {Side::target, Side::initiator}) {
      const StateId here = side == Side::target ? pair.p : pair.q;
      for (const Transition* t : problem.fsm(side).outgoing(here)) {
        ++step.examined;
        if (!check_data_legality(problem, pair, side, *t, ctx) ||
            !check_timing_legality(problem, pair, side, *t, ctx)) {
          continue;
        }
        const StatePair next =
            side == Side::target ? StatePair{t->to, pair.q} : StatePair{pair.p, t->to};
        if (!t->is_self_loop()) {
          stack.emplace_back(next, advance_context(problem, side, *t, ctx));
          ++st.pushes;
        }
        g.transitions.push_back({pair, next, side, t->actions, ctx});
      }
    }
    st.steps.push_back(step);
  }

  if (!found) {
    throw SynthesisError("no-legal-transactor",
                         "no legal transactor connects '" + target.name + "' and '" +
                             initiator.name + "' under mapping '" + mapping.name + "' (" +
                             std::to_string(st.expansions) + " state pairs explored)");
  }
  const std::size_t before = g.pairs().size();
  TransactorFsm pruned = prune_dead_states(g);
  st.pruned_pairs = before - pruned.pairs().size();
  return pruned;
}

TransactorFsm prune_dead_states(const TransactorFsm& g) {
  std::map<StatePair, std::vector<StatePair>> forward;
  std::map<StatePair, std::vector<StatePair>> backward;
  for (const auto& t : g.transitions) {
    forward[t.from].push_back(t.to);
    backward[t.to].push_back(t.from);
  }
  auto reach = [](StatePair start, std::map<StatePair, std::vector<StatePair>>& edges) {
    std::set<StatePair> seen{start};
    std::deque<StatePair> queue{start};
    while (!queue.empty()) {
      StatePair s = queue.front();
      queue.pop_front();
      for (StatePair n : edges[s]) {
        if (seen.insert(n).second) queue.push_back(n);
      }
    }
    return seen;
  };
  const auto live_forward = reach(g.initial_pair, forward);
  const auto live_backward = reach(g.final_pair, backward);
  if (!live_forward.contains(g.final_pair) || !live_backward.contains(g.initial_pair)) {
    throw SynthesisError("empty-after-prune", "no path from " + to_string(g.initial_pair) +
                                                  " to " + to_string(g.final_pair) +
                                                  " survives in '" + g.name + "'");
  }
  TransactorFsm out = g;
  std::erase_if(out.transitions, [&](const TransactorTransition& t) {
    return !(live_forward.contains(t.from) && live_backward.contains(t.from) &&
             live_forward.contains(t.to) && live_backward.contains(t.to));
  });
  std::sort(out.transitions.begin(), out.transitions.end());
  out.transitions.erase(std::unique(out.transitions.begin(), out.transitions.end()),
                        out.transitions.end());
  return out;
}

}  // namespace tcx
