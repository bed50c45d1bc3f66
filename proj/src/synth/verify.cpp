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
#include <functional>

#include "tcx/synth.hpp"

namespace tcx {

std::vector<std::string> verify_transactor(const TransactorFsm& g,
                                           const SynthesisProblem& problem) {
  std::vector<std::string> problems;
  auto where = [](const TransactorTransition& t) {
    return to_string(t.from) + " -> " + to_string(t.to) + " side " +
           std::string(to_string(t.side));
  };

  for (const auto& t : g.transitions) {
    const bool p_moves = t.from.p != t.to.p;
    const bool q_moves = t.from.q != t.to.q;
    if (p_moves && q_moves) problems.push_back(where(t) + ": both sides advance");
    if ((t.side == Side::target && q_moves) || (t.side == Side::initiator && p_moves)) {
      problems.push_back(where(t) + ": advances the wrong side");
    }
    const Transition step = t.step();
    const auto& side_transitions = problem.fsm(t.side).transitions;
    if (std::find(side_transitions.begin(), side_transitions.end(), step) ==
        side_transitions.end()) {
      problems.push_back(where(t) + ": not a transition of the side FSM");
    }
    if (!check_data_legality(problem, t.from, t.side, step, t.context)) {
      problems.push_back(where(t) + ": data-illegal under its recorded context");
    }
    if (!check_timing_legality(problem, t.from, t.side, step, t.context)) {
      problems.push_back(where(t) + ": timing-illegal under its recorded context");
    }
  }

  // Replay every simple path from the initial pair; each transition offered
  // at a pair must be legal in the context accumulated along that path.
  std::set<StatePair> on_path;
  std::size_t budget = 100000;
  std::function<void(StatePair, const LegalityContext&)> walk =
      [&](StatePair pair, const LegalityContext& ctx) {
        if (budget == 0) return;
        --budget;
        if (pair == g.final_pair) {
          if (ctx.call_open) {
            problems.push_back("path reaches " + to_string(pair) + " with the call still open");
          }
          return;
        }
        on_path.insert(pair);
        for (const TransactorTransition* t : g.outgoing(pair)) {
          const Transition step = t->step();
          if (!check_data_legality(problem, pair, t->side, step, ctx) ||
              !check_timing_legality(problem, pair, t->side, step, ctx)) {
            problems.push_back(where(*t) + ": illegal when replayed along a path");
            continue;
          }
          if (t->is_self_loop() || on_path.contains(t->to)) continue;
          walk(t->to, advance_context(problem, t->side, step, ctx));
        }
        on_path.erase(pair);
      };
  walk(g.initial_pair, LegalityContext{});
  std::sort(problems.begin(), problems.end());
  problems.erase(std::unique(problems.begin(), problems.end()), problems.end());
  return problems;
}

}  // namespace tcx
