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

#include "tcx/error.hpp"
#include "tcx/ifsm.hpp"

namespace tcx {
namespace {

bool raises_handshake(const InterfaceFsm& fsm, const Action& action) {
  if (!action.is_level_action()) return false;
  const SignalDecl* decl = fsm.find_signal(action.signal);
  return decl != nullptr && decl->kind == SignalKind::handshake &&
         action.level == decl->active_level();
}

bool raises_handshake(const InterfaceFsm& fsm, const Transition& t) {
  return std::any_of(t.actions.begin(), t.actions.end(),
                     [&](const Action& a) { return raises_handshake(fsm, a); });
}

}  // namespace

StateId find_last_handshake_state(const InterfaceFsm& fsm) {
  if (fsm.level != Level::ca) {
    throw FsmError("not-ca-level", "last handshake state is only defined for CA FSMs ('" +
                                       fsm.name + "' is PVT)");
  }
  std::set<StateId> candidates;
  for (const auto& t : fsm.transitions) {
    if (t.to == fsm.final_state && !t.is_self_loop() && raises_handshake(fsm, t)) {
      candidates.insert(t.from);
    }
  }
  if (candidates.empty()) {
    throw FsmError("no-last-handshake",
                   "no transition into final state " + std::to_string(fsm.final_state) +
                       " of '" + fsm.name + "' raises a handshake signal");
  }
  if (candidates.size() > 1) {
    std::string list;
    for (StateId s : candidates) list += (list.empty() ? "" : ", ") + std::to_string(s);
    throw FsmError("ambiguous-last-handshake",
                   "states {" + list + "} of '" + fsm.name +
                       "' all raise a handshake into the final state");
  }
  return *candidates.begin();
}

bool has_delay_consumption(const InterfaceFsm& fsm) {
  return std::any_of(fsm.transitions.begin(), fsm.transitions.end(),
                     [](const Transition& t) {
                       return t.has(ActionKind::consume_delay_cycle);
                     });
}

InterfaceFsm apply_delay_consumption(const InterfaceFsm& fsm) {
  if (has_delay_consumption(fsm)) {
    throw FsmError("already-transformed",
                   "'" + fsm.name + "' already carries a delay consumption loop");
  }
  const StateId last = find_last_handshake_state(fsm);

  std::vector<Action> hold{Action::of(ActionKind::consume_delay_cycle)};
  InterfaceFsm out = fsm;
  out.transitions.clear();
  for (const auto& t : fsm.transitions) {
    if (t.from != last) {
      out.transitions.push_back(t);
      continue;
    }
    if (t.is_self_loop()) continue;  // replaced by the consume loop
    Transition guarded = t;
    if (t.to == fsm.final_state) {
      for (const auto& a : t.actions) {
        if (!raises_handshake(fsm, a)) continue;
        Action inactive = a;
        inactive.level = fsm.find_signal(a.signal)->inactive_level();
        if (std::find(hold.begin(), hold.end(), inactive) == hold.end()) {
          hold.push_back(inactive);
        }
      }
      guarded.actions.insert(guarded.actions.begin(),
                             Action::of(ActionKind::delay_elapsed));
    }
    out.transitions.push_back(std::move(guarded));
  }
  out.transitions.push_back(Transition{last, last, std::move(hold)});
  return canonicalize(std::move(out));
}

InterfaceFsm remove_delay_consumption(const InterfaceFsm& fsm) {
  InterfaceFsm out = fsm;
  std::erase_if(out.transitions, [](const Transition& t) {
    return t.has(ActionKind::consume_delay_cycle);
  });
  for (auto& t : out.transitions) {
    std::erase_if(t.actions,
                  [](const Action& a) { return a.kind == ActionKind::delay_elapsed; });
  }
  return canonicalize(std::move(out));
}

InterfaceFsm strip_self_loops(const InterfaceFsm& fsm) {
  std::optional<StateId> keep;
  if (fsm.level == Level::ca) {
    try {
      keep = find_last_handshake_state(fsm);
    } catch (const FsmError&) {
      keep.reset();
    }
  }
  InterfaceFsm out = fsm;
  std::erase_if(out.transitions, [&](const Transition& t) {
    return t.is_self_loop() && t.from != keep;
  });
  return out;
}

InterfaceFsm prepare_target(const InterfaceFsm& fsm) {
  InterfaceFsm stripped = strip_self_loops(fsm);
  if (fsm.level != Level::ca) return stripped;
  return apply_delay_consumption(stripped);
}

}  // namespace tcx
