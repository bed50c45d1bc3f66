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

#include <optional>

#include "tcx/synth.hpp"

namespace tcx {
namespace {

std::optional<LegalityContext> replay(const SynthesisProblem& problem, const Transition& t,
                                      LegalityContext ctx) {
  const auto& entries = problem.mapping().entries;
  auto all_collected_bound = [&] {
    for (std::size_t i = ctx.bound; i < entries.size(); ++i) {
      if (problem.collected(i)) return false;
    }
    return true;
  };
  // Actions fire atomically; their listed order only fixes payload binding.
  for (const auto& a : t.actions) {
    switch (a.kind) {
      case ActionKind::sample_data:
      case ActionKind::drive_data: {
        if (!problem.mapping().maps(a.signal)) break;
        if (ctx.bound >= entries.size() || entries[ctx.bound].signal != a.signal) {
          return std::nullopt;
        }
        if (a.kind == ActionKind::drive_data && !ctx.payload_received &&
            !ctx.response_received) {
          return std::nullopt;
        }
        ++ctx.bound;
        break;
      }
      case ActionKind::payload_send:
        if (!all_collected_bound()) return std::nullopt;
        ctx.payload_sent = true;
        break;
      case ActionKind::response_send:
        if (!all_collected_bound()) return std::nullopt;
        ctx.response_sent = true;
        break;
      case ActionKind::payload_receive: ctx.payload_received = true; break;
      case ActionKind::response_receive: ctx.response_received = true; break;
      case ActionKind::delay_receive: ctx.delay_received = true; break;
      case ActionKind::delay_send: ctx.delay_sent = true; break;
      case ActionKind::begin_call_send: ctx.call_open = true; break;
      case ActionKind::end_call_receive: ctx.call_open = false; break;
      default: break;
    }
  }
  return ctx;
}

}  // namespace

bool check_data_legality(const SynthesisProblem& problem, StatePair /*pair*/, Side /*side*/,
                         const Transition& t, const LegalityContext& ctx) {
  return replay(problem, t, ctx).has_value();
}

bool check_timing_legality(const SynthesisProblem& problem, StatePair pair, Side side,
                           const Transition& t, const LegalityContext& ctx) {
  const InterfaceFsm& target = problem.target();
  const InterfaceFsm& initiator = problem.initiator();
  const bool other_side_done =
      side == Side::target ? pair.q == initiator.final_state : pair.p == target.final_state;
  for (const auto& a : t.actions) {
    if (a.is_delay_control() && !ctx.delay_received) return false;
    if (a.kind == ActionKind::delay_send && !other_side_done) return false;
  }
  if (side != Side::target || t.is_self_loop() || t.to != target.final_state) return true;

  // The target is about to close the transaction.
  if (target.level == Level::pvt) return other_side_done;
  if (!ctx.delay_received) return false;
  return !problem.options().require_delay_consumption || t.has(ActionKind::delay_elapsed);
}

LegalityContext advance_context(const SynthesisProblem& problem, Side /*side*/,
                                const Transition& t, LegalityContext ctx) {
  auto next = replay(problem, t, ctx);
  return next ? *next : ctx;
}

std::vector<MappingEntry> LegalityContext::bound_fields(const PayloadMapping& mapping) const {
  return {mapping.entries.begin(),
          mapping.entries.begin() +
              static_cast<std::ptrdiff_t>(std::min(bound, mapping.entries.size()))};
}

}  // namespace tcx
