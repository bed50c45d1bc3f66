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

#include <cstdint>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tcx/dsl.hpp"
#include "tcx/ifsm.hpp"
#include "tcx/simkernel.hpp"
#include "tcx/synth.hpp"

namespace tcx::testing {

// ---- generators --------------------------------------------------------

// A valid CA or PVT FSM with a random shape: a spine from initial to final
// plus level-distinguished side edges and self-loops (CA only).
InterfaceFsm random_fsm(std::mt19937_64& rng);

// A bus protocol in the shape of the reference write/read pairs with a
// random number of data beats, optional data wait loops and handshake
// polarity. The final handshake always has its wait loop.
struct RandomProtocol {
  InterfaceFsm ca_initiator;
  InterfaceFsm pvt_target;
  PayloadMapping mapping;
  int beats = 0;
  bool read = false;
};

RandomProtocol random_protocol(std::mt19937_64& rng);

// Random bytes drawn mostly from the DSL alphabet.
std::string random_text(std::mt19937_64& rng, std::size_t max_len);

// Random edits (delete, duplicate, swap, insert) of a valid text.
std::string mutate(std::mt19937_64& rng, const std::string& text, int edits);

// ---- oracles -----------------------------------------------------------

// States reachable from `from` over the transition relation.
std::set<StateId> bfs_reachable(const InterfaceFsm& fsm, StateId from);

// Pairs lying on some initial -> final path, by separate forward and
// backward searches over g's edges.
std::set<StatePair> live_pairs(const TransactorFsm& g);

// One step of a path through the product graph.
struct ProductStep {
  StatePair from;
  StatePair to;
  Side side;
  Transition step;
};

using ProductPath = std::vector<ProductStep>;

// Every simple initial -> final path of the full product of T and I whose
// steps obey the payload/timing rules, replayed from scratch along each
// path. Self-loops are excluded from the enumeration.
std::vector<ProductPath> legal_product_paths(const InterfaceFsm& target,
                                             const InterfaceFsm& initiator,
                                             const PayloadMapping& mapping,
                                             bool require_delay_consumption = true,
                                             std::size_t limit = 200000);

// Simple initial -> final paths of g (self-loops skipped).
std::vector<std::vector<TransactorTransition>> transactor_paths(const TransactorFsm& g);

// True when every component's events are in non-decreasing time order.
bool per_component_monotone(const SimTrace& trace);

}  // namespace tcx::testing
