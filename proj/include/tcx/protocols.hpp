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

#include <string_view>
#include <vector>

#include "tcx/dsl.hpp"
#include "tcx/ifsm.hpp"
#include "tcx/simkernel.hpp"
#include "tcx/synth.hpp"
#include "tcx/workload.hpp"

namespace tcx {

// A CA interface pair, a PVT interface pair and the payload mapping that
// relates them. Each target is the complement of its initiator.
struct ProtocolLibrary {
  InterfaceFsm ca_initiator;
  InterfaceFsm ca_target;
  InterfaceFsm pvt_initiator;
  InterfaceFsm pvt_target;
  PayloadMapping mapping;
};

struct ReferenceModels {
  ProtocolLibrary write;
  ProtocolLibrary read;
};

// Parsed once from the embedded files.
const ReferenceModels& reference_models();

struct ReferenceFile {
  std::string_view name;  // e.g. "ca_write_initiator.ifsm"
  std::string_view text;
};

const std::vector<ReferenceFile>& reference_files();

// Coherent transactor for a library: prepare_target(ca_target) against
// pvt_initiator under the library mapping.
TransactorFsm synthesize(const ProtocolLibrary& library, SynthStats* stats = nullptr);

// Baseline that issues the call only once the payload is collected and
// finishes the CA handshake as soon as the call returns. Run it with
// TimingMode::conventional.
struct ConventionalTransactor {
  TransactorFsm fsm;
};

ConventionalTransactor conventional_transactor(const InterfaceFsm& target,
                                               const InterfaceFsm& initiator,
                                               const PayloadMapping& mapping);

// Channel sets over the reference library for the three run flavours.
ChannelSet coherent_channels(const ReferenceModels& models);
ChannelSet conventional_channels(const ReferenceModels& models);
ChannelSet reference_channels(const ReferenceModels& models);

}  // namespace tcx
