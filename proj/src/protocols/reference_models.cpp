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

#include "tcx/protocols.hpp"

namespace tcx {
namespace {

constexpr std::string_view kCaWriteInitiator = R"(ifsm v1
fsm ca_write {
  role = initiator;
  level = ca; clock_period = 10 ns;
  signal HADDR : data;
  signal HREADY : handshake;
  signal HTRANS : handshake;
  signal HWDATA : data;
  initial = 0; final = 5;
  on 0 -> 1 : HTRANS!1, HADDR!;
  on 1 -> 1 : HREADY?0;
  on 1 -> 2 : HREADY?1, HWDATA!;
  on 2 -> 2 : HREADY?0;
  on 2 -> 3 : HREADY?1, HWDATA!;
  on 3 -> 4 : HTRANS!0;
  on 4 -> 4 : HREADY?0;
  on 4 -> 5 : HREADY?1;
}
)";

constexpr std::string_view kCaWriteTarget = R"(ifsm v1
fsm ca_write {
  role = target;
  level = ca; clock_period = 10 ns;
  signal HADDR : data;
  signal HREADY : handshake;
  signal HTRANS : handshake;
  signal HWDATA : data;
  initial = 0; final = 5;
  on 0 -> 1 : HTRANS?1, HADDR?;
  on 1 -> 1 : HREADY!0;
  on 1 -> 2 : HREADY!1, HWDATA?;
  on 2 -> 2 : HREADY!0;
  on 2 -> 3 : HREADY!1, HWDATA?;
  on 3 -> 4 : HTRANS?0;
  on 4 -> 4 : HREADY!0;
  on 4 -> 5 : HREADY!1;
}
)";

constexpr std::string_view kCaReadInitiator = R"(ifsm v1
fsm ca_read {
  role = initiator;
  level = ca; clock_period = 10 ns;
  signal HADDR : data;
  signal HRDATA : data;
  signal HREADY : handshake;
  signal HTRANS : handshake;
  initial = 0; final = 5;
  on 0 -> 1 : HTRANS!1, HADDR!;
  on 1 -> 1 : HREADY?0;
  on 1 -> 2 : HREADY?1, HRDATA?;
  on 2 -> 2 : HREADY?0;
  on 2 -> 3 : HREADY?1, HRDATA?;
  on 3 -> 4 : HTRANS!0;
  on 4 -> 4 : HREADY?0;
  on 4 -> 5 : HREADY?1;
}
)";

constexpr std::string_view kCaReadTarget = R"(ifsm v1
fsm ca_read {
  role = target;
  level = ca; clock_period = 10 ns;
  signal HADDR : data;
  signal HRDATA : data;
  signal HREADY : handshake;
  signal HTRANS : handshake;
  initial = 0; final = 5;
  on 0 -> 1 : HTRANS?1, HADDR?;
  on 1 -> 1 : HREADY!0;
  on 1 -> 2 : HREADY!1, HRDATA!;
  on 2 -> 2 : HREADY!0;
  on 2 -> 3 : HREADY!1, HRDATA!;
  on 3 -> 4 : HTRANS?0;
  on 4 -> 4 : HREADY!0;
  on 4 -> 5 : HREADY!1;
}
)";

constexpr std::string_view kPvtInitiator = R"(ifsm v1
fsm pvt_bus {
  role = initiator;
  level = pvt;
  field addr;
  field data;
  initial = 0; final = 2;
  on 0 -> 1 : begin_call!, payload!;
  on 1 -> 2 : end_call?, delay?, response?;
}
)";

constexpr std::string_view kPvtTarget = R"(ifsm v1
fsm pvt_bus {
  role = target;
  level = pvt;
  field addr;
  field data;
  initial = 0; final = 2;
  on 0 -> 1 : begin_call?, payload?;
  on 1 -> 2 : end_call!, delay!, response!;
}
)";

constexpr std::string_view kWriteMap = R"(map write_map {
  addr <- HADDR;
  data[0] <- HWDATA;
  data[1] <- HWDATA;
}
)";

constexpr std::string_view kReadMap = R"(map read_map {
  addr <- HADDR;
  data[0] <- HRDATA;
  data[1] <- HRDATA;
}
)";

ProtocolLibrary load(std::string_view ca_i, std::string_view ca_t, std::string_view map) {
  return {parse_interface_spec(ca_i), parse_interface_spec(ca_t),
          parse_interface_spec(kPvtInitiator), parse_interface_spec(kPvtTarget),
          parse_payload_mapping(map)};
}

}  // namespace

const std::vector<ReferenceFile>& reference_files() {
  static const std::vector<ReferenceFile> files = {
      {"ca_write_initiator.ifsm", kCaWriteInitiator},
      {"ca_write_target.ifsm", kCaWriteTarget},
      {"ca_read_initiator.ifsm", kCaReadInitiator},
      {"ca_read_target.ifsm", kCaReadTarget},
      {"pvt_initiator.ifsm", kPvtInitiator},
      {"pvt_target.ifsm", kPvtTarget},
      {"write.pmap", kWriteMap},
      {"read.pmap", kReadMap},
  };
  return files;
}

const ReferenceModels& reference_models() {
  static const ReferenceModels models{load(kCaWriteInitiator, kCaWriteTarget, kWriteMap),
                                      load(kCaReadInitiator, kCaReadTarget, kReadMap)};
  return models;
}

TransactorFsm synthesize(const ProtocolLibrary& library, SynthStats* stats) {
  return generate_transactor(prepare_target(library.ca_target), library.pvt_initiator,
                             library.mapping, {}, stats);
}

ConventionalTransactor conventional_transactor(const InterfaceFsm& target,
                                               const InterfaceFsm& initiator,
                                               const PayloadMapping& mapping) {
  InterfaceFsm plain = target;
  if (has_delay_consumption(plain)) plain = remove_delay_consumption(plain);
  SynthOptions options;
  options.require_delay_consumption = false;
  std::erase_if(plain.transitions, [](const Transition& t) { return t.is_self_loop(); });
  return {generate_transactor(plain, initiator, mapping, options)};
}

ChannelSet coherent_channels(const ReferenceModels& models) {
  return {{models.write.ca_initiator, synthesize(models.write), models.write.pvt_target},
          Channel{models.read.ca_initiator, synthesize(models.read), models.read.pvt_target}};
}

ChannelSet conventional_channels(const ReferenceModels& models) {
  auto make = [](const ProtocolLibrary& lib) {
    return Channel{lib.ca_initiator,
                   conventional_transactor(lib.ca_target, lib.pvt_initiator, lib.mapping).fsm,
                   lib.pvt_target};
  };
  return {make(models.write), make(models.read)};
}

ChannelSet reference_channels(const ReferenceModels& models) {
  return {{models.write.ca_initiator, std::nullopt, prepare_target(models.write.ca_target)},
          Channel{models.read.ca_initiator, std::nullopt, prepare_target(models.read.ca_target)}};
}

}  // namespace tcx
