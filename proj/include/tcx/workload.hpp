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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tcx {

enum class TransferKind : std::uint8_t { write, read };

std::string_view to_string(TransferKind kind);

struct Transfer {
  TransferKind kind = TransferKind::write;
  int burst_len = 1;  // length of the burst this transfer belongs to
  std::int64_t idle_gap_cycles = 0;  // idle master cycles before it starts
  std::uint64_t payload_digest = 0;  // seeds the address and data values

  bool operator==(const Transfer&) const = default;
};

// One transfer is one transaction; txn_id is the index into `transfers`.
struct WorkloadSpec {
  std::vector<Transfer> transfers;
  std::uint64_t seed = 0;

  bool operator==(const WorkloadSpec&) const = default;
};

enum class WorkloadKind : std::uint8_t { general_channel, multimedia, mixed };

std::string_view to_string(WorkloadKind kind);
std::optional<WorkloadKind> parse_workload_kind(std::string_view text);

// Seeded generator. Throws Error "invalid-workload" when n is 0.
WorkloadSpec generate_workload(WorkloadKind kind, std::size_t n, std::uint64_t seed);

// "seed=N" line, header, then one `kind,burst_len,idle_gap_cycles,payload_digest`
// row per transfer (digest as 16 hex digits).
std::string serialize_workload(const WorkloadSpec& workload);
WorkloadSpec parse_workload(std::string_view text);  // Error "malformed-workload"

}  // namespace tcx
