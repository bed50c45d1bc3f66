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

#include <array>
#include <charconv>
#include <random>
#include <sstream>

#include "tcx/error.hpp"
#include "tcx/simkernel.hpp"
#include "tcx/workload.hpp"

namespace tcx {
namespace {

constexpr std::array<int, 5> kGeneralLengths = {1, 2, 4, 8, 16};
constexpr std::array<int, 3> kMediaLengths = {4, 8, 16};
constexpr std::int64_t kMaxIdleGap = 8;
constexpr std::string_view kWorkloadHeader = "kind,burst_len,idle_gap_cycles,payload_digest";

// std distributions differ between standard libraries; this draw does not.
std::uint64_t draw(std::mt19937_64& rng, std::uint64_t bound) { return rng() % bound; }

using Burst = std::vector<Transfer>;

Burst make_burst(std::mt19937_64& rng, TransferKind kind, int len, std::int64_t gap,
                 std::uint64_t tag) {
  Burst burst;
  for (int i = 0; i < len; ++i) {
    const std::uint64_t low = rng() & 0x0000'ffff'ffff'ffffULL;
    burst.push_back({kind, len, i == 0 ? gap : 0, (tag << 48) | low});
  }
  return burst;
}

class GeneralChannel {
 public:
  explicit GeneralChannel(std::mt19937_64& rng) : rng_(rng) {}

  Burst next() {
    const int len = kGeneralLengths[draw(rng_, kGeneralLengths.size())];
    const TransferKind kind = draw(rng_, 2) == 0 ? TransferKind::write : TransferKind::read;
    const auto gap = static_cast<std::int64_t>(draw(rng_, kMaxIdleGap + 1));
    return make_burst(rng_, kind, len, gap, 0);
  }

 private:
  std::mt19937_64& rng_;
};

// Two sources into one destination, then one source into two destinations,
// as back-to-back read bursts (sources) and write bursts (destinations).
class Multimedia {
 public:
  explicit Multimedia(std::mt19937_64& rng) : rng_(rng) {}

  Burst next() {
    if (queue_.empty()) refill();
    Burst b = std::move(queue_.front());
    queue_.erase(queue_.begin());
    return b;
  }

 private:
  void refill() {
    const bool merge = (pattern_++ % 2) == 0;
    const std::uint64_t dst = 1 + draw(rng_, 0xfffe);
    auto len = [&] { return kMediaLengths[draw(rng_, kMediaLengths.size())]; };
    if (merge) {
      queue_.push_back(make_burst(rng_, TransferKind::read, len(), 0, dst));
      queue_.push_back(make_burst(rng_, TransferKind::read, len(), 0, dst));
      queue_.push_back(make_burst(rng_, TransferKind::write, len(), 0, dst));
    } else {
      const std::uint64_t dst2 = 1 + draw(rng_, 0xfffe);
      queue_.push_back(make_burst(rng_, TransferKind::read, len(), 0, dst));
      queue_.push_back(make_burst(rng_, TransferKind::write, len(), 0, dst));
      queue_.push_back(make_burst(rng_, TransferKind::write, len(), 0, dst2));
    }
  }

  std::mt19937_64& rng_;
  std::uint64_t pattern_ = 0;
  std::vector<Burst> queue_;
};

}  // namespace

std::string_view to_string(TransferKind kind) {
  return kind == TransferKind::write ? "write" : "read";
}

std::string_view to_string(WorkloadKind kind) {
  switch (kind) {
    case WorkloadKind::general_channel: return "general_channel";
    case WorkloadKind::multimedia: return "multimedia";
    case WorkloadKind::mixed: return "mixed";
  }
  return "?";
}

std::optional<WorkloadKind> parse_workload_kind(std::string_view text) {
  for (auto k : {WorkloadKind::general_channel, WorkloadKind::multimedia, WorkloadKind::mixed}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

WorkloadSpec generate_workload(WorkloadKind kind, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error("invalid-workload", "a workload needs at least one transfer");
  std::mt19937_64 rng(seed);
  GeneralChannel general(rng);
  Multimedia media(rng);
  WorkloadSpec spec;
  spec.seed = seed;
  std::size_t burst_index = 0;
  while (spec.transfers.size() < n) {
    const bool use_general = kind == WorkloadKind::general_channel ||
                             (kind == WorkloadKind::mixed && burst_index % 2 == 0);
    Burst burst = use_general ? general.next() : media.next();
    ++burst_index;
    for (auto& t : burst) {
      if (spec.transfers.size() == n) break;
      spec.transfers.push_back(t);
    }
  }
  spec.transfers.front().idle_gap_cycles = 0;
  return spec;
}

std::string serialize_workload(const WorkloadSpec& workload) {
  std::string out = "seed=" + std::to_string(workload.seed) + "\n";
  out += kWorkloadHeader;
  out += '\n';
  for (const auto& t : workload.transfers) {
    out += std::string(to_string(t.kind)) + "," + std::to_string(t.burst_len) + "," +
           std::to_string(t.idle_gap_cycles) + "," + format_digest(t.payload_digest) + "\n";
  }
  return out;
}

WorkloadSpec parse_workload(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  auto fail = [&](const std::string& why) {
    throw Error("malformed-workload", "line " + std::to_string(line_no) + ": " + why);
  };
  auto number = [&](std::string_view cell, int base, auto& out) {
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), out, base);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
      fail("bad number '" + std::string(cell) + "'");
    }
  };
  WorkloadSpec spec;
  ++line_no;
  if (!std::getline(in, line) || line.rfind("seed=", 0) != 0) fail("expected 'seed=N'");
  number(std::string_view(line).substr(5), 10, spec.seed);
  ++line_no;
  if (!std::getline(in, line) || line != kWorkloadHeader) {
    fail("expected header '" + std::string(kWorkloadHeader) + "'");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string_view> cells;
    std::string_view rest = line;
    for (std::size_t comma; (comma = rest.find(',')) != std::string_view::npos;) {
      cells.push_back(rest.substr(0, comma));
      rest.remove_prefix(comma + 1);
    }
    cells.push_back(rest);
    if (cells.size() != 4) fail("expected 4 fields");
    Transfer t;
    if (cells[0] == "write") {
      t.kind = TransferKind::write;
    } else if (cells[0] == "read") {
      t.kind = TransferKind::read;
    } else {
      fail("kind must be write or read");
    }
    number(cells[1], 10, t.burst_len);
    number(cells[2], 10, t.idle_gap_cycles);
    if (cells[3].size() != 16) fail("digest must be 16 hex digits");
    number(cells[3], 16, t.payload_digest);
    if (t.burst_len < 1) fail("burst_len must be at least 1");
    if (t.idle_gap_cycles < 0) fail("idle_gap_cycles must be non-negative");
    spec.transfers.push_back(t);
  }
  if (spec.transfers.empty()) fail("no transfers");
  return spec;
}

}  // namespace tcx
