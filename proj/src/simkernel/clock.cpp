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

#include <charconv>
#include <numeric>

#include "../common/hash.hpp"
#include "tcx/error.hpp"
#include "tcx/simkernel.hpp"

namespace tcx {

LocalClock advance_local_clock(const LocalClock& clock, std::int64_t cycles) {
  if (clock.period_ns <= 0) {
    throw SimulationError("invalid-advance",
                          "clock '" + clock.owner + "' is event-timed and has no cycles");
  }
  if (cycles <= 0) {
    throw SimulationError("invalid-advance", "clock '" + clock.owner +
                                                 "' must advance by a positive cycle count");
  }
  LocalClock out = clock;
  out.now_ns += cycles * clock.period_ns;
  return out;
}

ClockWrap wrap_clock_for_call(TimeNs begin_ns, TimeNs returned_delay_ns, TimeNs ca_now_ns,
                              TimeNs period_ns) {
  const TimeNs pvt_end = begin_ns + returned_delay_ns;
  if (pvt_end < ca_now_ns) {
    throw SimulationError("delay-underrun",
                          "call returned after " + std::to_string(returned_delay_ns) +
                              " ns but the CA side already needs " +
                              std::to_string(ca_now_ns - begin_ns) + " ns");
  }
  return {pvt_end, period_ns > 0 ? (pvt_end - ca_now_ns) / period_ns : 0};
}

std::string_view to_string(RecordSide side) { return side == RecordSide::ca ? "CA" : "PVT"; }

void DelayModel::check() const {
  auto bad = [](const std::string& what) {
    throw SimulationError("invalid-delay-model", what);
  };
  if (base_latency_cycles <= 0) bad("base latency must be at least one cycle");
  if (contention_denominator == 0 || contention_numerator > contention_denominator) {
    bad("contention probability must lie in [0, 1]");
  }
  if (contention_min_cycles <= 0 || contention_max_cycles < contention_min_cycles) {
    bad("contention cycles must form a range of positive integers");
  }
}

std::int64_t DelayModel::delay_cycles(std::uint64_t txn_id) const {
  const std::uint64_t draw = detail::splitmix64(seed ^ detail::splitmix64(txn_id));
  if (draw % contention_denominator >= contention_numerator) return base_latency_cycles;
  const auto span = static_cast<std::uint64_t>(contention_max_cycles - contention_min_cycles + 1);
  const auto extra = static_cast<std::int64_t>(detail::splitmix64(draw) % span);
  return base_latency_cycles + contention_min_cycles + extra;
}

std::pair<std::uint64_t, std::uint64_t> parse_probability(std::string_view text) {
  auto fail = [&] {
    throw Error("invalid-probability",
                "'" + std::string(text) + "' is not a probability in [0, 1]");
  };
  auto to_u64 = [&](std::string_view digits) {
    std::uint64_t v = 0;
    if (digits.empty() || digits.size() > 12) fail();
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (ec != std::errc() || ptr != digits.data() + digits.size()) fail();
    return v;
  };
  std::uint64_t num = 0;
  std::uint64_t den = 1;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    num = to_u64(text.substr(0, slash));
    den = to_u64(text.substr(slash + 1));
  } else if (auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 9) fail();
    den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    num = (whole.empty() ? 0 : to_u64(whole)) * den + to_u64(frac);
  } else {
    num = to_u64(text);
  }
  if (den == 0 || num > den) fail();
  const std::uint64_t g = std::gcd(num, den);
  return {num / g, den / g};
}

const Channel& ChannelSet::for_kind(TransferKind kind) const {
  return kind == TransferKind::read && read ? *read : write;
}

}  // namespace tcx
