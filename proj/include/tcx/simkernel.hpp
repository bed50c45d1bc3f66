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
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcx/ifsm.hpp"
#include "tcx/synth.hpp"
#include "tcx/workload.hpp"

namespace tcx {

using TimeNs = std::int64_t;

struct LocalClock {
  std::string owner;
  TimeNs now_ns = 0;
  TimeNs period_ns = 0;  // 0 for an event-timed PVT clock

  bool operator==(const LocalClock&) const = default;
};

// Moves a CA clock forward by whole cycles. Throws SimulationError
// "invalid-advance" for a PVT clock or a non-positive cycle count.
LocalClock advance_local_clock(const LocalClock& clock, std::int64_t cycles);

struct ClockWrap {
  TimeNs pvt_end_ns = 0;
  std::int64_t hold_cycles = 0;

  bool operator==(const ClockWrap&) const = default;
};

// End time of a call issued at `begin_ns` that took `returned_delay_ns`, and
// how many extra cycles the CA side must hold its handshake inactive when
// it would otherwise finish at `ca_now_ns`. Throws "delay-underrun".
ClockWrap wrap_clock_for_call(TimeNs begin_ns, TimeNs returned_delay_ns, TimeNs ca_now_ns,
                              TimeNs period_ns);

enum class RecordSide : std::uint8_t { ca, pvt };

std::string_view to_string(RecordSide side);  // "CA" / "PVT"

struct TransactionRecord {
  std::uint64_t txn_id = 0;
  RecordSide side = RecordSide::ca;
  TimeNs begin_ns = 0;
  TimeNs end_ns = 0;
  std::uint64_t payload_digest = 0;

  auto operator<=>(const TransactionRecord&) const = default;
};

struct SimEvent {
  TimeNs time_ns = 0;
  std::string component;
  std::string description;

  bool operator==(const SimEvent&) const = default;
};

struct SimTrace {
  std::vector<TransactionRecord> records;  // sorted by (txn_id, side)
  std::vector<SimEvent> events;            // in execution order

  bool operator==(const SimTrace&) const = default;
};

// Per-transaction delay of the PVT slave: a base latency plus, with the
// given probability, a uniformly drawn number of contention cycles. Each
// transaction's draw depends only on (seed, txn_id).
struct DelayModel {
  std::int64_t base_latency_cycles = 5;
  std::uint64_t contention_numerator = 0;  // probability numerator/denominator
  std::uint64_t contention_denominator = 1;
  std::int64_t contention_min_cycles = 1;
  std::int64_t contention_max_cycles = 4;
  std::uint64_t seed = 0;

  // Throws SimulationError "invalid-delay-model" when out of range.
  void check() const;
  std::int64_t delay_cycles(std::uint64_t txn_id) const;
};

// Parses "0.3", "3/10" or "1" into a reduced fraction in [0, 1]. Throws
// Error "invalid-probability".
std::pair<std::uint64_t, std::uint64_t> parse_probability(std::string_view text);

enum class TimingMode : std::uint8_t {
  coherent,      // local clocks, wrapping and delay consumption
  conventional,  // single clock, call issued when collection completes
};

struct SimOptions {
  TimingMode mode = TimingMode::coherent;
  // Replaces the delay model when set, in nanoseconds.
  std::function<TimeNs(std::uint64_t txn_id)> delay_ns;
  // Reject delays that are not whole cycles instead of rounding them up.
  bool strict_alignment = false;
  std::int64_t max_cycles_per_transfer = 1'000'000;
};

// The components behind one kind of transfer. With a transactor the slave
// is a PVT target; without one the slave is a prepared CA target and the
// run is the pure-CA reference.
struct Channel {
  InterfaceFsm master;
  std::optional<TransactorFsm> transactor;
  InterfaceFsm slave;
};

struct ChannelSet {
  Channel write;
  std::optional<Channel> read;  // reads use `write` when absent

  const Channel& for_kind(TransferKind kind) const;
};

// Executes every transfer of the workload and records both sides'
// transaction boundaries. Throws SimulationError "protocol-deadlock",
// "delay-underrun" or "delay-not-cycle-multiple" carrying the txn_id.
SimTrace run_cosimulation(const InterfaceFsm& master, const TransactorFsm& transactor,
                          const InterfaceFsm& slave, const WorkloadSpec& workload,
                          const DelayModel& delays, const SimOptions& options = {});
SimTrace run_cosimulation(const ChannelSet& channels, const WorkloadSpec& workload,
                          const DelayModel& delays, const SimOptions& options = {});

// Pure-CA run of a master against a prepared CA target slave.
SimTrace run_reference(const InterfaceFsm& master, const InterfaceFsm& slave,
                       const WorkloadSpec& workload, const DelayModel& delays,
                       const SimOptions& options = {});

struct TransactionPair {
  TransactionRecord ca;
  TransactionRecord pvt;
};

// Throws CompareError "orphan-record".
std::vector<TransactionPair> extract_transactions(const SimTrace& trace);

struct TransactionVerdict {
  std::uint64_t txn_id = 0;
  bool erroneous = false;
  bool payload_mismatch = false;
};

struct ErrorReport {
  std::vector<TransactionVerdict> verdicts;
  std::uint64_t erroneous = 0;
  std::uint64_t total = 0;
  std::uint64_t payload_mismatches = 0;

  bool zero() const { return erroneous == 0; }
  std::string rate_text() const;  // "3/100 = 3.0%"
};

// A transaction is erroneous when any of its four boundaries differs from
// the reference. Throws CompareError "workload-mismatch".
ErrorReport compare_traces(const SimTrace& test, const SimTrace& reference);

std::string format_digest(std::uint64_t digest);  // 16 lowercase hex digits

std::string serialize_trace(const SimTrace& trace);   // CSV with header
SimTrace parse_trace(std::string_view text);          // Error "malformed-trace"
std::string serialize_events(const SimTrace& trace);  // time_ns,component,description

}  // namespace tcx
