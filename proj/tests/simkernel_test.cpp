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

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "tcx/error.hpp"
#include "tcx/protocols.hpp"
#include "tcx/simkernel.hpp"
#include "test_support.hpp"

namespace tcx {
namespace {

WorkloadSpec single_write() {
  return WorkloadSpec{{Transfer{TransferKind::write, 1, 0, 0x1234}}, 1};
}

SimOptions fixed_delay(TimeNs ns, TimingMode mode = TimingMode::coherent) {
  SimOptions o;
  o.mode = mode;
  o.delay_ns = [ns](std::uint64_t) { return ns; };
  return o;
}

SimTrace run_single(TimeNs delay, const ChannelSet& channels, TimingMode mode = TimingMode::coherent) {
  return run_cosimulation(channels, single_write(), DelayModel{}, fixed_delay(delay, mode));
}

std::string sim_error_code(const std::function<void()>& f, std::optional<std::uint64_t>* txn = nullptr) {
  try {
    f();
  } catch (const SimulationError& e) {
    if (txn) *txn = e.txn_id();
    return e.code();
  }
  return "";
}

const ReferenceModels& models() { return reference_models(); }

// ---- clocks -------------------------------------------------------------

TEST(Clock, AdvanceMovesOnlyItsOwnClock) {
  const LocalClock ca{"ca", 0, 10};
  const LocalClock pvt{"pvt", 0, 0};
  const LocalClock moved = advance_local_clock(ca, 5);
  EXPECT_EQ(moved.now_ns, 50);
  EXPECT_EQ(moved.period_ns, 10);
  EXPECT_EQ(pvt.now_ns, 0);
  EXPECT_EQ(ca.now_ns, 0);
}

TEST(Clock, AdvanceRejectsBadInput) {
  EXPECT_EQ(sim_error_code([] { advance_local_clock({"ca", 0, 10}, 0); }), "invalid-advance");
  EXPECT_EQ(sim_error_code([] { advance_local_clock({"pvt", 0, 0}, 1); }), "invalid-advance");
}

TEST(Clock, WrapExamples) {
  EXPECT_EQ(wrap_clock_for_call(0, 50, 50, 10), (ClockWrap{50, 0}));
  EXPECT_EQ(wrap_clock_for_call(0, 70, 50, 10), (ClockWrap{70, 2}));
  EXPECT_EQ(wrap_clock_for_call(100, 90, 150, 10), (ClockWrap{190, 4}));
  EXPECT_EQ(sim_error_code([] { wrap_clock_for_call(0, 40, 50, 10); }), "delay-underrun");
}

TEST(Clock, WrapAgreesWithArithmeticOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const TimeNs period = 5 * static_cast<TimeNs>(1 + rng() % 4);
    const TimeNs begin = period * static_cast<TimeNs>(rng() % 100);
    const TimeNs now = begin + period * static_cast<TimeNs>(rng() % 10);
    const TimeNs delay = period * static_cast<TimeNs>(rng() % 20);
    if (begin + delay < now) {
      EXPECT_EQ(sim_error_code([&] { wrap_clock_for_call(begin, delay, now, period); }),
                "delay-underrun");
      continue;
    }
    const ClockWrap w = wrap_clock_for_call(begin, delay, now, period);
    EXPECT_EQ(w.pvt_end_ns, begin + delay);
    EXPECT_EQ(now + w.hold_cycles * period, w.pvt_end_ns);
  }
}

// ---- delay model --------------------------------------------------------

TEST(DelayModel, SameSeedSameDelays) {
  DelayModel a;
  a.contention_numerator = 3;
  a.contention_denominator = 10;
  a.seed = 77;
  DelayModel b = a;
  for (std::uint64_t t = 0; t < 500; ++t) EXPECT_EQ(a.delay_cycles(t), b.delay_cycles(t));
}

TEST(DelayModel, ContentionStaysInRange) {
  DelayModel none;
  for (std::uint64_t t = 0; t < 100; ++t) EXPECT_EQ(none.delay_cycles(t), 5);
  DelayModel always;
  always.contention_numerator = 1;
  always.contention_denominator = 1;
  always.contention_min_cycles = 2;
  always.contention_max_cycles = 6;
  std::set<std::int64_t> seen;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const auto d = always.delay_cycles(t);
    EXPECT_GE(d, 7);
    EXPECT_LE(d, 11);
    seen.insert(d);
  }
  EXPECT_EQ(seen.size(), 5u);

  DelayModel some;
  some.contention_numerator = 3;
  some.contention_denominator = 10;
  int contended = 0;
  for (std::uint64_t t = 0; t < 10000; ++t) contended += some.delay_cycles(t) > 5;
  EXPECT_GT(contended, 2700);
  EXPECT_LT(contended, 3300);
}

TEST(DelayModel, ProbabilityParsing) {
  using Frac = std::pair<std::uint64_t, std::uint64_t>;
  EXPECT_EQ(parse_probability("0.3"), Frac(3, 10));
  EXPECT_EQ(parse_probability("3/10"), Frac(3, 10));
  EXPECT_EQ(parse_probability("1"), Frac(1, 1));
  EXPECT_EQ(parse_probability("0.25"), Frac(1, 4));
  for (const char* bad : {"1.5", "-1", "x", "3/0", ""}) {
    EXPECT_THROW(parse_probability(bad), Error) << bad;
  }
}

TEST(DelayModel, CheckRejectsOutOfRange) {
  DelayModel bad;
  bad.contention_min_cycles = 5;
  bad.contention_max_cycles = 2;
  EXPECT_EQ(sim_error_code([&] { bad.check(); }), "invalid-delay-model");
}

// ---- single transaction scenario ----------------------------------------

TEST(Kernel, CollectionTimeDelayGivesEqualBoundaries) {
  const SimTrace trace = run_single(50, coherent_channels(models()));
  ASSERT_EQ(trace.records.size(), 2u);
  for (const auto& r : trace.records) {
    EXPECT_EQ(r.begin_ns, 0);
    EXPECT_EQ(r.end_ns, 50);
  }
  EXPECT_EQ(trace.records[0].side, RecordSide::ca);
  EXPECT_EQ(trace.records[1].side, RecordSide::pvt);
  for (const auto& e : trace.events) {
    EXPECT_EQ(e.description.find("hold handshake for"), std::string::npos) << e.description;
  }
}

TEST(Kernel, LongerDelayStretchesFinalHandshake) {
  const SimTrace trace = run_single(70, coherent_channels(models()));
  for (const auto& r : trace.records) {
    EXPECT_EQ(r.begin_ns, 0);
    EXPECT_EQ(r.end_ns, 70);
  }
  const auto hold = std::find_if(trace.events.begin(), trace.events.end(), [](const SimEvent& e) {
    return e.description == "hold handshake for 2 extra cycles";
  });
  EXPECT_NE(hold, trace.events.end());
}

TEST(Kernel, PvtClockStaysBehindDuringCollection) {
  const SimTrace trace = run_single(50, coherent_channels(models()));
  const auto call = std::find_if(trace.events.begin(), trace.events.end(), [](const SimEvent& e) {
    return e.component == "slave" && e.description.find("call begins") != std::string::npos;
  });
  ASSERT_NE(call, trace.events.end());
  EXPECT_EQ(call->time_ns, 0);
  const auto ret = std::find_if(trace.events.begin(), trace.events.end(), [](const SimEvent& e) {
    return e.component == "slave" && e.description.find("call returns") != std::string::npos;
  });
  ASSERT_NE(ret, trace.events.end());
  EXPECT_EQ(ret->time_ns, 50);
}

TEST(Kernel, UnderrunCarriesTransactionId) {
  WorkloadSpec two = single_write();
  two.transfers.push_back(two.transfers.front());
  SimOptions options;
  options.delay_ns = [](std::uint64_t txn) { return txn == 1 ? 30 : 50; };
  std::optional<std::uint64_t> txn;
  EXPECT_EQ(sim_error_code(
                [&] { run_cosimulation(coherent_channels(models()), two, DelayModel{}, options); },
                &txn),
            "delay-underrun");
  EXPECT_EQ(txn, 1u);
}

TEST(Kernel, UnalignedDelayRoundsUpOrFailsWhenStrict) {
  const SimTrace trace = run_single(55, coherent_channels(models()));
  for (const auto& r : trace.records) EXPECT_EQ(r.end_ns, 60);
  EXPECT_TRUE(std::any_of(trace.events.begin(), trace.events.end(),
                          [](const SimEvent& e) { return e.component == "kernel"; }));
  SimOptions strict = fixed_delay(55);
  strict.strict_alignment = true;
  EXPECT_EQ(sim_error_code([&] {
              run_cosimulation(coherent_channels(models()), single_write(), DelayModel{}, strict);
            }),
            "delay-not-cycle-multiple");
}

TEST(Kernel, MismatchedComponentsDeadlock) {
  const auto& w = models().write;
  const TransactorFsm read_g = synthesize(models().read);
  std::optional<std::uint64_t> txn;
  EXPECT_EQ(sim_error_code(
                [&] {
                  run_cosimulation(w.ca_initiator, read_g, w.pvt_target, single_write(),
                                   DelayModel{}, fixed_delay(50));
                },
                &txn),
            "protocol-deadlock");
  EXPECT_EQ(txn, 0u);
}

TEST(Kernel, ConventionalBaselineIssuesLate) {
  const SimTrace trace = run_single(50, conventional_channels(models()), TimingMode::conventional);
  ASSERT_EQ(trace.records.size(), 2u);
  const auto& ca = trace.records[0];
  const auto& pvt = trace.records[1];
  // Collection of addr and two data beats takes three 10 ns cycles.
  EXPECT_EQ(ca.begin_ns, 0);
  EXPECT_EQ(pvt.begin_ns, 30);
  EXPECT_EQ(pvt.end_ns, 80);
  EXPECT_GT(pvt.begin_ns, ca.begin_ns);

  const SimTrace ref = run_single(50, reference_channels(models()));
  const ErrorReport report = compare_traces(trace, ref);
  EXPECT_EQ(report.erroneous, 1u);
  EXPECT_EQ(report.rate_text(), "1/1 = 100.0%");
}

TEST(Kernel, ReferenceRunMatchesCoherentRun) {
  for (TimeNs d : {50, 60, 70, 120}) {
    const SimTrace ref = run_single(d, reference_channels(models()));
    const SimTrace mixed = run_single(d, coherent_channels(models()));
    EXPECT_EQ(ref.records, mixed.records) << d;
  }
}

// ---- randomized runs ----------------------------------------------------

struct RunSetup {
  WorkloadSpec workload;
  DelayModel delays;
};

RunSetup random_setup(std::uint64_t seed, WorkloadKind kind, std::size_t n) {
  RunSetup s{generate_workload(kind, n, seed), DelayModel{}};
  s.delays.contention_numerator = 3;
  s.delays.contention_denominator = 10;
  s.delays.seed = seed;
  return s;
}

TEST(Kernel, CoherentRunsMatchReferenceAndDelay) {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (auto kind : {WorkloadKind::general_channel, WorkloadKind::multimedia, WorkloadKind::mixed}) {
      const RunSetup s = random_setup(seed, kind, 300);
      const SimTrace test = run_cosimulation(coherent_channels(models()), s.workload, s.delays);
      const SimTrace ref = run_cosimulation(reference_channels(models()), s.workload, s.delays);
      EXPECT_TRUE(compare_traces(test, ref).zero());
      const auto pairs = extract_transactions(test);
      ASSERT_EQ(pairs.size(), s.workload.transfers.size());
      for (const auto& p : pairs) {
        EXPECT_EQ(p.ca.begin_ns, p.pvt.begin_ns);
        EXPECT_EQ(p.ca.end_ns, p.pvt.end_ns);
        EXPECT_EQ(p.ca.end_ns - p.ca.begin_ns, 10 * s.delays.delay_cycles(p.ca.txn_id));
        EXPECT_EQ(p.ca.payload_digest, p.pvt.payload_digest);
      }
      EXPECT_TRUE(testing::per_component_monotone(test));
      EXPECT_TRUE(testing::per_component_monotone(ref));
    }
  }
}

TEST(Kernel, TransactionsFollowWorkloadGaps) {
  const RunSetup s = random_setup(9, WorkloadKind::general_channel, 200);
  const SimTrace trace = run_cosimulation(coherent_channels(models()), s.workload, s.delays);
  const auto pairs = extract_transactions(trace);
  TimeNs prev_end = 0;
  for (const auto& p : pairs) {
    const auto& tr = s.workload.transfers[p.ca.txn_id];
    EXPECT_EQ(p.ca.begin_ns, prev_end + 10 * tr.idle_gap_cycles);
    prev_end = p.ca.end_ns;
  }
}

TEST(Kernel, RunsAreByteDeterministic) {
  const RunSetup s = random_setup(11, WorkloadKind::mixed, 200);
  const std::string a =
      serialize_trace(run_cosimulation(coherent_channels(models()), s.workload, s.delays));
  const std::string b =
      serialize_trace(run_cosimulation(coherent_channels(models()), s.workload, s.delays));
  EXPECT_EQ(a, b);
}

TEST(Kernel, ConventionalBaselineBeginsLateOnEveryTransaction) {
  const RunSetup s = random_setup(4, WorkloadKind::mixed, 300);
  SimOptions o;
  o.mode = TimingMode::conventional;
  const SimTrace trace = run_cosimulation(conventional_channels(models()), s.workload, s.delays, o);
  for (const auto& p : extract_transactions(trace)) EXPECT_GT(p.pvt.begin_ns, p.ca.begin_ns);
  EXPECT_TRUE(testing::per_component_monotone(trace));
}

TEST(Kernel, RandomProtocolsStayCoherent) {
  std::mt19937_64 rng(31337);
  for (int i = 0; i < 60; ++i) {
    const testing::RandomProtocol proto = testing::random_protocol(rng);
    const InterfaceFsm prepared = prepare_target(complement(proto.ca_initiator));
    const TransactorFsm g =
        generate_transactor(prepared, complement(proto.pvt_target), proto.mapping);
    const WorkloadSpec w = generate_workload(WorkloadKind::general_channel, 40, 100 + i);
    DelayModel delays;
    delays.base_latency_cycles = proto.beats + 3 + static_cast<std::int64_t>(rng() % 4);
    delays.contention_numerator = 1;
    delays.contention_denominator = 2;
    delays.seed = rng();
    const SimTrace test =
        run_cosimulation(proto.ca_initiator, g, proto.pvt_target, w, delays);
    const SimTrace ref = run_reference(proto.ca_initiator, prepared, w, delays);
    const ErrorReport report = compare_traces(test, ref);
    EXPECT_TRUE(report.zero()) << report.rate_text() << "\n" << serialize_transactor(g);
    for (const auto& p : extract_transactions(test)) {
      EXPECT_EQ(p.ca.begin_ns, p.pvt.begin_ns);
      EXPECT_EQ(p.ca.end_ns, p.pvt.end_ns);
    }
  }
}

// ---- traces -------------------------------------------------------------

TEST(Trace, CsvRoundTrip) {
  const RunSetup s = random_setup(3, WorkloadKind::multimedia, 50);
  const SimTrace trace = run_cosimulation(coherent_channels(models()), s.workload, s.delays);
  const std::string text = serialize_trace(trace);
  EXPECT_EQ(text.substr(0, text.find('\n')), "txn_id,side,begin_ns,end_ns,payload_digest");
  const SimTrace back = parse_trace(text);
  EXPECT_EQ(back.records, trace.records);
  EXPECT_EQ(serialize_trace(back), text);
}

TEST(Trace, MalformedCsvIsRejected) {
  for (const char* bad : {"", "txn_id,side,begin_ns,end_ns,payload_digest\n0,XX,0,50,00\n",
                          "nope\n", "txn_id,side,begin_ns,end_ns,payload_digest\n0,CA,50,0,"
                                    "0000000000000000\n"}) {
    try {
      parse_trace(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), "malformed-trace");
    }
  }
}

TEST(Trace, EventsCsvQuotesCommas) {
  SimTrace t;
  t.events.push_back({10, "master", "a, b"});
  const std::string csv = serialize_events(t);
  EXPECT_NE(csv.find("10,master,\"a, b\""), std::string::npos);
}

TEST(Trace, ExtractAndCompare) {
  EXPECT_TRUE(extract_transactions(SimTrace{}).empty());
  const SimTrace trace = run_single(50, coherent_channels(models()));
  const auto pairs = extract_transactions(trace);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(pairs[0].ca.end_ns, pairs[0].pvt.end_ns);

  EXPECT_TRUE(compare_traces(trace, trace).zero());
  EXPECT_EQ(compare_traces(trace, trace).rate_text(), "0/1 = 0.0%");

  SimTrace shifted = trace;
  shifted.records[1].end_ns += 10;
  const ErrorReport r = compare_traces(shifted, trace);
  EXPECT_EQ(r.erroneous, 1u);
  EXPECT_TRUE(r.verdicts[0].erroneous);

  SimTrace orphan = trace;
  orphan.records.pop_back();
  try {
    extract_transactions(orphan);
    ADD_FAILURE();
  } catch (const CompareError& e) {
    EXPECT_EQ(e.code(), "orphan-record");
  }

  SimTrace other = trace;
  for (auto& rec : other.records) rec.txn_id = 5;
  try {
    compare_traces(other, trace);
    ADD_FAILURE();
  } catch (const CompareError& e) {
    EXPECT_EQ(e.code(), "workload-mismatch");
  }
}

TEST(Trace, PayloadMismatchIsCountedSeparately) {
  const SimTrace trace = run_single(50, coherent_channels(models()));
  SimTrace other = trace;
  for (auto& r : other.records) r.payload_digest ^= 1;
  const ErrorReport r = compare_traces(other, trace);
  EXPECT_EQ(r.erroneous, 0u);
  EXPECT_EQ(r.payload_mismatches, 1u);
}

}  // namespace
}  // namespace tcx
