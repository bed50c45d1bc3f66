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
#include <cstring>
#include <random>

#include "tcx/dsl.hpp"
#include "tcx/protocols.hpp"
#include "test_support.hpp"

namespace tcx {
namespace {

constexpr std::string_view kMinimal =
    "ifsm v1\n"
    "fsm m {\n"
    "  role = initiator; level = ca; clock_period = 10 ns;\n"
    "  signal H : handshake;\n"
    "  initial = 0; final = 1;\n"
    "  on 0 -> 1 : H!1; }\n";

ParseError parse_failure(std::string_view text, bool mapping = false) {
  try {
    if (mapping) {
      parse_payload_mapping(text);
    } else {
      parse_interface_spec(text);
    }
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "expected a parse error for:\n" << text;
  return ParseError({});
}

TEST(Dsl, ParsesMinimalFsm) {
  const InterfaceFsm fsm = parse_interface_spec(kMinimal);
  EXPECT_EQ(fsm.name, "m");
  EXPECT_EQ(fsm.role, Role::initiator);
  EXPECT_EQ(fsm.level, Level::ca);
  EXPECT_EQ(fsm.clock_period_ns, 10);
  ASSERT_EQ(fsm.signals.size(), 1u);
  EXPECT_EQ(fsm.signals[0].kind, SignalKind::handshake);
  EXPECT_TRUE(fsm.signals[0].active_high);
  ASSERT_EQ(fsm.transitions.size(), 1u);
  EXPECT_EQ(fsm.transitions[0].actions[0], Action::drive_level("H", 1));
  EXPECT_EQ(fsm.states, (std::set<StateId>{0, 1}));
}

TEST(Dsl, ParsesReferenceWriteTarget) {
  const InterfaceFsm& t = reference_models().write.ca_target;
  EXPECT_EQ(t.role, Role::target);
  EXPECT_EQ(t.final_state, 5);
  EXPECT_EQ(t.transitions.size(), 8u);
  EXPECT_EQ(t.find_signal("HWDATA")->kind, SignalKind::data);
  EXPECT_EQ(t.outdegree(4), 2u);
}

TEST(Dsl, CommentsAndActiveLow) {
  const InterfaceFsm fsm = parse_interface_spec(
      "# leading comment\n"
      "ifsm v1\n"
      "fsm m { # trailing\n"
      "  role = target; level = ca; clock_period = 20 ns;\n"
      "  signal READY : handshake active low;\n"
      "  initial = 0; final = 1;\n"
      "  on 0 -> 1 : READY!0; }\n");
  EXPECT_FALSE(fsm.find_signal("READY")->active_high);
  EXPECT_EQ(fsm.clock_period_ns, 20);
}

TEST(Dsl, SyntaxErrorCarriesSpanAndExpectedSet) {
  const std::string text = std::string(kMinimal).replace(std::string(kMinimal).find("H!1"), 3, "H!1 ]");
  const ParseError e = parse_failure(text);
  EXPECT_EQ(e.code(), "unexpected-token");
  EXPECT_EQ(e.span().line, 6);
  EXPECT_GT(e.span().column, 1);
  EXPECT_FALSE(e.diagnostics().front().expected.empty());
}

TEST(Dsl, UnexpectedCharacterIsLocated) {
  const ParseError e = parse_failure("ifsm v1\nfsm m $ {");
  EXPECT_EQ(e.code(), "unexpected-character");
  EXPECT_EQ(e.span().line, 2);
  EXPECT_EQ(e.span().column, 7);
}

TEST(Dsl, SemanticErrorsPointAtTheirSource) {
  std::string text(kMinimal);
  text.replace(text.find("H!1"), 3, "X!1");
  const ParseError undeclared = parse_failure(text);
  EXPECT_EQ(undeclared.code(), "undeclared-signal");
  EXPECT_EQ(undeclared.span().line, 6);

  std::string pvt_with_clock =
      "ifsm v1\nfsm p { role = target; level = pvt; clock_period = 10 ns; field a;\n"
      "initial = 0; final = 1; on 0 -> 1 : begin_call?; }";
  EXPECT_EQ(parse_failure(pvt_with_clock).code(), "clock-period-forbidden-at-pvt");

  EXPECT_EQ(parse_failure("").code(), "empty-input");
  EXPECT_EQ(parse_failure(std::string(kMinimal) + "junk").code(), "trailing-input");
  EXPECT_EQ(parse_failure(std::string(kMinimal).replace(std::string(kMinimal).find("final = 1"),
                                                         9, "final = 99999999999"))
                .code(),
            "integer-overflow");
}

TEST(Dsl, ValidationFailuresListEveryViolation) {
  const ParseError e = parse_failure(
      "ifsm v1\nfsm x { role = target; level = ca; clock_period = 10 ns;\n"
      "signal H : handshake; initial = 0; final = 1;\n"
      "on 0 -> 2 : H!1; on 0 -> 1 : H!1, Q?; }");
  EXPECT_GE(e.diagnostics().size(), 2u);
  for (const auto& d : e.diagnostics()) {
    EXPECT_GE(d.span.line, 1);
    EXPECT_LE(d.span.line, 4);
  }
}

TEST(Dsl, RoundTripIsFixedPointForShippedFiles) {
  for (const auto& file : reference_files()) {
    const std::string_view name = file.name;
    if (name.ends_with(".ifsm")) {
      const InterfaceFsm fsm = parse_interface_spec(file.text);
      const std::string text = serialize_fsm(fsm);
      EXPECT_EQ(text, file.text) << name;
      EXPECT_EQ(parse_interface_spec(text), fsm) << name;
    } else {
      const PayloadMapping map = parse_payload_mapping(file.text);
      const std::string text = serialize_mapping(map);
      EXPECT_EQ(text, file.text) << name;
      EXPECT_EQ(parse_payload_mapping(text), map) << name;
    }
  }
}

TEST(Dsl, RoundTripIsFixedPointForRandomFsms) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const InterfaceFsm fsm = testing::random_fsm(rng);
    const std::string once = serialize_fsm(fsm);
    const InterfaceFsm back = parse_interface_spec(once);
    ASSERT_EQ(back, fsm) << once;
    ASSERT_EQ(serialize_fsm(back), once);
  }
}

TEST(Dsl, SingleStateFsmIsSixLines) {
  InterfaceFsm one;
  one.name = "one";
  one.role = Role::target;
  one.level = Level::pvt;
  const std::string text = serialize_fsm(canonicalize(one));
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 6);
  EXPECT_EQ(parse_interface_spec(text), canonicalize(one));
}

TEST(Dsl, ComplementChangesOnlyMarksAndRole) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    const InterfaceFsm fsm = testing::random_fsm(rng);
    std::string a = serialize_fsm(fsm);
    std::string b = serialize_fsm(complement(fsm));
    ASSERT_EQ(a.size() + (fsm.role == Role::initiator ? -3 : 3), b.size());
    for (std::string* s : {&a, &b}) {
      for (const char* role : {"role = initiator;", "role = target;"}) {
        if (const auto at = s->find(role); at != std::string::npos) s->replace(at, std::strlen(role), "");
      }
      std::replace(s->begin(), s->end(), '?', '!');
    }
    EXPECT_EQ(a, b);
  }
}

TEST(Dsl, RoundTripOfPreparedTargetKeepsDelayControl) {
  const InterfaceFsm prepared = prepare_target(reference_models().write.ca_target);
  const std::string text = serialize_fsm(prepared);
  EXPECT_NE(text.find("consume_delay"), std::string::npos);
  EXPECT_NE(text.find("delay_elapsed"), std::string::npos);
  EXPECT_EQ(parse_interface_spec(text), prepared);
}

TEST(Mapping, ParsesEntriesInOrder) {
  const PayloadMapping map = reference_models().write.mapping;
  ASSERT_EQ(map.entries.size(), 3u);
  EXPECT_EQ(map.entries[0].label(), "addr");
  EXPECT_EQ(map.entries[1].label(), "data[0]");
  EXPECT_EQ(map.entries[2].label(), "data[1]");
  EXPECT_TRUE(map.maps("HWDATA"));
  EXPECT_FALSE(map.maps("HREADY"));
}

TEST(Mapping, EmptyMapIsAccepted) {
  const PayloadMapping map = parse_payload_mapping("map m {}");
  EXPECT_TRUE(map.entries.empty());
  EXPECT_EQ(parse_payload_mapping(serialize_mapping(map)), map);
}

TEST(Mapping, RejectsMalformedEntries) {
  EXPECT_EQ(parse_failure("map m { data[1] <- A; }", true).code(), "non-contiguous-index");
  EXPECT_EQ(parse_failure("map m { a <- A; a <- B; }", true).code(), "duplicate-entry");
  EXPECT_EQ(parse_failure("map m { a <- A; a[0] <- B; }", true).code(), "mixed-indexing");
  EXPECT_EQ(parse_failure("map m { a <- A; } x", true).code(), "trailing-input");
  EXPECT_EQ(parse_failure("", true).code(), "empty-input");
  const ParseError e = parse_failure("map m {\n  a <- A;\n  a <- B;\n}", true);
  EXPECT_EQ(e.span().line, 3);
  EXPECT_EQ(e.span().column, 3);
}

TEST(Mapping, CheckMappingMatchesParser) {
  PayloadMapping ok{"m", {{"a", std::nullopt, "A"}, {"d", 0, "D"}, {"d", 1, "D"}}};
  EXPECT_FALSE(check_mapping(ok).has_value());
  PayloadMapping gap{"m", {{"d", 0, "D"}, {"d", 2, "D"}}};
  EXPECT_EQ(check_mapping(gap), "non-contiguous-index");
}

}  // namespace
}  // namespace tcx
