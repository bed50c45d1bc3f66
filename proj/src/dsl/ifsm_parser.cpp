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

#include <limits>
#include <map>
#include <sstream>

#include "lexer.hpp"
#include "tcx/dsl.hpp"

namespace tcx {

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? "parse-error" : diagnostics.front().code,
            diagnostics.empty() ? "parse error" : diagnostics.front().message),
      diagnostics_(std::move(diagnostics)) {
  if (diagnostics_.empty()) diagnostics_.push_back({"parse-error", what(), {}, {}});
}

namespace {

using dsl::Cursor;
using dsl::Token;
using dsl::TokenKind;

struct PvtKeyword {
  std::string_view word;
  ActionKind send;
  ActionKind receive;
};

constexpr PvtKeyword kPvtKeywords[] = {
    {"begin_call", ActionKind::begin_call_send, ActionKind::begin_call_receive},
    {"end_call", ActionKind::end_call_send, ActionKind::end_call_receive},
    {"payload", ActionKind::payload_send, ActionKind::payload_receive},
    {"delay", ActionKind::delay_send, ActionKind::delay_receive},
    {"response", ActionKind::response_send, ActionKind::response_receive},
};

StateId to_state(const Token& tok) {
  if (tok.text.size() > 9 || std::stoll(tok.text) > std::numeric_limits<StateId>::max()) {
    Cursor::fail_at(tok.span, "integer-overflow", "state id '" + tok.text + "' too large");
  }
  return static_cast<StateId>(std::stoll(tok.text));
}

class IfsmParser {
 public:
  explicit IfsmParser(std::string_view text) : cur_(dsl::tokenize(text)) {}

  InterfaceFsm parse() {
    if (cur_.at(TokenKind::end)) {
      cur_.fail("empty-input", "input is empty", {"'ifsm'"});
    }
    cur_.expect_word("ifsm");
    cur_.expect_word("v1");
    cur_.expect_word("fsm");
    Token name = cur_.expect(TokenKind::ident);
    fsm_.name = name.text;
    name_span_ = name.span;
    cur_.expect(TokenKind::lbrace);
    parse_headers();
    parse_declarations();
    cur_.expect_word("initial");
    cur_.expect(TokenKind::equals);
    Token init = cur_.expect(TokenKind::integer);
    fsm_.initial = to_state(init);
    note_state(fsm_.initial, init.span);
    cur_.expect(TokenKind::semicolon);
    cur_.expect_word("final");
    cur_.expect(TokenKind::equals);
    Token fin = cur_.expect(TokenKind::integer);
    fsm_.final_state = to_state(fin);
    note_state(fsm_.final_state, fin.span);
    cur_.expect(TokenKind::semicolon);
    while (cur_.at_word("on")) parse_edge();
    if (!cur_.at(TokenKind::rbrace)) {
      cur_.fail("unexpected-token", "expected 'on' or '}', found '" + cur_.peek().text + "'",
                {"'on'", "'}'"});
    }
    cur_.take();
    if (!cur_.at(TokenKind::end)) {
      cur_.fail("trailing-input", "unexpected input after the closing '}'",
                {"end of input"});
    }
    InterfaceFsm fsm = canonicalize(std::move(fsm_));
    check(fsm);
    return fsm;
  }

 private:
  void parse_headers() {
    std::optional<Token> role, level, clock;
    while (cur_.at_word("role") || cur_.at_word("level") || cur_.at_word("clock_period")) {
      Token key = cur_.take();
      auto dup = [&](const std::optional<Token>& seen) {
        if (seen) {
          Cursor::fail_at(key.span, "duplicate-header",
                          "'" + key.text + "' given more than once");
        }
      };
      cur_.expect(TokenKind::equals);
      if (key.text == "role") {
        dup(role);
        role = key;
        fsm_.role = cur_.expect_word({"initiator", "target"}).text == "initiator"
                        ? Role::initiator
                        : Role::target;
      } else if (key.text == "level") {
        dup(level);
        level = key;
        fsm_.level = cur_.expect_word({"ca", "pvt"}).text == "ca" ? Level::ca : Level::pvt;
      } else {
        dup(clock);
        clock = key;
        Token value = cur_.expect(TokenKind::integer);
        if (value.text.size() > 12 || std::stoll(value.text) <= 0) {
          Cursor::fail_at(value.span, "invalid-clock-period",
                          "clock period must be a positive number of nanoseconds");
        }
        fsm_.clock_period_ns = std::stoll(value.text);
        cur_.expect_word("ns");
      }
      cur_.expect(TokenKind::semicolon);
    }
    if (!role) cur_.fail("missing-role", "FSM header lacks 'role = ...;'", {"'role'"});
    if (!level) cur_.fail("missing-level", "FSM header lacks 'level = ...;'", {"'level'"});
    if (fsm_.level == Level::pvt && clock) {
      Cursor::fail_at(clock->span, "clock-period-forbidden-at-pvt",
                      "clock_period is not allowed at the pvt level");
    }
    if (fsm_.level == Level::ca && !clock) {
      cur_.fail("clock-period-missing", "CA FSMs need 'clock_period = N ns;'",
                {"'clock_period'"});
    }
  }

  void parse_declarations() {
    while (cur_.at_word("signal") || cur_.at_word("field")) {
      Token key = cur_.take();
      Token name = cur_.expect(TokenKind::ident);
      if (dsl::is_reserved(name.text)) {
        Cursor::fail_at(name.span, "reserved-word", "'" + name.text + "' is reserved");
      }
      if (key.text == "field") {
        if (fsm_.level == Level::ca) {
          Cursor::fail_at(key.span, "field-forbidden-at-ca",
                          "payload fields are only declared at the pvt level");
        }
        fsm_.payload_fields.push_back(name.text);
        field_spans_.emplace(name.text, name.span);
        cur_.expect(TokenKind::semicolon);
        continue;
      }
      if (fsm_.level == Level::pvt) {
        Cursor::fail_at(key.span, "signal-forbidden-at-pvt",
                        "signals are only declared at the ca level");
      }
      cur_.expect(TokenKind::colon);
      SignalDecl decl{name.text, SignalKind::data, true};
      decl.kind = cur_.expect_word({"data", "handshake"}).text == "data" ? SignalKind::data
                                                                         : SignalKind::handshake;
      if (cur_.accept_word("active")) {
        decl.active_high = cur_.expect_word({"high", "low"}).text == "high";
      }
      cur_.expect(TokenKind::semicolon);
      fsm_.signals.push_back(decl);
      signal_spans_.emplace(name.text, name.span);
    }
  }

  Action parse_action() {
    const Token name = cur_.peek();
    Action action = dsl::parse_action(cur_);
    if (action.is_signal_action()) signal_spans_.emplace(action.signal, name.span);
    return action;
  }

  void parse_edge() {
    Token on = cur_.take();
    Token from = cur_.expect(TokenKind::integer);
    cur_.expect(TokenKind::arrow);
    Token to = cur_.expect(TokenKind::integer);
    cur_.expect(TokenKind::colon);
    Transition t{to_state(from), to_state(to), {}};
    note_state(t.from, from.span);
    note_state(t.to, to.span);
    t.actions.push_back(parse_action());
    while (cur_.accept(TokenKind::comma)) t.actions.push_back(parse_action());
    Token semi = cur_.expect(TokenKind::semicolon);
    SourceSpan span = on.span;
    if (semi.span.line == on.span.line) span.length = semi.span.column - on.span.column + 1;
    fsm_.transitions.push_back(t);
    edge_spans_.emplace_back(std::move(t), span);
  }

  void note_state(StateId s, const SourceSpan& span) { state_spans_.emplace(s, span); }

  SourceSpan span_of(const InterfaceFsm& fsm, const Violation& v) const {
    if (v.transition && *v.transition < fsm.transitions.size()) {
      for (const auto& [t, span] : edge_spans_) {
        if (t == fsm.transitions[*v.transition]) return span;
      }
    }
    if (v.signal) {
      if (auto it = signal_spans_.find(*v.signal); it != signal_spans_.end()) return it->second;
    }
    if (v.state) {
      if (auto it = state_spans_.find(*v.state); it != state_spans_.end()) return it->second;
    }
    return name_span_;
  }

  void check(const InterfaceFsm& fsm) const {
    ValidationReport report = validate(fsm);
    if (report.ok()) return;
    std::vector<Diagnostic> diagnostics;
    for (const auto& v : report.violations) {
      SourceSpan span = span_of(fsm, v);
      diagnostics.push_back({v.code,
                             "line " + std::to_string(span.line) + ", column " +
                                 std::to_string(span.column) + ": " + v.message,
                             span,
                             {}});
    }
    throw ParseError(std::move(diagnostics));
  }

  Cursor cur_;
  InterfaceFsm fsm_;
  SourceSpan name_span_;
  std::vector<std::pair<Transition, SourceSpan>> edge_spans_;
  std::map<StateId, SourceSpan> state_spans_;
  std::map<std::string, SourceSpan> signal_spans_;
  std::map<std::string, SourceSpan> field_spans_;
};

}  // namespace

namespace dsl {

Action parse_action(Cursor& cur) {
  Token name = cur.expect(TokenKind::ident);
  if (name.text == "consume_delay") return Action::of(ActionKind::consume_delay_cycle);
  if (name.text == "delay_elapsed") return Action::of(ActionKind::delay_elapsed);
  for (const auto& kw : kPvtKeywords) {
    if (name.text != kw.word) continue;
    if (cur.accept(TokenKind::bang)) return Action::of(kw.send);
    if (cur.accept(TokenKind::question)) return Action::of(kw.receive);
    cur.fail("unexpected-token", "expected '!' or '?' after '" + name.text + "'",
             {"'!'", "'?'"});
  }
  bool drive = false;
  if (cur.accept(TokenKind::bang)) {
    drive = true;
  } else if (!cur.accept(TokenKind::question)) {
    cur.fail("unexpected-token", "expected '!' or '?' after signal '" + name.text + "'",
             {"'!'", "'?'"});
  }
  if (!cur.at(TokenKind::integer)) {
    return drive ? Action::drive_data(name.text) : Action::sample_data(name.text);
  }
  Token bit = cur.take();
  if (bit.text != "0" && bit.text != "1") {
    Cursor::fail_at(bit.span, "invalid-level", "signal level must be 0 or 1");
  }
  const int level = bit.text == "1" ? 1 : 0;
  return drive ? Action::drive_level(name.text, level)
               : Action::require_level(name.text, level);
}

}  // namespace dsl

InterfaceFsm parse_interface_spec(std::string_view text) {
  return IfsmParser(text).parse();
}

std::string serialize_fsm(const InterfaceFsm& input) {
  const InterfaceFsm fsm = canonicalize(input);
  std::ostringstream out;
  out << "ifsm v1\n";
  out << "fsm " << fsm.name << " {\n";
  out << "  role = " << to_string(fsm.role) << ";\n";
  out << "  level = " << to_string(fsm.level) << ";";
  if (fsm.level == Level::ca) out << " clock_period = " << fsm.clock_period_ns << " ns;";
  out << "\n";
  for (const auto& s : fsm.signals) {
    out << "  signal " << s.name << " : " << to_string(s.kind);
    if (!s.active_high) out << " active low";
    out << ";\n";
  }
  for (const auto& f : fsm.payload_fields) out << "  field " << f << ";\n";
  out << "  initial = " << fsm.initial << "; final = " << fsm.final_state << ";\n";
  for (const auto& t : fsm.transitions) out << "  on " << to_string(t) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace tcx
