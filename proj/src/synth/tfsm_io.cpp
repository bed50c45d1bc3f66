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

#include <sstream>

#include "../dsl/lexer.hpp"
#include "tcx/synth.hpp"

namespace tcx {
namespace {

using dsl::Cursor;
using dsl::Token;
using dsl::TokenKind;

struct Flag {
  std::string_view name;
  bool LegalityContext::*member;
};

constexpr Flag kFlags[] = {
    {"payload_sent", &LegalityContext::payload_sent},
    {"payload_received", &LegalityContext::payload_received},
    {"response_sent", &LegalityContext::response_sent},
    {"response_received", &LegalityContext::response_received},
    {"delay_received", &LegalityContext::delay_received},
    {"delay_sent", &LegalityContext::delay_sent},
    {"call_open", &LegalityContext::call_open},
};

void write_side(std::ostream& out, std::string_view keyword, const SideInfo& s) {
  out << "  " << keyword << " " << s.name << " {\n";
  out << "    role = " << to_string(s.role) << ";\n";
  out << "    level = " << to_string(s.level) << ";";
  if (s.level == Level::ca) out << " clock_period = " << s.clock_period_ns << " ns;";
  out << "\n";
  for (const auto& sig : s.signals) {
    out << "    signal " << sig.name << " : " << to_string(sig.kind);
    if (!sig.active_high) out << " active low";
    out << ";\n";
  }
  for (const auto& f : s.payload_fields) out << "    field " << f << ";\n";
  out << "    initial = " << s.initial << "; final = " << s.final_state << ";\n";
  out << "  }\n";
}

StateId read_state(Cursor& cur) {
  Token tok = cur.expect(TokenKind::integer);
  if (tok.text.size() > 9) Cursor::fail_at(tok.span, "integer-overflow", "state id too large");
  return static_cast<StateId>(std::stoll(tok.text));
}

StatePair read_pair(Cursor& cur) {
  cur.expect(TokenKind::lparen);
  StatePair pair;
  pair.p = read_state(cur);
  cur.expect(TokenKind::comma);
  pair.q = read_state(cur);
  cur.expect(TokenKind::rparen);
  return pair;
}

SideInfo read_side(Cursor& cur, std::string_view keyword) {
  cur.expect_word(keyword);
  SideInfo s;
  s.name = cur.expect(TokenKind::ident).text;
  cur.expect(TokenKind::lbrace);
  cur.expect_word("role");
  cur.expect(TokenKind::equals);
  s.role = cur.expect_word({"initiator", "target"}).text == "initiator" ? Role::initiator
                                                                         : Role::target;
  cur.expect(TokenKind::semicolon);
  cur.expect_word("level");
  cur.expect(TokenKind::equals);
  s.level = cur.expect_word({"ca", "pvt"}).text == "ca" ? Level::ca : Level::pvt;
  cur.expect(TokenKind::semicolon);
  if (s.level == Level::ca) {
    cur.expect_word("clock_period");
    cur.expect(TokenKind::equals);
    Token value = cur.peek();
    s.clock_period_ns = cur.expect_int();
    if (s.clock_period_ns <= 0) {
      Cursor::fail_at(value.span, "invalid-clock-period", "clock period must be positive");
    }
    cur.expect_word("ns");
    cur.expect(TokenKind::semicolon);
  }
  while (cur.at_word("signal") || cur.at_word("field")) {
    Token key = cur.take();
    Token name = cur.expect(TokenKind::ident);
    if (key.text == "field") {
      if (s.level == Level::ca) {
        Cursor::fail_at(key.span, "field-forbidden-at-ca", "fields are pvt only");
      }
      s.payload_fields.push_back(name.text);
    } else {
      if (s.level == Level::pvt) {
        Cursor::fail_at(key.span, "signal-forbidden-at-pvt", "signals are ca only");
      }
      cur.expect(TokenKind::colon);
      SignalDecl decl{name.text, SignalKind::data, true};
      decl.kind = cur.expect_word({"data", "handshake"}).text == "data" ? SignalKind::data
                                                                        : SignalKind::handshake;
      if (cur.accept_word("active")) decl.active_high = cur.expect_word({"high", "low"}).text == "high";
      s.signals.push_back(decl);
    }
    cur.expect(TokenKind::semicolon);
  }
  cur.expect_word("initial");
  cur.expect(TokenKind::equals);
  s.initial = read_state(cur);
  cur.expect(TokenKind::semicolon);
  cur.expect_word("final");
  cur.expect(TokenKind::equals);
  s.final_state = read_state(cur);
  cur.expect(TokenKind::semicolon);
  cur.expect(TokenKind::rbrace);
  return s;
}

LegalityContext read_context(Cursor& cur) {
  LegalityContext ctx;
  cur.expect(TokenKind::lbracket);
  cur.expect_word("bound");
  cur.expect(TokenKind::equals);
  ctx.bound = static_cast<std::size_t>(cur.expect_int());
  while (cur.at(TokenKind::ident)) {
    Token flag = cur.take();
    bool known = false;
    for (const auto& f : kFlags) {
      if (flag.text == f.name) {
        ctx.*f.member = true;
        known = true;
      }
    }
    if (!known) {
      Cursor::fail_at(flag.span, "unknown-flag", "unknown context flag '" + flag.text + "'");
    }
  }
  cur.expect(TokenKind::rbracket);
  return ctx;
}

}  // namespace

std::string serialize_transactor(const TransactorFsm& g) {
  std::ostringstream out;
  out << "tfsm v1\n";
  out << "transactor " << g.name << " {\n";
  write_side(out, "target", g.target);
  write_side(out, "initiator", g.initiator);
  std::istringstream mapping(serialize_mapping(g.mapping));
  for (std::string line; std::getline(mapping, line);) out << "  " << line << "\n";
  out << "  initial = " << to_string(g.initial_pair) << "; final = " << to_string(g.final_pair)
      << ";\n";
  for (const auto& t : g.transitions) {
    out << "  on " << to_string(t.from) << " -> " << to_string(t.to) << " side "
        << to_string(t.side) << " :";
    for (std::size_t i = 0; i < t.actions.size(); ++i) {
      out << (i == 0 ? " " : ", ") << to_string(t.actions[i]);
    }
    out << " [bound=" << t.context.bound;
    for (const auto& f : kFlags) {
      if (t.context.*f.member) out << " " << f.name;
    }
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

TransactorFsm parse_transactor(std::string_view text) {
  Cursor cur(dsl::tokenize(text));
  if (cur.at(TokenKind::end)) cur.fail("empty-input", "input is empty", {"'tfsm'"});
  cur.expect_word("tfsm");
  cur.expect_word("v1");
  cur.expect_word("transactor");
  TransactorFsm g;
  g.name = cur.expect(TokenKind::ident).text;
  cur.expect(TokenKind::lbrace);
  g.target = read_side(cur, "target");
  g.initiator = read_side(cur, "initiator");
  g.mapping = dsl::parse_mapping_block(cur);
  cur.expect_word("initial");
  cur.expect(TokenKind::equals);
  g.initial_pair = read_pair(cur);
  cur.expect(TokenKind::semicolon);
  cur.expect_word("final");
  cur.expect(TokenKind::equals);
  g.final_pair = read_pair(cur);
  cur.expect(TokenKind::semicolon);
  while (cur.at_word("on")) {
    Token on = cur.take();
    TransactorTransition t;
    t.from = read_pair(cur);
    cur.expect(TokenKind::arrow);
    t.to = read_pair(cur);
    cur.expect_word("side");
    t.side = cur.expect_word({"T", "I"}).text == "T" ? Side::target : Side::initiator;
    cur.expect(TokenKind::colon);
    t.actions.push_back(dsl::parse_action(cur));
    while (cur.accept(TokenKind::comma)) t.actions.push_back(dsl::parse_action(cur));
    t.context = read_context(cur);
    cur.expect(TokenKind::semicolon);
    const bool p_moves = t.from.p != t.to.p;
    const bool q_moves = t.from.q != t.to.q;
    if ((p_moves && q_moves) || (t.side == Side::target && q_moves) ||
        (t.side == Side::initiator && p_moves)) {
      Cursor::fail_at(on.span, "not-single-sided",
                      "transition " + to_string(t.from) + " -> " + to_string(t.to) +
                          " does not advance only its declared side");
    }
    g.transitions.push_back(std::move(t));
  }
  if (!cur.at(TokenKind::rbrace)) {
    cur.fail("unexpected-token", "expected 'on' or '}', found '" + cur.peek().text + "'",
             {"'on'", "'}'"});
  }
  cur.take();
  if (!cur.at(TokenKind::end)) {
    cur.fail("trailing-input", "unexpected input after the closing '}'", {"end of input"});
  }
  return g;
}

}  // namespace tcx
