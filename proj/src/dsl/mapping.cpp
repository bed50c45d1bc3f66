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

#include <map>
#include <sstream>

#include "lexer.hpp"
#include "tcx/dsl.hpp"

namespace tcx {
namespace {

using dsl::Cursor;
using dsl::Token;
using dsl::TokenKind;

// Tracks per-field indexing while entries arrive in order.
class EntryChecker {
 public:
  // Returns the violation code for appending `entry`, if any.
  std::optional<std::string> add(const MappingEntry& entry) {
    auto [it, inserted] = next_index_.try_emplace(entry.field, 0);
    auto [kind, fresh] = indexed_.try_emplace(entry.field, entry.index.has_value());
    if (!fresh && kind->second != entry.index.has_value()) return "mixed-indexing";
    if (!entry.index) {
      if (!inserted) return "duplicate-entry";
      return std::nullopt;
    }
    if (*entry.index < it->second) return "duplicate-entry";
    if (*entry.index != it->second) return "non-contiguous-index";
    ++it->second;
    return std::nullopt;
  }

 private:
  std::map<std::string, int> next_index_;
  std::map<std::string, bool> indexed_;
};

std::string describe_violation(const std::string& code, const MappingEntry& entry) {
  if (code == "duplicate-entry") return "entry '" + entry.label() + "' is bound twice";
  if (code == "non-contiguous-index") {
    return "entry '" + entry.label() + "' skips an index; indices of '" + entry.field +
           "' must run 0, 1, ... in order";
  }
  return "field '" + entry.field + "' is used both with and without an index";
}

}  // namespace

std::string MappingEntry::label() const {
  return index ? field + "[" + std::to_string(*index) + "]" : field;
}

bool PayloadMapping::maps(std::string_view signal) const {
  for (const auto& e : entries) {
    if (e.signal == signal) return true;
  }
  return false;
}

std::optional<std::string> check_mapping(const PayloadMapping& mapping) {
  EntryChecker checker;
  for (const auto& e : mapping.entries) {
    if (auto code = checker.add(e)) return code;
  }
  return std::nullopt;
}

namespace dsl {

PayloadMapping parse_mapping_block(Cursor& cur) {
  PayloadMapping mapping;
  cur.expect_word("map");
  mapping.name = cur.expect(TokenKind::ident).text;
  cur.expect(TokenKind::lbrace);
  EntryChecker checker;
  while (cur.at(TokenKind::ident)) {
    Token field = cur.take();
    MappingEntry entry{field.text, std::nullopt, {}};
    SourceSpan span = field.span;
    if (cur.accept(TokenKind::lbracket)) {
      Token index = cur.expect(TokenKind::integer);
      if (index.text.size() > 6) {
        Cursor::fail_at(index.span, "integer-overflow", "index '" + index.text + "' too large");
      }
      entry.index = std::stoi(index.text);
      Token close = cur.expect(TokenKind::rbracket);
      if (close.span.line == span.line) span.length = close.span.column - span.column + 1;
    }
    cur.expect(TokenKind::left_arrow);
    entry.signal = cur.expect(TokenKind::ident).text;
    if (auto code = checker.add(entry)) {
      Cursor::fail_at(span, *code, describe_violation(*code, entry));
    }
    mapping.entries.push_back(std::move(entry));
    if (!cur.accept(TokenKind::semicolon)) break;
  }
  if (!cur.at(TokenKind::rbrace)) {
    cur.fail("unexpected-token",
             "expected a mapping entry or '}', found " +
                 (cur.at(TokenKind::end) ? std::string("end of input")
                                         : "'" + cur.peek().text + "'"),
             {"identifier", "'}'"});
  }
  cur.take();
  return mapping;
}

}  // namespace dsl

PayloadMapping parse_payload_mapping(std::string_view text) {
  Cursor cur(dsl::tokenize(text));
  if (cur.at(TokenKind::end)) cur.fail("empty-input", "input is empty", {"'map'"});
  PayloadMapping mapping = dsl::parse_mapping_block(cur);
  if (!cur.at(TokenKind::end)) {
    cur.fail("trailing-input", "unexpected input after the closing '}'", {"end of input"});
  }
  return mapping;
}

std::string serialize_mapping(const PayloadMapping& mapping) {
  std::ostringstream out;
  out << "map " << mapping.name << " {\n";
  for (const auto& e : mapping.entries) out << "  " << e.label() << " <- " << e.signal << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace tcx
