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
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "tcx/dsl.hpp"

namespace tcx::dsl {

enum class TokenKind : std::uint8_t {
  ident,
  integer,
  lbrace,
  rbrace,
  lparen,
  rparen,
  lbracket,
  rbracket,
  semicolon,
  colon,
  comma,
  equals,
  arrow,       // ->
  left_arrow,  // <-
  bang,
  question,
  end,
};

struct Token {
  TokenKind kind = TokenKind::end;
  std::string text;
  SourceSpan span;
};

std::string_view describe(TokenKind kind);

// Splits the input into tokens; throws ParseError on stray characters.
std::vector<Token> tokenize(std::string_view text);

// Recursive-descent helper shared by the .ifsm, .pmap and .tfsm parsers.
class Cursor {
 public:
  explicit Cursor(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek(std::size_t ahead = 0) const;
  bool at(TokenKind kind) const { return peek().kind == kind; }
  bool at_word(std::string_view word) const;
  Token take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

  Token expect(TokenKind kind);
  Token expect_word(std::string_view word);
  Token expect_word(std::initializer_list<std::string_view> words);
  std::int64_t expect_int();
  bool accept(TokenKind kind);
  bool accept_word(std::string_view word);

  [[noreturn]] void fail(std::string code, std::string message,
                         std::vector<std::string> expected = {}) const;
  [[noreturn]] static void fail_at(const SourceSpan& span, std::string code,
                                   std::string message,
                                   std::vector<std::string> expected = {});

 private:
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

bool is_reserved(std::string_view word);

// action := IDENT "!" [BIT] | IDENT "?" [BIT] | PVTKW ("!"|"?")
//         | "consume_delay" | "delay_elapsed"
Action parse_action(Cursor& cur);

// "map" IDENT "{" entries "}", leaving the cursor after the closing brace.
PayloadMapping parse_mapping_block(Cursor& cur);

}  // namespace tcx::dsl
