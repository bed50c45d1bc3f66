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

#include "lexer.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

namespace tcx::dsl {

std::string_view describe(TokenKind kind) {
  switch (kind) {
    case TokenKind::ident: return "identifier";
    case TokenKind::integer: return "integer";
    case TokenKind::lbrace: return "'{'";
    case TokenKind::rbrace: return "'}'";
    case TokenKind::lparen: return "'('";
    case TokenKind::rparen: return "')'";
    case TokenKind::lbracket: return "'['";
    case TokenKind::rbracket: return "']'";
    case TokenKind::semicolon: return "';'";
    case TokenKind::colon: return "':'";
    case TokenKind::comma: return "','";
    case TokenKind::equals: return "'='";
    case TokenKind::arrow: return "'->'";
    case TokenKind::left_arrow: return "'<-'";
    case TokenKind::bang: return "'!'";
    case TokenKind::question: return "'?'";
    case TokenKind::end: return "end of input";
  }
  return "token";
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  auto push = [&](TokenKind kind, std::size_t length) {
    out.push_back({kind, std::string(text.substr(i, length)),
                   {line, column, static_cast<int>(length)}});
    i += length;
    column += static_cast<int>(length);
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++column;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
        ++column;
      }
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t n = 1;
      while (i + n < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + n])) || text[i + n] == '_')) {
        ++n;
      }
      push(TokenKind::ident, n);
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t n = 1;
      while (i + n < text.size() && std::isdigit(static_cast<unsigned char>(text[i + n]))) ++n;
      push(TokenKind::integer, n);
    } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
      push(TokenKind::arrow, 2);
    } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '-') {
      push(TokenKind::left_arrow, 2);
    } else {
      TokenKind kind;
      switch (c) {
        case '{': kind = TokenKind::lbrace; break;
        case '}': kind = TokenKind::rbrace; break;
        case '(': kind = TokenKind::lparen; break;
        case ')': kind = TokenKind::rparen; break;
        case '[': kind = TokenKind::lbracket; break;
        case ']': kind = TokenKind::rbracket; break;
        case ';': kind = TokenKind::semicolon; break;
        case ':': kind = TokenKind::colon; break;
        case ',': kind = TokenKind::comma; break;
        case '=': kind = TokenKind::equals; break;
        case '!': kind = TokenKind::bang; break;
        case '?': kind = TokenKind::question; break;
        default:
          Cursor::fail_at({line, column, 1}, "unexpected-character",
                          "unexpected character '" +
                              (std::isprint(static_cast<unsigned char>(c))
                                   ? std::string(1, c)
                                   : "\\x" + std::to_string(static_cast<unsigned char>(c))) +
                              "'");
      }
      push(kind, 1);
    }
  }
  out.push_back({TokenKind::end, "", {line, column, 0}});
  return out;
}

const Token& Cursor::peek(std::size_t ahead) const {
  return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
}

bool Cursor::at_word(std::string_view word) const {
  return peek().kind == TokenKind::ident && peek().text == word;
}

Token Cursor::expect(TokenKind kind) {
  if (!at(kind)) {
    fail("unexpected-token",
         "expected " + std::string(describe(kind)) + ", found " +
             (at(TokenKind::end) ? std::string("end of input") : "'" + peek().text + "'"),
         {std::string(describe(kind))});
  }
  return take();
}

Token Cursor::expect_word(std::string_view word) { return expect_word({word}); }

Token Cursor::expect_word(std::initializer_list<std::string_view> words) {
  if (at(TokenKind::ident) &&
      std::find(words.begin(), words.end(), peek().text) != words.end()) {
    return take();
  }
  std::vector<std::string> expected;
  std::string list;
  for (auto w : words) {
    expected.emplace_back("'" + std::string(w) + "'");
    list += (list.empty() ? "" : " or ") + expected.back();
  }
  fail("unexpected-token",
       "expected " + list + ", found " +
           (at(TokenKind::end) ? std::string("end of input") : "'" + peek().text + "'"),
       std::move(expected));
}

std::int64_t Cursor::expect_int() {
  Token tok = expect(TokenKind::integer);
  if (tok.text.size() > 18) fail_at(tok.span, "integer-overflow", "integer too large");
  return std::stoll(tok.text);
}

bool Cursor::accept(TokenKind kind) {
  if (!at(kind)) return false;
  take();
  return true;
}

bool Cursor::accept_word(std::string_view word) {
  if (!at_word(word)) return false;
  take();
  return true;
}

void Cursor::fail(std::string code, std::string message,
                  std::vector<std::string> expected) const {
  fail_at(peek().span, std::move(code), std::move(message), std::move(expected));
}

void Cursor::fail_at(const SourceSpan& span, std::string code, std::string message,
                     std::vector<std::string> expected) {
  throw ParseError({Diagnostic{std::move(code),
                               "line " + std::to_string(span.line) + ", column " +
                                   std::to_string(span.column) + ": " + message,
                               span, std::move(expected)}});
}

bool is_reserved(std::string_view word) {
  static constexpr std::array<std::string_view, 7> kReserved = {
      "begin_call", "end_call", "payload", "delay", "response", "consume_delay",
      "delay_elapsed"};
  return std::find(kReserved.begin(), kReserved.end(), word) != kReserved.end();
}

}  // namespace tcx::dsl
