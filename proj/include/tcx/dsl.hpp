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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tcx/error.hpp"
#include "tcx/ifsm.hpp"

namespace tcx {

// 1-based position of a token (or of the problem) in the source text.
struct SourceSpan {
  int line = 1;
  int column = 1;
  int length = 0;

  auto operator<=>(const SourceSpan&) const = default;
};

struct Diagnostic {
  std::string code;
  std::string message;
  SourceSpan span;
  std::vector<std::string> expected;  // token set, for syntax errors
};

// Thrown by every text parser. The first diagnostic is the primary one;
// validation failures list every violation found.
class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);

  const std::vector<Diagnostic>& diagnostics() const noexcept { return diagnostics_; }
  const SourceSpan& span() const noexcept { return diagnostics_.front().span; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

struct MappingEntry {
  std::string field;
  std::optional<int> index;
  std::string signal;

  std::string label() const;  // "addr", "data[1]"
  auto operator<=>(const MappingEntry&) const = default;
};

// Ordered binding of payload fields to CA signals. Entry order is the order
// in which the CA side produces or consumes the values.
struct PayloadMapping {
  std::string name;
  std::vector<MappingEntry> entries;

  bool maps(std::string_view signal) const;
  bool operator==(const PayloadMapping&) const = default;
};

// Checks the entry invariants: unique (field, index) pairs, indices of a
// field numbered 0, 1, ... in order, no field both indexed and plain.
// Returns the violation code, or nothing when the mapping is well formed.
std::optional<std::string> check_mapping(const PayloadMapping& mapping);

InterfaceFsm parse_interface_spec(std::string_view text);
std::string serialize_fsm(const InterfaceFsm& fsm);

PayloadMapping parse_payload_mapping(std::string_view text);
std::string serialize_mapping(const PayloadMapping& mapping);

}  // namespace tcx
