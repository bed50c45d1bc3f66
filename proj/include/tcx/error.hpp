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
#include <optional>
#include <stdexcept>
#include <string>

namespace tcx {

// Base for every failure the toolkit reports. `code()` is a stable
// kebab-case identifier (e.g. "no-legal-transactor") that callers and the
// CLI match on; `what()` carries the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

// Structural problems with an FSM handed to a transform (complement,
// last-handshake detection, delay consumption).
class FsmError : public Error {
 public:
  using Error::Error;
};

class SynthesisError : public Error {
 public:
  using Error::Error;
};

class SimulationError : public Error {
 public:
  SimulationError(std::string code, const std::string& message,
                  std::optional<std::uint64_t> txn_id = std::nullopt)
      : Error(std::move(code), message), txn_id_(txn_id) {}

  std::optional<std::uint64_t> txn_id() const noexcept { return txn_id_; }

 private:
  std::optional<std::uint64_t> txn_id_;
};

class CompareError : public Error {
 public:
  using Error::Error;
};

}  // namespace tcx
