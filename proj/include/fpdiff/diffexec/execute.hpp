// Copyright 2026 The fpdiff Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>

#include "fpdiff/compile/levels.hpp"
#include "fpdiff/diffexec/fp.hpp"
#include "fpdiff/program/inputs.hpp"

namespace fpdiff::diffexec {

// A (compiler, level) configuration; compilers are identified by name.
struct ConfigId {
  std::string compiler;
  compile::OptLevel level = compile::OptLevel::O0;

  std::string label() const;  // "gcc@O2"
  auto operator<=>(const ConfigId&) const = default;
};

struct FpObservation {
  std::uint64_t bits = 0;
  double value = 0;
  Category category = Category::Real;
  ConfigId config;
};

FpObservation observe(std::uint64_t bits, Precision precision, ConfigId config);

struct ExecOk {
  FpObservation observation;
  std::chrono::nanoseconds duration{0};
};
struct ExecCrash {
  int exit_code = -1;  // -1 when killed by a signal or never started
  int signal = 0;
  std::string detail;
};
struct ExecTimeout {
  std::chrono::nanoseconds limit{0};
};
struct ExecMalformed {
  std::string stdout_text;
};

using ExecutionOutcome = std::variant<ExecOk, ExecCrash, ExecTimeout, ExecMalformed>;

// Short reason for a non-Ok outcome, e.g. "crash (signal 11)". Empty for Ok.
std::string describe(const ExecutionOutcome& outcome);

inline constexpr std::chrono::seconds kDefaultExecTimeout{10};

// Runs binary with the inputs on its command line and enforces the output
// contract. Never throws for program misbehavior.
ExecutionOutcome execute(const std::filesystem::path& binary, const ConfigId& config,
                         const program::InputVector& inputs, Precision precision,
                         std::chrono::milliseconds timeout);

}  // namespace fpdiff::diffexec
