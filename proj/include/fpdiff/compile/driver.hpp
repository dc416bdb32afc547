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
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fpdiff/compile/levels.hpp"

namespace fpdiff::compile {

enum class CompilerRole { Host, Device };

std::string_view to_string(CompilerRole r);
CompilerRole parse_role(std::string_view text);

struct CompilerSpec {
  std::string name;  // short label used in records, e.g. "gcc"
  CompilerFamily family = CompilerFamily::GccLike;
  std::string path;  // executable; resolved through PATH when relative
  CompilerRole role = CompilerRole::Host;
  std::string version;  // filled by probe_toolchain
};

struct CompileJob {
  std::string program_id;
  CompilerSpec compiler;
  OptLevel level = OptLevel::O0;
  std::filesystem::path source;
  std::filesystem::path output;

  // Full argument vector, compiler first. Host builds link libm.
  std::vector<std::string> command() const;
};

struct CompileSuccess {
  std::filesystem::path binary;
  std::chrono::nanoseconds duration{0};
};
struct CompileFailure {
  std::string diagnostics;
  int exit_code = -1;
  std::chrono::nanoseconds duration{0};
};
struct CompileTimeout {
  std::chrono::nanoseconds duration{0};
};

using CompileOutcome = std::variant<CompileSuccess, CompileFailure, CompileTimeout>;

inline bool succeeded(const CompileOutcome& o) {
  return std::holds_alternative<CompileSuccess>(o);
}

// Source files for one program. cuda is required iff a device compiler is
// configured.
struct ProgramSources {
  std::filesystem::path c;
  std::optional<std::filesystem::path> cuda;
};

// One job per (compiler, level), compilers outer, levels inner. Binaries go
// to <build_root>/<program>/<compiler>-<level>. Throws ConfigError with
// fewer than two compilers or a device compiler without a CUDA source.
std::vector<CompileJob> expand_matrix(const std::string& program_id,
                                      const ProgramSources& sources,
                                      const std::vector<CompilerSpec>& compilers,
                                      const std::vector<OptLevel>& levels,
                                      const std::filesystem::path& build_root);

// Never throws for compiler failures; they are reported in the outcome.
CompileOutcome compile(const CompileJob& job, std::chrono::milliseconds timeout);

// Runs jobs on a bounded pool; outcomes are returned in job order.
std::vector<CompileOutcome> compile_all(const std::vector<CompileJob>& jobs,
                                        std::chrono::milliseconds timeout,
                                        std::size_t workers);

class ToolchainMissing : public Error {
 public:
  using Error::Error;
};

// Version line of `<path> --version`. Throws ToolchainMissing.
std::string probe_toolchain(const CompilerSpec& spec);

// Device binaries need a GPU at execution time. Throws ToolchainMissing
// when a device compiler is configured but no device node is present.
void check_device_available();

}  // namespace fpdiff::compile
