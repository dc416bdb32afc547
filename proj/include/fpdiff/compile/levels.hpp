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

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "fpdiff/common.hpp"

namespace fpdiff::compile {

enum class CompilerFamily { GccLike, ClangLike, NvccLike };

std::string_view to_string(CompilerFamily f);
CompilerFamily parse_family(std::string_view text);

// Ordered from least to most intrusive.
enum class OptLevel { O0_nofma, O0, O1, O2, O3, O3_fastmath };

inline constexpr std::array<OptLevel, 6> kAllLevels = {
    OptLevel::O0_nofma, OptLevel::O0, OptLevel::O1,
    OptLevel::O2,       OptLevel::O3, OptLevel::O3_fastmath};

std::string_view to_string(OptLevel level);

class UnknownLevel : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

OptLevel parse_level(std::string_view name);  // throws UnknownLevel

// Optimization flags per level, exactly as listed in the level table:
//
//   level        gcc/clang                nvcc
//   O0_nofma     -O0 -ffp-contract=off    -O0 --fmad=false
//   O0           -O0                      -O0
//   O1           -O1                      -O1
//   O2           -O2                      -O2
//   O3           -O3                      -O3
//   O3_fastmath  -O3 -ffast-math          -O3 --use_fast_math
std::vector<std::string> flags_for(CompilerFamily family, OptLevel level);
std::vector<std::string> flags_for(CompilerFamily family, std::string_view level);

}  // namespace fpdiff::compile
