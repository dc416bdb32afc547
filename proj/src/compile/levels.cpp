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

#include "fpdiff/compile/levels.hpp"

namespace fpdiff::compile {

std::string_view to_string(CompilerFamily f) {
  switch (f) {
    case CompilerFamily::GccLike: return "gcc-like";
    case CompilerFamily::ClangLike: return "clang-like";
    case CompilerFamily::NvccLike: return "nvcc-like";
  }
  return "?";
}

CompilerFamily parse_family(std::string_view text) {
  if (text == "gcc-like" || text == "gcc") return CompilerFamily::GccLike;
  if (text == "clang-like" || text == "clang") return CompilerFamily::ClangLike;
  if (text == "nvcc-like" || text == "nvcc") return CompilerFamily::NvccLike;
  throw ConfigError("unknown compiler family '" + std::string(text) + "'");
}

std::string_view to_string(OptLevel level) {
  switch (level) {
    case OptLevel::O0_nofma: return "O0_nofma";
    case OptLevel::O0: return "O0";
    case OptLevel::O1: return "O1";
    case OptLevel::O2: return "O2";
    case OptLevel::O3: return "O3";
    case OptLevel::O3_fastmath: return "O3_fastmath";
  }
  return "?";
}

OptLevel parse_level(std::string_view name) {
  for (OptLevel l : kAllLevels) {
    if (to_string(l) == name) return l;
  }
  throw UnknownLevel("unknown optimization level '" + std::string(name) + "'");
}

std::vector<std::string> flags_for(CompilerFamily family, OptLevel level) {
  const bool nvcc = family == CompilerFamily::NvccLike;
  switch (level) {
    case OptLevel::O0_nofma:
      return {"-O0", nvcc ? "--fmad=false" : "-ffp-contract=off"};
    case OptLevel::O0: return {"-O0"};
    case OptLevel::O1: return {"-O1"};
    case OptLevel::O2: return {"-O2"};
    case OptLevel::O3: return {"-O3"};
    case OptLevel::O3_fastmath:
      return {"-O3", nvcc ? "--use_fast_math" : "-ffast-math"};
  }
  throw UnknownLevel("unknown optimization level");
}

std::vector<std::string> flags_for(CompilerFamily family, std::string_view level) {
  return flags_for(family, parse_level(level));
}

}  // namespace fpdiff::compile
