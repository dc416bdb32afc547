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

#include <string>
#include <string_view>
#include <vector>

#include "fpdiff/common.hpp"

namespace fpdiff::program {

struct MathFunction {
  std::string_view name;  // double-precision spelling
  int arity;
};

// Math-library calls available to generated programs; all exist in libm and
// in the CUDA math library.
inline constexpr MathFunction kMathFunctions[] = {
    {"sqrt", 1}, {"sin", 1},  {"cos", 1},  {"exp", 1},   {"log", 1},
    {"fabs", 1}, {"pow", 2},  {"tanh", 1}, {"floor", 1}, {"fmod", 2},
};

// Spelling used at a given precision (sqrt -> sqrtf for FP32).
inline std::string math_function_name(std::string_view base, Precision p) {
  std::string s(base);
  if (p == Precision::FP32) s += 'f';
  return s;
}

// Arity of a double or float spelling, 0 if unknown.
inline int math_function_arity(std::string_view name) {
  for (const auto& f : kMathFunctions) {
    if (name == f.name) return f.arity;
    if (name.size() == f.name.size() + 1 && name.substr(0, f.name.size()) == f.name &&
        name.back() == 'f') {
      return f.arity;
    }
  }
  return 0;
}

}  // namespace fpdiff::program
