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

#include <cstdint>
#include <string>
#include <vector>

#include "fpdiff/program/ast.hpp"

namespace fpdiff::program {

// One compute argument. Scalars and ints hold one decimal value; pointer
// parameters hold `length` fill values.
struct InputValue {
  std::string name;
  ParamKind kind = ParamKind::Scalar;
  std::vector<std::string> values;
  bool operator==(const InputValue&) const = default;
};

// Arguments in compute signature order, starting with the accumulator.
struct InputVector {
  std::vector<InputValue> values;
  std::uint64_t rng_seed = 0;

  // Command-line form: scalars as text, arrays as length then values.
  std::vector<std::string> to_argv() const;
  bool operator==(const InputVector&) const = default;
};

// Throws Error if arity or kinds do not match the signature (comp first).
void check_inputs_match(const InputVector& inputs,
                        const std::vector<Param>& params);

}  // namespace fpdiff::program
