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

#include "fpdiff/program/ast.hpp"

namespace fpdiff::program {

// Size bounds for grammar-based random generation.
struct GenConfig {
  Precision precision = Precision::FP64;
  int max_expr_depth = 4;    // nesting of parentheses and calls, >= 1
  int max_block_stmts = 6;   // statements per block, >= 1
  int max_loop_nest = 2;     // >= 0
  int min_params = 2;
  int max_params = 6;
  int max_pointer_params = 2;
  int loop_bound_max = 10;   // loop bounds drawn from [1, loop_bound_max]
  int max_terms = 3;         // operands per expression level
  double p_paren = 0.25;
  double p_call = 0.2;
  double p_declare = 0.3;

  // Throws std::invalid_argument when a bound is not positive.
  void check() const;
};

GrammarAst generate_random_ast(std::uint64_t seed, const GenConfig& config);

// Pure function of (seed, config); the output passes validate_structure.
ProgramSource generate_random_program(std::uint64_t seed,
                                      const GenConfig& config);

}  // namespace fpdiff::program
