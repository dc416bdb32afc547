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

#include <optional>
#include <string>

#include "fpdiff/program/ast.hpp"
#include "fpdiff/program/inputs.hpp"

namespace fpdiff::program {

class RenderError : public Error {
 public:
  using Error::Error;
};

// Renders the whole compute definition, including the trailing
// `*result = comp;` that hands the accumulator back to the caller.
std::string render_compute(const GrammarAst& ast);

std::string render_expression(const Expression& e);

// Canonical main for a compute signature. Without embedded inputs, main
// parses comp and each parameter from argv in signature order; arrays are
// heap-allocated to the length given on the command line. The result is
// printed as the raw bit pattern in zero-padded lowercase hex.
std::string render_main(Precision precision, const std::vector<Param>& params,
                        Dialect dialect,
                        const std::optional<InputVector>& embedded = {});

// Full translation unit: the three allowed headers, compute, main. Throws
// RenderError if the body references an unresolvable identifier.
ProgramSource render_c(const GrammarAst& ast,
                       const std::optional<InputVector>& embedded = {});

}  // namespace fpdiff::program
