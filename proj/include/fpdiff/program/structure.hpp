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

#include <cstddef>
#include <string>
#include <vector>

#include "fpdiff/program/ast.hpp"
#include "fpdiff/program/tokenizer.hpp"

namespace fpdiff::program {

inline constexpr std::string_view kAllowedHeaders[] = {"stdio.h", "stdlib.h",
                                                       "math.h"};

struct Violation {
  std::string code;     // stable identifier, e.g. "disallowed-header"
  std::string message;  // human-readable, e.g. "disallowed header: string.h"
};

struct StructureReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(std::string_view code) const;
};

// A top-level function definition located in a token stream.
struct FunctionSpan {
  std::string name;
  std::size_t first_token = 0;  // first token of the declaration specifiers
  std::size_t name_token = 0;
  std::size_t body_open = 0;    // index of '{'
  std::size_t body_close = 0;   // index of matching '}'
};

std::vector<FunctionSpan> find_functions(const TokenStream& tokens);

// Checks the two-function layout, header allowlist, presence of an output
// statement, and that main calls compute. Lex errors become violations.
StructureReport validate_structure(const ProgramSource& src);

class TranslateError : public Error {
 public:
  using Error::Error;
};

// compute's parameter list in canonical form: `<fp> comp`, then params,
// then `<fp>* result`.
struct ComputeSignature {
  Precision precision = Precision::FP64;
  std::vector<Param> params;  // excludes comp and result
};

// Throws TranslateError when the signature does not follow the convention.
ComputeSignature parse_compute_signature(const TokenStream& tokens,
                                         const FunctionSpan& compute);

// Keeps compute verbatim and replaces everything else with the three allowed
// headers and the canonical argv-driven main. Throws TranslateError.
ProgramSource attach_harness(const ProgramSource& src);

// CUDA form: compute becomes a __global__ kernel launched <<<1, 1>>>; main
// marshals arguments to the device and copies the result back. Requires
// validate_structure(src).ok(). Throws TranslateError.
ProgramSource translate_to_cuda(const ProgramSource& src);

// Recursive-descent recognizer for the compute body grammar. Rebuilds the
// AST from a canonical compute definition; throws TranslateError on any
// token sequence outside the grammar or on unresolved identifiers.
GrammarAst parse_grammar_ast(const ProgramSource& src);

// Tokens strictly inside compute's braces.
TokenStream compute_body_tokens(const TokenStream& tokens);

}  // namespace fpdiff::program
