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
#include <utility>
#include <variant>
#include <vector>

#include "fpdiff/common.hpp"

namespace fpdiff::program {

// The accumulator every compute body assigns; also compute's first parameter.
inline constexpr std::string_view kAccumulator = "comp";
// Out-parameter through which compute returns the final accumulator.
inline constexpr std::string_view kResultParam = "result";

enum class ParamKind { Int, Scalar, Pointer };

struct Param {
  ParamKind kind = ParamKind::Scalar;
  std::string name;
  bool operator==(const Param&) const = default;
};

struct Expression;

// One operand of an expression. The grammar's <term> is Identifier or
// Numeral; Index reads a pointer parameter, Paren and Call nest expressions.
struct Operand {
  enum class Kind { Identifier, Index, Numeral, Paren, Call };
  Kind kind = Kind::Numeral;
  std::string text;              // identifier, numeral lexeme, or callee
  std::string index;             // Index: loop variable or "0"
  std::vector<Expression> args;  // Paren: exactly one; Call: one or two
  bool operator==(const Operand&) const = default;
};

// `<expression> <op> <expression>` kept flat: C precedence applies when the
// rendered text is compiled, and the flat form re-parses exactly.
struct Expression {
  Operand first;
  std::vector<std::pair<char, Operand>> rest;
  bool operator==(const Expression&) const = default;
};

enum class AssignOp { Assign, Add, Sub, Mul, Div };
enum class BoolOp { Lt, Gt, Le, Ge, Eq, Ne };

std::string_view to_string(AssignOp op);
std::string_view to_string(BoolOp op);

struct Statement;
using Block = std::vector<Statement>;

// `comp <op> e;`, `tmp <op> e;`, or a temporary declaration `fp id = e;`.
struct Assignment {
  std::string target;
  bool declares = false;
  AssignOp op = AssignOp::Assign;
  Expression value;
  bool operator==(const Assignment&) const = default;
};

struct IfBlock {
  std::string lhs;
  BoolOp op = BoolOp::Lt;
  Expression rhs;
  Block body;
  bool operator==(const IfBlock&) const = default;
};

// for (int var = 0; var < bound; ++var) { body }
struct ForBlock {
  std::string var;
  int bound = 1;
  Block body;
  bool operator==(const ForBlock&) const = default;
};

struct Statement {
  std::variant<Assignment, IfBlock, ForBlock> node;
  bool operator==(const Statement&) const = default;
};

// compute(<fp> comp, params..., <fp>* result) { body  *result = comp; }
struct GrammarAst {
  Precision precision = Precision::FP64;
  std::vector<Param> params;
  Block body;
  bool operator==(const GrammarAst&) const = default;
};

enum class Dialect { C, Cuda };

struct Provenance {
  enum class Kind { GrammarRandom, LlmGrammar, LlmMutation };
  Kind kind = Kind::GrammarRandom;
  std::uint64_t seed = 0;
  std::string prompt_id;
  std::string parent_id;
};

std::string_view to_string(Provenance::Kind kind);

struct ProgramSource {
  std::string text;
  Precision precision = Precision::FP64;
  Dialect dialect = Dialect::C;
  Provenance provenance;
};

}  // namespace fpdiff::program
