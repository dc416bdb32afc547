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

#include "fpdiff/llm/prompts.hpp"

#include <stdexcept>

namespace fpdiff::llm {

const std::string_view kGrammarText =
    R"bnf(<function> ::= "void" "compute" "(" <param-list> ")" "{" <block> "}"
<param-list> ::= <param-declaration> | <param-list> "," <param-declaration>
<param-declaration> ::= "int" <id> | <fp-type> <id> | <fp-type> "*" <id>
<assignment> ::= "comp" <assign-op> <expression> ";"
               | <fp-type> <id> <assign-op> <expression> ";"
<expression> ::= <term> | "(" <expression> ")" | <expression> <op> <expression>
<term> ::= <identifier> | <fp-numeral>
<block> ::= {<assignment>}+ | <if-block> <block> | <for-loop-block> <block>
<if-block> ::= "if" "(" <bool-expression> ")" "{" <block> "}"
<for-loop-block> ::= "for" "(" <loop-header> ")" "{" <block> "}"
<bool-expression> ::= <id> <bool-op> <expression>
<loop-header> ::= "int" <id> ";" <id> "<" <int-numeral> ";" "++" <id>
<op> ::= "+" | "-" | "*" | "/"
<assign-op> ::= "=" | "+=" | "-=" | "*=" | "/="
<bool-op> ::= "<" | ">" | "<=" | ">=" | "==" | "!="
<fp-type> ::= "float" | "double"
)bnf";

const std::string_view kGuidelines =
    R"(Guidelines:
- Include only these headers: stdio.h, stdlib.h, math.h.
- Initialize every variable before it is read.
- Do not rely on undefined behavior: no out-of-bounds accesses, no uninitialized reads, no signed integer overflow.
- Terms may call functions from math.h.
)";

const std::array<std::string_view, 5> kMutationStrategies = {
    "Reorder arithmetic expressions or nest them more deeply.",
    "Change the numeric constants.",
    "Add control flow such as nested loops or conditionals.",
    "Call different math.h functions.",
    "Insert intermediate computations stored in temporaries.",
};

const std::string_view kPlainCodeInstruction =
    "Respond with the plain C source code only: no Markdown, no code fences, no "
    "explanation.";

std::string_view to_string(Strategy s) {
  return s == Strategy::GrammarBased ? "grammar" : "mutation";
}

Strategy parse_strategy(std::string_view text) {
  if (text == "grammar") return Strategy::GrammarBased;
  if (text == "mutation") return Strategy::FeedbackMutation;
  throw Error("unknown strategy '" + std::string(text) + "'");
}

namespace {

std::string precision_directive(Precision p) {
  if (p == Precision::FP32) {
    return "Precision: use single precision. Every floating-point variable, "
           "parameter and constant must have type float (fp-type is float).\n";
  }
  return "Precision: use double precision. Every floating-point variable, "
         "parameter and constant must have type double (fp-type is double).\n";
}

std::string structure_text() {
  return "Program structure:\n"
         "- The program defines exactly two functions, main and compute.\n"
         "- compute has the signature void compute(<fp-type> comp, <parameters>, "
         "<fp-type>* result). Each parameter is an int, an <fp-type> or an "
         "<fp-type>* array.\n"
         "- compute performs a sequence of floating-point operations that "
         "update comp and ends with *result = comp;\n"
         "- main initializes the arguments, calls compute once and prints the "
         "scalar result to standard output.\n";
}

}  // namespace

Prompt build_grammar_prompt(Precision precision, std::string_view grammar_text,
                            std::string_view guidelines) {
  if (grammar_text.empty()) {
    throw std::invalid_argument("grammar text must not be empty");
  }
  Prompt p;
  p.strategy = Strategy::GrammarBased;
  p.precision = precision;
  p.text = "Write a new, random, valid C program that performs floating-point "
           "computations.\n\n";
  p.text += precision_directive(precision) + "\n";
  p.text += structure_text();
  p.text += "The body of compute must follow this grammar:\n\n";
  p.text += grammar_text;
  p.text += "\n";
  p.text += guidelines;
  p.text += "\n";
  p.text += kPlainCodeInstruction;
  p.text += "\n";
  return p;
}

Prompt build_mutation_prompt(std::string_view parent_source,
                             const std::string& parent_program_id,
                             Precision precision) {
  Prompt p;
  p.strategy = Strategy::FeedbackMutation;
  p.precision = precision;
  p.parent_program_id = parent_program_id;
  p.text = "Modify the C program below into a new program whose floating-point "
           "behavior is different.\n\n";
  p.text += precision_directive(precision) + "\n";
  p.text += structure_text() + "\n";
  p.text += kGuidelines;
  p.text += "\nMutation strategies to consider:\n";
  for (std::size_t i = 0; i < kMutationStrategies.size(); ++i) {
    p.text += std::to_string(i + 1) + ". " + std::string(kMutationStrategies[i]) + "\n";
  }
  p.text += "\nProgram to modify:\n";
  p.text += kParentBegin;
  p.text += "\n";
  p.text += parent_source;
  if (parent_source.empty() || parent_source.back() != '\n') p.text += "\n";
  p.text += kParentEnd;
  p.text += "\n\n";
  p.text += kPlainCodeInstruction;
  p.text += "\n";
  return p;
}

std::optional<std::string> extract_parent(std::string_view text) {
  const std::string begin = std::string(kParentBegin) + "\n";
  const std::string end = std::string(kParentEnd) + "\n";
  const auto b = text.find(begin);
  if (b == std::string_view::npos) return std::nullopt;
  const auto start = b + begin.size();
  const auto e = text.rfind(end);
  if (e == std::string_view::npos || e < start) return std::nullopt;
  return std::string(text.substr(start, e - start));
}

Strategy select_strategy(Rng& rng, std::size_t successful_set_size, double p_mutation) {
  if (!(p_mutation >= 0.0 && p_mutation <= 1.0)) {
    throw std::invalid_argument("p_mutation must be in [0, 1]");
  }
  if (successful_set_size == 0) return Strategy::GrammarBased;
  return rng.bernoulli(p_mutation) ? Strategy::FeedbackMutation : Strategy::GrammarBased;
}

}  // namespace fpdiff::llm
