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
#include <optional>
#include <string>
#include <string_view>

#include "fpdiff/common.hpp"

namespace fpdiff::llm {

enum class Strategy { GrammarBased, FeedbackMutation };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view text);

struct Prompt {
  Strategy strategy = Strategy::GrammarBased;
  std::string text;
  Precision precision = Precision::FP64;
  std::optional<std::string> parent_program_id;  // set iff FeedbackMutation
};

// BNF for the compute function, with the operator productions instantiated.
extern const std::string_view kGrammarText;

// Header, initialization and undefined-behavior rules shared by both prompts.
extern const std::string_view kGuidelines;

extern const std::array<std::string_view, 5> kMutationStrategies;

// Final line of every prompt.
extern const std::string_view kPlainCodeInstruction;

// The parent program in a mutation prompt sits between these two lines.
inline constexpr std::string_view kParentBegin = "=== BEGIN PROGRAM ===";
inline constexpr std::string_view kParentEnd = "=== END PROGRAM ===";

// Throws std::invalid_argument when grammar_text is empty.
Prompt build_grammar_prompt(Precision precision,
                            std::string_view grammar_text = kGrammarText,
                            std::string_view guidelines = kGuidelines);

Prompt build_mutation_prompt(std::string_view parent_source,
                             const std::string& parent_program_id,
                             Precision precision);

// The embedded parent of a mutation prompt, or nullopt.
std::optional<std::string> extract_parent(std::string_view prompt_text);

// GrammarBased whenever the successful set is empty; otherwise
// FeedbackMutation with probability p_mutation. Consumes exactly one draw
// when successful_set_size > 0 and none otherwise.
Strategy select_strategy(Rng& rng, std::size_t successful_set_size, double p_mutation);

}  // namespace fpdiff::llm
