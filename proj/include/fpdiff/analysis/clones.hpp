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
#include <string_view>
#include <vector>

#include "json.hpp"

#include "fpdiff/program/tokenizer.hpp"

namespace fpdiff::analysis {

// Ordered from loosest to strictest.
enum class CloneClass { None, Type2, Type2c, Type1 };

std::string_view to_string(CloneClass c);

// Lexemes as they are; comments and whitespace are already gone.
std::vector<std::string> normalize_type1(const program::TokenStream& tokens);

// Identifiers replaced by their first-occurrence index, so two streams are
// equal iff a bijective renaming maps one onto the other. Literals and type
// keywords are kept.
std::vector<std::string> normalize_type2c(const program::TokenStream& tokens);

// Identifiers, literals and type keywords replaced by placeholders.
std::vector<std::string> normalize_type2(const program::TokenStream& tokens);

CloneClass classify_pair(const program::TokenStream& a, const program::TokenStream& b);

struct ClonePair {
  std::size_t a = 0;
  std::size_t b = 0;
  CloneClass cls = CloneClass::None;
};

struct CloneCounts {
  std::size_t type1 = 0;
  std::size_t type2c = 0;
  std::size_t type2 = 0;
};

struct CloneReport {
  std::vector<ClonePair> pairs;  // clone pairs only, a < b, sorted
  CloneCounts exclusive;         // each pair under its strictest class
  CloneCounts cumulative;        // looser classes include stricter pairs
  std::size_t programs = 0;
  std::size_t participating = 0;  // programs in at least one clone pair
  double fraction() const;        // participating / programs
};

// Whole-program clone detection. Throws LexError.
CloneReport detect_clones(const std::vector<std::string>& corpus);

nlohmann::json to_json(const CloneReport& r);

}  // namespace fpdiff::analysis
