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

#include "fpdiff/program/tokenizer.hpp"

namespace fpdiff::analysis {

// Weights of the three components; they should sum to 1.
struct SimilarityWeights {
  double ngram = 1.0 / 3;
  double weighted_ngram = 1.0 / 3;
  double syntax = 1.0 / 3;
};

// BLEU of cand against ref: clipped n-gram precision for n = 1..4,
// geometric mean, brevity penalty, no smoothing. Orders for which cand has
// no n-grams are left out of the mean.
double ngram_match(const std::vector<std::string>& cand,
                   const std::vector<std::string>& ref);

// Like ngram_match, but unigram matches are weighted: C keywords 1.0,
// everything else 0.2.
double weighted_ngram_match(const std::vector<std::string>& cand,
                            const std::vector<std::string>& ref);

// Fraction of ref's subtrees (compute body bracketed into blocks,
// statements and groups; identifiers and literals normalized) that also
// occur in cand, counted as multisets.
double syntax_match(const program::TokenStream& cand, const program::TokenStream& ref);

// Per-program data reused across pairs.
struct ScoredProgram {
  std::vector<std::string> lexemes;
  program::TokenStream body;  // compute body, or every token if there is none
};

ScoredProgram prepare(std::string_view text);  // throws LexError

// Weighted sum of the three components, averaged over both directions.
double similarity_score(const ScoredProgram& a, const ScoredProgram& b,
                        const SimilarityWeights& w = {});
double similarity_score(std::string_view a, std::string_view b,
                        const SimilarityWeights& w = {});

struct SimilarityReport {
  double mean = 0;
  std::size_t pairs = 0;
  std::size_t skipped_programs = 0;  // programs that failed to tokenize
  std::vector<std::vector<double>> matrix;  // filled when requested
};

// Mean over all unordered pairs of programs that tokenize. Pairs are scored
// in parallel and summed in index order, so the result does not depend on
// the worker count. Throws DomainError with fewer than two usable programs.
SimilarityReport mean_pairwise_similarity(const std::vector<std::string>& corpus,
                                          const SimilarityWeights& w = {},
                                          std::size_t workers = 1,
                                          bool keep_matrix = false);

}  // namespace fpdiff::analysis
