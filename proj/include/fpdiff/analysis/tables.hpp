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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fpdiff/diffexec/compare.hpp"

namespace fpdiff::analysis {

using compile::OptLevel;
using diffexec::ComparisonRecord;
using diffexec::KindPair;

class DomainError : public Error {
 public:
  using Error::Error;
};

// C(c,2) * levels * programs. Throws DomainError on zero counts or c < 2.
std::uint64_t nominal_comparisons(std::uint64_t n_compilers, std::uint64_t n_levels,
                                  std::uint64_t n_programs);

// n_incons / nominal_comparisons, as a fraction. Throws DomainError.
double inconsistency_rate(std::uint64_t n_incons, std::uint64_t n_compilers,
                          std::uint64_t n_levels, std::uint64_t n_programs);

// Two decimals and a percent sign: 0.26561 -> "26.56%".
std::string format_percent(double fraction);

struct DigitStats {
  int min = 0;
  int max = 0;
  double mean = 0;
  std::uint64_t count = 0;
};

std::optional<DigitStats> digit_stats(const std::vector<int>& diffs);

struct RateCell {
  std::uint64_t count = 0;
  double rate = 0;  // count / programs
  std::optional<DigitStats> digits;
  std::uint64_t non_finite = 0;  // inconsistencies without a digit difference
};

// Inconsistent cross-compiler records by kind pair and level.
struct KindTable {
  std::vector<OptLevel> levels;  // rows
  std::vector<KindPair> kinds;   // columns, only pairs that occur
  std::map<std::pair<KindPair, OptLevel>, std::uint64_t> counts;
  std::uint64_t total = 0;

  std::optional<std::uint64_t> at(KindPair kind, OptLevel level) const;
};

// Levels default to those present in the records, in level order.
KindTable kind_distribution(const std::vector<ComparisonRecord>& records,
                            std::vector<OptLevel> levels = {});

using CompilerPair = std::pair<std::string, std::string>;

// Cross-compiler rates per pair and level over n_programs; the totals row
// sums each pair's cells.
struct PairTable {
  std::vector<CompilerPair> pairs;  // columns, in compiler order
  std::vector<OptLevel> levels;     // rows
  std::uint64_t programs = 0;
  std::map<std::pair<std::size_t, OptLevel>, RateCell> cells;
  std::vector<RateCell> totals;  // per pair

  const RateCell& at(std::size_t pair, OptLevel level) const;
};

PairTable compiler_pair_table(const std::vector<ComparisonRecord>& records,
                              std::uint64_t n_programs,
                              const std::vector<std::string>& compilers,
                              const std::vector<OptLevel>& levels);

// Each non-baseline level against O0_nofma, per compiler, over n_programs.
struct BaselineTable {
  std::vector<std::string> compilers;  // columns
  std::vector<OptLevel> levels;        // rows, O0_nofma excluded
  std::uint64_t programs = 0;
  std::map<std::pair<std::size_t, OptLevel>, RateCell> cells;
  std::vector<RateCell> totals;  // per compiler

  const RateCell& at(std::size_t compiler, OptLevel level) const;
};

BaselineTable baseline_table(const std::vector<ComparisonRecord>& records,
                             std::uint64_t n_programs,
                             const std::vector<std::string>& compilers,
                             const std::vector<OptLevel>& levels);

// Headline numbers over cross-compiler records.
struct Summary {
  std::uint64_t programs = 0;
  std::uint64_t compilers = 0;
  std::uint64_t levels = 0;
  std::uint64_t nominal = 0;
  std::uint64_t compared = 0;
  std::uint64_t excluded = 0;
  std::uint64_t inconsistent = 0;
  double rate = 0;            // over nominal
  double effective_rate = 0;  // over compared; 0 when nothing was compared
};

Summary summarize(const std::vector<ComparisonRecord>& records, std::uint64_t excluded,
                  std::uint64_t n_programs, std::uint64_t n_compilers,
                  std::uint64_t n_levels);

std::string render_text(const Summary& s);
std::string render_text(const KindTable& t);
std::string render_text(const PairTable& t);
std::string render_text(const BaselineTable& t);

nlohmann::json to_json(const Summary& s);
nlohmann::json to_json(const KindTable& t);
nlohmann::json to_json(const PairTable& t);
nlohmann::json to_json(const BaselineTable& t);

}  // namespace fpdiff::analysis
