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
#include <vector>

#include "json.hpp"

#include "fpdiff/diffexec/execute.hpp"

namespace fpdiff::diffexec {

// Cross: two compilers at one level. Baseline: one compiler, a level against
// O0_nofma.
enum class ComparisonMode { Cross, Baseline };

std::string_view to_string(ComparisonMode m);

inline constexpr int kRecordSchema = 1;

struct ComparisonRecord {
  std::string program_id;
  ComparisonMode mode = ComparisonMode::Cross;
  compile::OptLevel level = compile::OptLevel::O0;  // baseline: the non-baseline level
  ConfigId a, b;
  bool inconsistent = false;
  KindPair kind_pair;
  std::optional<int> digit_diff;
  std::uint64_t bits_a = 0, bits_b = 0;
  Precision precision = Precision::FP64;

  bool operator==(const ComparisonRecord&) const = default;
};

ComparisonRecord compare_pair(const std::string& program_id, ComparisonMode mode,
                              const FpObservation& a, const FpObservation& b,
                              Precision precision);

// A comparison that could not be made because one side has no observation.
struct Exclusion {
  std::string program_id;
  ComparisonMode mode = ComparisonMode::Cross;
  compile::OptLevel level = compile::OptLevel::O0;
  ConfigId a, b;
  std::string reason;

  bool operator==(const Exclusion&) const = default;
};

// What one configuration produced: an observation, or why there is none.
struct ConfigResult {
  ConfigId config;
  std::optional<FpObservation> observation;
  std::string failure;
};

ConfigResult from_execution(const ConfigId& config, const ExecutionOutcome& outcome);
ConfigResult from_build_failure(const ConfigId& config, std::string reason);

struct ComparisonBatch {
  std::vector<ComparisonRecord> records;
  std::vector<Exclusion> exclusions;
};

bool any_inconsistent(const std::vector<ComparisonRecord>& records);

// All C(k,2) compiler pairs at every level, in compiler order. A pair with a
// missing or failed side becomes an exclusion, so records + exclusions is
// always C(k,2) * |levels|.
ComparisonBatch run_differential(const std::string& program_id, Precision precision,
                                 const std::vector<std::string>& compilers,
                                 const std::vector<compile::OptLevel>& levels,
                                 const std::vector<ConfigResult>& results);

// Each level other than O0_nofma against O0_nofma for one compiler. When the
// baseline itself failed, every level becomes a baseline-missing exclusion.
ComparisonBatch baseline_comparisons(const std::string& program_id,
                                     Precision precision, const std::string& compiler,
                                     const std::vector<compile::OptLevel>& levels,
                                     const std::vector<ConfigResult>& results);

nlohmann::json to_json(const ComparisonRecord& r);
ComparisonRecord record_from_json(const nlohmann::json& j);  // throws Error
nlohmann::json to_json(const Exclusion& e);
Exclusion exclusion_from_json(const nlohmann::json& j);  // throws Error

}  // namespace fpdiff::diffexec
