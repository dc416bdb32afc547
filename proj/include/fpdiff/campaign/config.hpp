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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "fpdiff/compile/driver.hpp"
#include "fpdiff/diffexec/inputs.hpp"
#include "fpdiff/llm/backend.hpp"
#include "fpdiff/program/generator.hpp"

namespace fpdiff::campaign {

inline constexpr int kConfigSchema = 1;

// grammar-random: programs from the built-in grammar generator, no LLM.
// llm: every program from a grammar-based LLM prompt, no feedback.
// hybrid: grammar-based prompts plus feedback mutation of successful programs.
enum class GeneratorMode { GrammarRandom, Llm, Hybrid };

std::string_view to_string(GeneratorMode m);
GeneratorMode parse_mode(std::string_view text);  // throws ConfigError

enum class BackendKind { Mock, Http };

struct BackendConfig {
  BackendKind kind = BackendKind::Mock;
  llm::HttpBackendConfig http;
  llm::MockConfig mock;
  llm::RetryPolicy retry;
};

struct Timeouts {
  std::chrono::milliseconds compile{60000};
  std::chrono::milliseconds execute{10000};
  std::chrono::milliseconds llm{120000};
};

struct CampaignConfig {
  std::uint64_t budget = 0;  // accepted programs N
  Precision precision = Precision::FP64;
  GeneratorMode mode = GeneratorMode::GrammarRandom;
  double p_mutation = 0.5;
  std::uint64_t seed = 0;
  std::vector<compile::CompilerSpec> compilers;
  std::vector<compile::OptLevel> levels{compile::kAllLevels.begin(),
                                        compile::kAllLevels.end()};
  bool baseline = true;  // per-compiler comparisons against O0_nofma
  bool diversity = true;
  bool keep_binaries = false;
  std::uint64_t attempt_cap_factor = 3;
  std::size_t workers = 0;  // 0 picks the hardware concurrency
  Timeouts timeouts;
  std::optional<BackendConfig> backend;
  llm::SamplingParams sampling;
  program::GenConfig generator;
  diffexec::InputPolicy inputs;
  std::filesystem::path campaign_dir;

  std::uint64_t attempt_cap() const { return attempt_cap_factor * budget; }
};

// Throws ConfigError naming the first violated invariant.
void validate(const CampaignConfig& config);

// Parses and validates. Unknown keys are errors so typos do not pass silently.
CampaignConfig config_from_json(const nlohmann::json& j);
CampaignConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const CampaignConfig& config);

}  // namespace fpdiff::campaign
