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
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"
#include "fpdiff/analysis/clones.hpp"
#include "fpdiff/analysis/similarity.hpp"
#include "fpdiff/analysis/tables.hpp"
#include "fpdiff/campaign/config.hpp"
#include "fpdiff/campaign/state.hpp"

namespace fpdiff::campaign {

struct Totals {
  std::uint64_t budget = 0;
  std::uint64_t attempt_cap = 0;
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::map<std::string, std::uint64_t> rejections;
  bool cap_reached = false;  // stopped before the budget was met
  std::uint64_t successful = 0;
  std::uint64_t baseline_records = 0;
  std::uint64_t baseline_inconsistent = 0;
  std::uint64_t baseline_exclusions = 0;
};

struct CampaignReport {
  Totals totals;
  analysis::Summary summary;  // cross-compiler comparisons only
  analysis::KindTable kinds;
  analysis::PairTable pairs;
  std::optional<analysis::BaselineTable> baseline;
  std::optional<analysis::SimilarityReport> similarity;
  std::optional<analysis::CloneReport> clones;
  TimeAccounting time;
  std::map<std::string, std::string> toolchains;
  bool complete = false;
};

// Re-derives every table from the committed logs and programs in dir.
CampaignReport derive_report(const CampaignConfig& config, const std::filesystem::path& dir,
                             const CampaignState& state);

// Deterministic views: identical logs give identical bytes.
std::string render_tables(const CampaignReport& report);
nlohmann::json tables_json(const CampaignReport& report);

// Adds totals, time accounting and toolchain versions to tables_json.
nlohmann::json report_json(const CampaignReport& report);

// Writes report/tables.txt, report/tables.json and report/report.json.
void write_report(const std::filesystem::path& dir, const CampaignReport& report);

// Loads config.json and the manifest from a campaign directory and rewrites
// report/tables.txt and report/tables.json. Throws CorruptState or ConfigError.
CampaignReport regenerate_report(const std::filesystem::path& dir);

struct RunOptions {
  // Replaces the backend built from the config.
  std::shared_ptr<llm::LlmBackend> backend;
  // Return after this many committed attempts without writing the report.
  std::optional<std::uint64_t> stop_after_attempts;
  std::ostream* log = nullptr;
};

// Version strings for every configured compiler. Throws ToolchainMissing.
std::map<std::string, std::string> probe_all(const CampaignConfig& config);

// Runs or resumes the campaign in config.campaign_dir. Throws ConfigError,
// ToolchainMissing or CorruptState at startup; per-program failures are
// recorded and skipped.
CampaignReport run_campaign(const CampaignConfig& config, const RunOptions& options = {});

}  // namespace fpdiff::campaign
