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
#include <map>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "fpdiff/diffexec/compare.hpp"

namespace fpdiff::campaign {

class EmptySet : public Error {
 public:
  using Error::Error;
};

class CorruptState : public Error {
 public:
  CorruptState(const std::filesystem::path& file, const std::string& what)
      : Error("corrupt campaign state in '" + file.string() + "': " + what), file_(file) {}
  const std::filesystem::path& file() const { return file_; }

 private:
  std::filesystem::path file_;
};

// Program ids in insertion order, each at most once.
class SuccessfulSet {
 public:
  bool insert(const std::string& id);  // false when already present
  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t size() const { return order_.size(); }
  bool empty() const { return order_.empty(); }
  const std::vector<std::string>& members() const { return order_; }

 private:
  std::vector<std::string> order_;
  std::set<std::string> index_;
};

// Adds program_id iff some record is inconsistent. Idempotent.
void update_successful_set(SuccessfulSet& set, const std::string& program_id,
                           const std::vector<diffexec::ComparisonRecord>& records);

// Uniform over the current members. Throws EmptySet.
std::string pick_mutation_parent(const SuccessfulSet& set, Rng& rng);

struct TimeAccounting {
  std::chrono::nanoseconds generation{0};
  std::chrono::nanoseconds compilation{0};
  std::chrono::nanoseconds execution{0};
  std::chrono::nanoseconds analysis{0};
  std::chrono::nanoseconds wall{0};
};

// Append-only logs tracked by the manifest.
inline constexpr const char* kRecordsFile = "records.jsonl";
inline constexpr const char* kExclusionsFile = "exclusions.jsonl";
inline constexpr const char* kEventsFile = "events.jsonl";
inline constexpr const char* kManifestFile = "manifest.json";
inline constexpr const char* kSuccessfulFile = "successful.json";
inline constexpr const char* kConfigFile = "config.json";

// Everything needed to continue a campaign after the last committed attempt.
struct CampaignState {
  std::uint64_t attempts = 0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
  std::map<std::string, std::uint64_t> rejections;  // reason class -> count
  std::vector<std::string> programs;                // accepted ids in order
  SuccessfulSet successful;
  std::map<std::string, std::uint64_t> committed_bytes;  // log file -> size
  TimeAccounting time;
  std::map<std::string, std::string> toolchains;  // compiler name -> version
  std::string config_fingerprint;
  bool complete = false;
};

nlohmann::json to_json(const CampaignState& s);
CampaignState state_from_json(const nlohmann::json& j);  // throws Error

// Fresh directory: empty state. Otherwise parses the manifest and checks
// that every tracked log exists and holds at least its committed bytes.
// Throws CorruptState naming the failing file.
CampaignState load_state(const std::filesystem::path& dir);

// load_state, then truncates each log to its committed size so a partially
// written attempt disappears.
CampaignState resume_state(const std::filesystem::path& dir);

// Rewrites manifest.json and successful.json atomically. The manifest is
// written last so it never points past data on disk.
void commit_state(const std::filesystem::path& dir, const CampaignState& state);

// Appends lines to a log and returns the new size in bytes.
std::uint64_t append_lines(const std::filesystem::path& file,
                           const std::vector<nlohmann::json>& lines);

// Committed prefix of a JSON-lines log. Throws CorruptState on bad lines.
std::vector<nlohmann::json> read_committed(const std::filesystem::path& dir,
                                           const CampaignState& state,
                                           const std::string& file);

std::vector<diffexec::ComparisonRecord> read_records(const std::filesystem::path& dir,
                                                     const CampaignState& state);
std::vector<diffexec::Exclusion> read_exclusions(const std::filesystem::path& dir,
                                                 const CampaignState& state);

}  // namespace fpdiff::campaign
