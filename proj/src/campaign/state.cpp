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

#include "fpdiff/campaign/state.hpp"

#include <algorithm>
#include <fstream>

namespace fpdiff::campaign {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

inline constexpr int kManifestSchema = 1;
const char* const kTrackedLogs[] = {kRecordsFile, kExclusionsFile, kEventsFile};

std::int64_t ns(std::chrono::nanoseconds d) { return d.count(); }

}  // namespace

bool SuccessfulSet::insert(const std::string& id) {
  if (!index_.insert(id).second) return false;
  order_.push_back(id);
  return true;
}

void update_successful_set(SuccessfulSet& set, const std::string& program_id,
                           const std::vector<diffexec::ComparisonRecord>& records) {
  if (diffexec::any_inconsistent(records)) set.insert(program_id);
}

std::string pick_mutation_parent(const SuccessfulSet& set, Rng& rng) {
  if (set.empty()) throw EmptySet("no successful program to mutate");
  return rng.pick(set.members());
}

json to_json(const CampaignState& s) {
  json j;
  j["schema"] = kManifestSchema;
  j["attempts"] = s.attempts;
  j["accepted"] = s.accepted;
  j["rejected"] = s.rejected;
  j["rejections"] = s.rejections;
  j["programs"] = s.programs;
  j["successful"] = s.successful.members();
  j["committed_bytes"] = s.committed_bytes;
  j["time_ns"] = {{"generation", ns(s.time.generation)},
                  {"compilation", ns(s.time.compilation)},
                  {"execution", ns(s.time.execution)},
                  {"analysis", ns(s.time.analysis)},
                  {"wall", ns(s.time.wall)}};
  j["toolchains"] = s.toolchains;
  j["config_fingerprint"] = s.config_fingerprint;
  j["complete"] = s.complete;
  return j;
}

CampaignState state_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kManifestSchema) {
      throw Error("unsupported manifest schema");
    }
    CampaignState s;
    s.attempts = j.at("attempts").get<std::uint64_t>();
    s.accepted = j.at("accepted").get<std::uint64_t>();
    s.rejected = j.at("rejected").get<std::uint64_t>();
    s.rejections = j.at("rejections").get<std::map<std::string, std::uint64_t>>();
    s.programs = j.at("programs").get<std::vector<std::string>>();
    for (const auto& id : j.at("successful")) s.successful.insert(id.get<std::string>());
    s.committed_bytes = j.at("committed_bytes").get<std::map<std::string, std::uint64_t>>();
    const auto& t = j.at("time_ns");
    s.time.generation = std::chrono::nanoseconds(t.at("generation").get<std::int64_t>());
    s.time.compilation = std::chrono::nanoseconds(t.at("compilation").get<std::int64_t>());
    s.time.execution = std::chrono::nanoseconds(t.at("execution").get<std::int64_t>());
    s.time.analysis = std::chrono::nanoseconds(t.at("analysis").get<std::int64_t>());
    s.time.wall = std::chrono::nanoseconds(t.at("wall").get<std::int64_t>());
    s.toolchains = j.at("toolchains").get<std::map<std::string, std::string>>();
    s.config_fingerprint = j.at("config_fingerprint").get<std::string>();
    s.complete = j.at("complete").get<bool>();
    if (s.programs.size() != s.accepted || s.accepted + s.rejected != s.attempts) {
      throw Error("attempt counters disagree");
    }
    for (const auto& id : s.successful.members()) {
      if (std::find(s.programs.begin(), s.programs.end(), id) == s.programs.end()) {
        throw Error("successful program '" + id + "' was never accepted");
      }
    }
    return s;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed manifest: ") + e.what());
  }
}

CampaignState load_state(const fs::path& dir) {
  const fs::path manifest = dir / kManifestFile;
  if (!fs::exists(manifest)) return {};
  CampaignState s;
  try {
    s = state_from_json(json::parse(read_file(manifest.string())));
  } catch (const json::exception& e) {
    throw CorruptState(manifest, e.what());
  } catch (const Error& e) {
    throw CorruptState(manifest, e.what());
  }
  for (const char* log : kTrackedLogs) {
    const fs::path file = dir / log;
    const auto it = s.committed_bytes.find(log);
    if (it == s.committed_bytes.end()) throw CorruptState(manifest, std::string("no entry for ") + log);
    std::error_code ec;
    const auto size = fs::file_size(file, ec);
    if (ec) throw CorruptState(file, "missing");
    if (size < it->second) {
      throw CorruptState(file, "shorter than the committed " + std::to_string(it->second) +
                                   " bytes");
    }
  }
  for (const auto& id : s.programs) {
    const fs::path program = dir / "programs" / (id + ".c");
    if (!fs::exists(program)) throw CorruptState(program, "missing");
  }
  return s;
}

CampaignState resume_state(const fs::path& dir) {
  CampaignState s = load_state(dir);
  for (const char* log : kTrackedLogs) {
    const fs::path file = dir / log;
    if (s.committed_bytes.count(log)) {
      fs::resize_file(file, s.committed_bytes.at(log));
    }
  }
  return s;
}

void commit_state(const fs::path& dir, const CampaignState& state) {
  write_file_atomic((dir / kSuccessfulFile).string(),
                    json(state.successful.members()).dump(2) + "\n");
  write_file_atomic((dir / kManifestFile).string(), to_json(state).dump(2) + "\n");
}

std::uint64_t append_lines(const fs::path& file, const std::vector<json>& lines) {
  std::ofstream out(file, std::ios::binary | std::ios::app);
  if (!out) throw Error("cannot open '" + file.string() + "' for appending");
  for (const auto& line : lines) out << line.dump() << '\n';
  out.flush();
  if (!out) throw Error("write to '" + file.string() + "' failed");
  out.close();
  return fs::file_size(file);
}

std::vector<json> read_committed(const fs::path& dir, const CampaignState& state,
                                 const std::string& file) {
  const fs::path path = dir / file;
  std::string text = fs::exists(path) ? read_file(path.string()) : std::string();
  const auto it = state.committed_bytes.find(file);
  const std::uint64_t limit = it == state.committed_bytes.end() ? 0 : it->second;
  if (text.size() < limit) throw CorruptState(path, "shorter than committed size");
  text.resize(limit);
  std::vector<json> out;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    if (nl == std::string::npos) throw CorruptState(path, "unterminated last line");
    ++line_no;
    try {
      out.push_back(json::parse(text.substr(pos, nl - pos)));
    } catch (const json::exception& e) {
      throw CorruptState(path, "line " + std::to_string(line_no) + ": " + e.what());
    }
    pos = nl + 1;
  }
  return out;
}

std::vector<diffexec::ComparisonRecord> read_records(const fs::path& dir,
                                                     const CampaignState& state) {
  std::vector<diffexec::ComparisonRecord> out;
  int line = 0;
  for (const auto& j : read_committed(dir, state, kRecordsFile)) {
    ++line;
    try {
      out.push_back(diffexec::record_from_json(j));
    } catch (const Error& e) {
      throw CorruptState(dir / kRecordsFile, "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

std::vector<diffexec::Exclusion> read_exclusions(const fs::path& dir,
                                                 const CampaignState& state) {
  std::vector<diffexec::Exclusion> out;
  int line = 0;
  for (const auto& j : read_committed(dir, state, kExclusionsFile)) {
    ++line;
    try {
      out.push_back(diffexec::exclusion_from_json(j));
    } catch (const Error& e) {
      throw CorruptState(dir / kExclusionsFile, "line " + std::to_string(line) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace fpdiff::campaign
