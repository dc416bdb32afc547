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

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "doctest.h"
#include "fpdiff/campaign/campaign.hpp"
#include "fpdiff/llm/prompts.hpp"
#include "fpdiff/program/generator.hpp"

using namespace fpdiff;
using namespace fpdiff::campaign;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fpdiff_campaign_test" / name;
  fs::remove_all(dir);
  return dir;
}

diffexec::ComparisonRecord record(bool inconsistent) {
  diffexec::ComparisonRecord r;
  r.program_id = "p";
  r.inconsistent = inconsistent;
  r.bits_b = inconsistent;
  return r;
}

json base_config(const fs::path& dir) {
  return {{"budget", 5},
          {"mode", "grammar-random"},
          {"seed", 3},
          {"compilers",
           {{{"name", "gcc"}, {"family", "gcc"}, {"path", "gcc"}},
            {{"name", "clang"}, {"family", "clang"}, {"path", "clang"}}}},
          {"diversity", false},
          {"campaign_dir", dir.string()}};
}

std::string config_error(const json& j) {
  try {
    config_from_json(j);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

std::vector<json> read_jsonl(const fs::path& file) {
  std::vector<json> out;
  std::ifstream in(file);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

// Answers every prompt with the same text.
class FixedBackend : public llm::LlmBackend {
 public:
  explicit FixedBackend(std::string text, bool fail = false)
      : text_(std::move(text)), fail_(fail) {}
  std::string name() const override { return "fixed"; }
  std::string model() const override { return "fixed"; }
  std::string complete(const llm::Prompt&, const llm::SamplingParams&,
                       std::chrono::milliseconds) override {
    if (fail_) throw llm::BackendError(llm::BackendErrorKind::Quota, "out of credit");
    return text_;
  }

 private:
  std::string text_;
  bool fail_;
};

json llm_config(const fs::path& dir, int budget) {
  json j = base_config(dir);
  j["mode"] = "llm";
  j["budget"] = budget;
  j["backend"] = {{"kind", "mock"}, {"retry", {{"attempts", 1}, {"initial_backoff_ms", 0}}}};
  return j;
}

}  // namespace

TEST_CASE("update_successful_set") {
  SuccessfulSet set;
  update_successful_set(set, "p1", {record(false), record(false)});
  CHECK(set.empty());
  update_successful_set(set, "p2", {record(false), record(true)});
  CHECK(set.members() == std::vector<std::string>{"p2"});
  update_successful_set(set, "p2", {record(true)});
  CHECK(set.size() == 1);
}

TEST_CASE("pick_mutation_parent") {
  SuccessfulSet set;
  Rng rng(5);
  CHECK_THROWS_AS(pick_mutation_parent(set, rng), EmptySet);
  set.insert("only");
  CHECK(pick_mutation_parent(set, rng) == "only");

  SuccessfulSet four;
  for (const char* id : {"a", "b", "c", "d"}) four.insert(id);
  std::map<std::string, int> freq;
  for (int i = 0; i < 10000; ++i) ++freq[pick_mutation_parent(four, rng)];
  for (const auto& [id, n] : freq) CHECK(n / 10000.0 == doctest::Approx(0.25).epsilon(0.08));
  CHECK(freq.size() == 4);
}

TEST_CASE("config invariants") {
  const fs::path dir = fresh_dir("config");
  const json ok = base_config(dir);
  const CampaignConfig c = config_from_json(ok);
  CHECK(c.budget == 5);
  CHECK(c.levels.size() == 6);
  CHECK(c.attempt_cap() == 15);
  CHECK(config_from_json(to_json(c)).budget == c.budget);
  CHECK(to_json(config_from_json(to_json(c))) == to_json(c));

  auto with = [&](const char* key, json value) {
    json j = ok;
    j[key] = value;
    return j;
  };
  CHECK(config_error(with("compilers", json::array({ok["compilers"][0]})))
            .find("two compilers") != std::string::npos);
  CHECK(config_error(with("budget", 0)).find("budget") != std::string::npos);
  CHECK(config_error(with("levels", {"O0", "O1"})).find("O0_nofma") != std::string::npos);
  CHECK(config_error(with("levels", {"O0", "O4"})).find("O4") != std::string::npos);
  CHECK(config_error(with("mode", "llm")).find("requires a backend") != std::string::npos);
  CHECK(config_error(with("backend", {{"kind", "mock"}})).find("no backend") !=
        std::string::npos);
  CHECK(config_error(with("p_mutation", 1.5)).find("p_mutation") != std::string::npos);
  CHECK(config_error(with("budgett", 5)).find("budgett") != std::string::npos);
  CHECK(config_error(with("budget", "five")).find("budget") != std::string::npos);

  json device = ok;
  device["compilers"][1]["role"] = "device";
  CHECK(config_error(device).find("nvcc") != std::string::npos);

  json no_baseline = with("levels", {"O0", "O1"});
  no_baseline["baseline"] = false;
  CHECK(config_from_json(no_baseline).levels.size() == 2);
}

TEST_CASE("persistence") {
  const fs::path dir = fresh_dir("persist");
  CHECK(load_state(dir).attempts == 0);

  fs::create_directories(dir / "programs");
  write_file((dir / "programs" / "p000000.c").string(), "int main(void) { return 0; }\n");
  CampaignState s;
  s.attempts = 2;
  s.accepted = 1;
  s.rejected = 1;
  s.rejections["harness"] = 1;
  s.programs = {"p000000"};
  s.successful.insert("p000000");
  s.config_fingerprint = "abc";
  s.committed_bytes[kRecordsFile] = append_lines(dir / kRecordsFile, {diffexec::to_json(record(true))});
  s.committed_bytes[kExclusionsFile] = append_lines(dir / kExclusionsFile, {});
  s.committed_bytes[kEventsFile] = append_lines(dir / kEventsFile, {json{{"attempt", 0}}});
  commit_state(dir, s);

  const CampaignState loaded = load_state(dir);
  CHECK(to_json(loaded) == to_json(s));
  CHECK(read_records(dir, loaded).size() == 1);
  CHECK(json::parse(read_file((dir / kSuccessfulFile).string())) == json{"p000000"});

  SUBCASE("partial attempt is truncated on resume") {
    append_lines(dir / kRecordsFile, {diffexec::to_json(record(false))});
    std::ofstream(dir / kRecordsFile, std::ios::app) << "{\"half";
    CHECK(read_records(dir, load_state(dir)).size() == 1);
    resume_state(dir);
    CHECK(fs::file_size(dir / kRecordsFile) == s.committed_bytes[kRecordsFile]);
  }
  SUBCASE("missing records file") {
    fs::remove(dir / kRecordsFile);
    try {
      load_state(dir);
      FAIL("expected CorruptState");
    } catch (const CorruptState& e) {
      CHECK(e.file() == dir / kRecordsFile);
    }
  }
  SUBCASE("short log") {
    fs::resize_file(dir / kEventsFile, 3);
    CHECK_THROWS_AS(load_state(dir), CorruptState);
  }
  SUBCASE("missing program") {
    fs::remove(dir / "programs" / "p000000.c");
    CHECK_THROWS_AS(load_state(dir), CorruptState);
  }
  SUBCASE("garbled manifest") {
    write_file((dir / kManifestFile).string(), "{\"schema\": 1");
    CHECK_THROWS_AS(load_state(dir), CorruptState);
  }
}

TEST_CASE("grammar-random campaign conserves comparisons") {
  const fs::path dir = fresh_dir("g5");
  const auto report = run_campaign(config_from_json(base_config(dir)));
  CHECK(report.totals.accepted == 5);
  CHECK(report.totals.attempts == 5);
  CHECK(report.summary.nominal == 30);
  const auto records = read_jsonl(dir / kRecordsFile);
  const auto exclusions = read_jsonl(dir / kExclusionsFile);
  std::size_t cross = 0, baseline = 0;
  for (const auto& r : records) (r["mode"] == "cross" ? cross : baseline) += 1;
  for (const auto& e : exclusions) (e["mode"] == "cross" ? cross : baseline) += 1;
  CHECK(cross == 30);
  CHECK(baseline == 2 * 5 * 5);
  CHECK(report.summary.compared + report.summary.excluded == 30);
  CHECK(report.summary.inconsistent <= report.summary.compared);
  const auto& t = report.time;
  CHECK(t.generation + t.compilation + t.execution + t.analysis <= t.wall);
  CHECK(report.toolchains.size() == 2);
  for (const char* f : {"tables.txt", "tables.json", "report.json"}) {
    CHECK(fs::exists(dir / "report" / f));
  }
  CHECK(fs::is_empty(dir / "build"));

  const std::string tables = read_file((dir / "report" / "tables.txt").string());
  CHECK(render_tables(regenerate_report(dir)) == tables);
  CHECK(read_file((dir / "report" / "tables.txt").string()) == tables);

  SUBCASE("rerun of a finished campaign changes nothing") {
    const auto before = fs::file_size(dir / kRecordsFile);
    run_campaign(config_from_json(base_config(dir)));
    CHECK(fs::file_size(dir / kRecordsFile) == before);
  }
  SUBCASE("different config in the same directory") {
    json other = base_config(dir);
    other["seed"] = 4;
    CHECK_THROWS_AS(run_campaign(config_from_json(other)), ConfigError);
  }
}

TEST_CASE("mutation prompts embed committed successful programs") {
  const fs::path dir = fresh_dir("hybrid");
  json j = llm_config(dir, 8);
  j["mode"] = "hybrid";
  j["levels"] = {"O0_nofma", "O3_fastmath"};
  j["backend"]["p_planted"] = 0.6;
  run_campaign(config_from_json(j));

  std::set<std::string> successful;
  int mutations = 0;
  for (const auto& e : read_jsonl(dir / kEventsFile)) {
    if (e["strategy"] == "mutation") {
      ++mutations;
      const std::string parent = e["parent"];
      CHECK(successful.count(parent) == 1);
      CHECK(e["successful_set_size"] == successful.size());
      const std::string prompt = read_file((dir / e["prompt"].get<std::string>()).string());
      CHECK(llm::extract_parent(prompt) ==
            read_file((dir / "programs" / (parent + ".c")).string()));
    } else {
      CHECK(e["strategy"] == "grammar");
    }
    if (e["status"] == "accepted" && e["successful"]) successful.insert(e["program_id"]);
  }
  CHECK(mutations > 0);
  CHECK(successful.size() ==
        json::parse(read_file((dir / kSuccessfulFile).string())).size());
  CHECK(llm::network_request_count() == 0);
}

TEST_CASE("resume after a stop equals an uninterrupted run") {
  const fs::path a = fresh_dir("resume_a");
  const fs::path b = fresh_dir("resume_b");
  json ja = llm_config(a, 5);
  ja["mode"] = "hybrid";
  ja["levels"] = {"O0_nofma", "O3_fastmath"};
  ja["backend"]["p_planted"] = 0.5;
  json jb = ja;
  jb["campaign_dir"] = b.string();
  run_campaign(config_from_json(ja));

  RunOptions stop;
  stop.stop_after_attempts = 3;
  const auto partial = run_campaign(config_from_json(jb), stop);
  CHECK(partial.totals.attempts == 3);
  CHECK_FALSE(fs::exists(b / "report" / "tables.txt"));
  std::ofstream(b / kRecordsFile, std::ios::app) << "{\"torn\": ";
  run_campaign(config_from_json(jb));
  CHECK(read_file((a / kRecordsFile).string()) == read_file((b / kRecordsFile).string()));
  CHECK(read_file((a / kExclusionsFile).string()) ==
        read_file((b / kExclusionsFile).string()));
  CHECK(read_file((a / "report" / "tables.txt").string()) ==
        read_file((b / "report" / "tables.txt").string()));
}

TEST_CASE("rejections consume attempts, not budget") {
  SUBCASE("backend failures hit the attempt cap") {
    const fs::path dir = fresh_dir("quota");
    RunOptions opt;
    opt.backend = std::make_shared<FixedBackend>("", true);
    const auto r = run_campaign(config_from_json(llm_config(dir, 2)), opt);
    CHECK(r.totals.accepted == 0);
    CHECK(r.totals.attempts == 6);
    CHECK(r.totals.cap_reached);
    CHECK(r.totals.rejections.at("backend-error") == 6);
    CHECK(r.summary.nominal == 0);
    const std::string tables = read_file((dir / "report" / "tables.txt").string());
    CHECK(tables.find("0 of 2 programs accepted in 6 attempts (cap 6), attempt cap reached") !=
          std::string::npos);
  }
  SUBCASE("programs that compile nowhere") {
    const fs::path dir = fresh_dir("nocompile");
    std::string text = program::generate_random_program(9, {}).text;
    const auto pos = text.find("*result = comp;");
    REQUIRE(pos != std::string::npos);
    text.insert(pos, "comp += undeclared_value;\n  ");
    RunOptions opt;
    opt.backend = std::make_shared<FixedBackend>(text);
    const auto r = run_campaign(config_from_json(llm_config(dir, 1)), opt);
    CHECK(r.totals.accepted == 0);
    CHECK(r.totals.rejected == 3);
    CHECK(r.totals.rejections.count("compile-failed") == 1);
    CHECK(fs::is_empty(dir / "programs"));
  }
  SUBCASE("invalid responses") {
    const fs::path dir = fresh_dir("invalid");
    RunOptions opt;
    opt.backend = std::make_shared<FixedBackend>("Sorry, I cannot help with that.");
    const auto r = run_campaign(config_from_json(llm_config(dir, 1)), opt);
    CHECK(r.totals.rejections.at("invalid-structure") == 3);
    CHECK(fs::exists(dir / "prompts" / "a000002.response.txt"));
  }
}
