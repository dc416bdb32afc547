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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "fpdiff/campaign/campaign.hpp"

namespace {

using fpdiff::campaign::CampaignConfig;
using nlohmann::json;

constexpr int kExitRuntime = 1;
constexpr int kExitConfig = 2;
constexpr int kExitToolchain = 3;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw fpdiff::ConfigError("cannot read config file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw fpdiff::ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

struct Overrides {
  std::optional<std::string> dir;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
  std::optional<double> p_mutation;
  std::optional<std::size_t> workers;

  void apply(json& j) const {
    if (dir) j["campaign_dir"] = *dir;
    if (budget) j["budget"] = *budget;
    if (seed) j["seed"] = *seed;
    if (mode) j["mode"] = *mode;
    if (p_mutation) j["p_mutation"] = *p_mutation;
    if (workers) j["workers"] = *workers;
  }
};

int run(const std::string& config_path, const Overrides& overrides, bool quiet) {
  json j = read_json(config_path);
  overrides.apply(j);
  const CampaignConfig config = fpdiff::campaign::config_from_json(j);
  fpdiff::campaign::RunOptions options;
  if (!quiet) options.log = &std::cerr;
  const auto report = fpdiff::campaign::run_campaign(config, options);
  std::cout << fpdiff::campaign::render_tables(report);
  std::cout << "Report written to " << (config.campaign_dir / "report").string() << "\n";
  return 0;
}

int report(const std::string& dir) {
  const auto r = fpdiff::campaign::regenerate_report(dir);
  std::cout << fpdiff::campaign::render_tables(r);
  return 0;
}

int validate_config(const std::string& config_path, const Overrides& overrides) {
  json j = read_json(config_path);
  overrides.apply(j);
  const CampaignConfig config = fpdiff::campaign::config_from_json(j);
  std::cout << "config ok: " << config.budget << " programs, " << config.compilers.size()
            << " compilers, " << config.levels.size() << " levels, mode "
            << fpdiff::campaign::to_string(config.mode) << "\n";
  return 0;
}

int probe(const std::string& config_path) {
  // Probing needs only the compiler list, so the rest of the config is not
  // validated here.
  const json j = read_json(config_path);
  if (!j.contains("compilers") || !j["compilers"].is_array()) {
    throw fpdiff::ConfigError("config has no compilers array");
  }
  json minimal = {{"budget", 1}, {"campaign_dir", "."}, {"compilers", j["compilers"]},
                  {"baseline", false}};
  const CampaignConfig config = fpdiff::campaign::config_from_json(minimal);
  for (const auto& [name, version] : fpdiff::campaign::probe_all(config)) {
    std::cout << name << ": " << version << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differential testing campaigns for floating-point C programs"};
  app.require_subcommand(1);

  Overrides overrides;
  std::string config_path;
  bool quiet = false;
  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--dir", overrides.dir, "Campaign directory");
    cmd->add_option("--budget", overrides.budget, "Number of accepted programs");
    cmd->add_option("--seed", overrides.seed, "Campaign seed");
    cmd->add_option("--mode", overrides.mode, "grammar-random, llm or hybrid");
    cmd->add_option("--p-mutation", overrides.p_mutation, "Feedback mutation probability");
    cmd->add_option("--workers", overrides.workers, "Compile and execute workers");
  };

  auto* run_cmd = app.add_subcommand("run", "Run or resume a campaign");
  run_cmd->add_option("config", config_path, "Campaign config (JSON)")->required();
  run_cmd->add_flag("-q,--quiet", quiet, "No per-program progress on stderr");
  add_overrides(run_cmd);

  std::string dir;
  auto* report_cmd = app.add_subcommand("report", "Rebuild tables from a campaign directory");
  report_cmd->add_option("dir", dir, "Campaign directory")->required();

  auto* validate_cmd =
      app.add_subcommand("validate-config", "Check a config without side effects");
  validate_cmd->add_option("config", config_path, "Campaign config (JSON)")->required();
  add_overrides(validate_cmd);

  auto* probe_cmd = app.add_subcommand("probe", "Print compiler versions");
  probe_cmd->add_option("config", config_path, "Campaign config (JSON)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*run_cmd) return run(config_path, overrides, quiet);
    if (*report_cmd) return report(dir);
    if (*validate_cmd) return validate_config(config_path, overrides);
    if (*probe_cmd) return probe(config_path);
  } catch (const fpdiff::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const fpdiff::compile::ToolchainMissing& e) {
    std::cerr << "toolchain error: " << e.what() << "\n";
    return kExitToolchain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitRuntime;
}
