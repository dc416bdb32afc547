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

#include "fpdiff/campaign/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>

namespace fpdiff::campaign {

using nlohmann::json;
using compile::CompilerFamily;
using compile::CompilerRole;
using compile::OptLevel;

std::string_view to_string(GeneratorMode m) {
  switch (m) {
    case GeneratorMode::GrammarRandom: return "grammar-random";
    case GeneratorMode::Llm: return "llm";
    case GeneratorMode::Hybrid: return "hybrid";
  }
  return "?";
}

GeneratorMode parse_mode(std::string_view text) {
  for (GeneratorMode m :
       {GeneratorMode::GrammarRandom, GeneratorMode::Llm, GeneratorMode::Hybrid}) {
    if (to_string(m) == text) return m;
  }
  throw ConfigError("unknown generator mode '" + std::string(text) +
                    "' (expected grammar-random, llm or hybrid)");
}

void validate(const CampaignConfig& c) {
  if (c.budget == 0) throw ConfigError("budget must be a positive integer");
  if (c.compilers.size() < 2) {
    throw ConfigError("at least two compilers are required for differential testing");
  }
  std::set<std::string> names;
  for (const auto& spec : c.compilers) {
    if (spec.name.empty()) throw ConfigError("compiler name must not be empty");
    if (spec.path.empty()) throw ConfigError("compiler '" + spec.name + "' has no path");
    if (!names.insert(spec.name).second) {
      throw ConfigError("duplicate compiler name '" + spec.name + "'");
    }
    if (spec.role == CompilerRole::Device && spec.family != CompilerFamily::NvccLike) {
      throw ConfigError("compiler '" + spec.name + "' has role device but is not nvcc-like");
    }
  }
  if (c.levels.empty()) throw ConfigError("levels must not be empty");
  std::set<OptLevel> levels(c.levels.begin(), c.levels.end());
  if (levels.size() != c.levels.size()) throw ConfigError("levels contain duplicates");
  if (c.baseline && !levels.count(OptLevel::O0_nofma)) {
    throw ConfigError("the baseline table requires level O0_nofma");
  }
  if (!(c.p_mutation >= 0.0 && c.p_mutation <= 1.0)) {
    throw ConfigError("p_mutation must lie in [0, 1]");
  }
  if (c.mode == GeneratorMode::GrammarRandom && c.backend) {
    throw ConfigError("grammar-random mode takes no backend");
  }
  if (c.mode != GeneratorMode::GrammarRandom && !c.backend) {
    throw ConfigError(std::string(to_string(c.mode)) + " mode requires a backend");
  }
  if (c.backend) {
    if (c.backend->retry.attempts < 1) throw ConfigError("retry.attempts must be >= 1");
    if (c.backend->kind == BackendKind::Http &&
        (c.backend->http.endpoint.empty() || c.backend->http.model.empty())) {
      throw ConfigError("http backend needs endpoint and model");
    }
  }
  if (c.attempt_cap_factor < 1) throw ConfigError("attempt_cap_factor must be >= 1");
  if (c.timeouts.compile.count() <= 0 || c.timeouts.execute.count() <= 0 ||
      c.timeouts.llm.count() <= 0) {
    throw ConfigError("timeouts must be positive");
  }
  if (c.sampling.max_tokens <= 0) throw ConfigError("sampling.max_tokens must be positive");
  if (c.sampling.temperature < 0) throw ConfigError("sampling.temperature must be >= 0");
  try {
    c.generator.check();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("generator: ") + e.what());
  }
  const auto& in = c.inputs;
  if (!(in.min_magnitude > 0 && in.min_magnitude <= in.max_magnitude)) {
    throw ConfigError("inputs: need 0 < min_magnitude <= max_magnitude");
  }
  if (in.int_min > in.int_max) throw ConfigError("inputs: int_min > int_max");
  if (in.array_length < c.generator.loop_bound_max) {
    throw ConfigError("inputs.array_length must cover generator.loop_bound_max");
  }
  if (c.campaign_dir.empty()) throw ConfigError("campaign_dir must be set");
}

namespace {

void check_keys(const json& j, std::string_view where,
                std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("bad value for '") + key + "'");
  }
}

void read_ms(const json& j, const char* key, std::chrono::milliseconds& out) {
  std::int64_t ms = out.count();
  read(j, key, ms);
  out = std::chrono::milliseconds(ms);
}

CampaignConfig parse_config(const json& j) {
  check_keys(j, "config",
             {"schema", "budget", "precision", "mode", "p_mutation", "seed", "compilers",
              "levels", "baseline", "diversity", "keep_binaries", "attempt_cap_factor",
              "workers", "timeouts", "backend", "sampling", "generator", "inputs",
              "campaign_dir"});
  int schema = kConfigSchema;
  read(j, "schema", schema);
  if (schema != kConfigSchema) {
    throw ConfigError("unsupported config schema " + std::to_string(schema));
  }
  CampaignConfig c;
  read(j, "budget", c.budget);
  if (j.contains("precision")) c.precision = parse_precision(j["precision"].get<std::string>());
  if (j.contains("mode")) c.mode = parse_mode(j["mode"].get<std::string>());
  read(j, "p_mutation", c.p_mutation);
  read(j, "seed", c.seed);
  if (j.contains("compilers")) {
    if (!j["compilers"].is_array()) throw ConfigError("compilers must be an array");
    for (const auto& cj : j["compilers"]) {
      check_keys(cj, "compiler", {"name", "family", "path", "role"});
      compile::CompilerSpec spec;
      read(cj, "name", spec.name);
      read(cj, "path", spec.path);
      if (spec.path.empty()) spec.path = spec.name;
      spec.family = compile::parse_family(cj.value("family", spec.name));
      spec.role = compile::parse_role(cj.value(
          "role", spec.family == CompilerFamily::NvccLike ? "device" : "host"));
      c.compilers.push_back(std::move(spec));
    }
  }
  if (j.contains("levels")) {
    c.levels.clear();
    for (const auto& l : j["levels"]) c.levels.push_back(compile::parse_level(l.get<std::string>()));
  }
  read(j, "baseline", c.baseline);
  read(j, "diversity", c.diversity);
  read(j, "keep_binaries", c.keep_binaries);
  read(j, "attempt_cap_factor", c.attempt_cap_factor);
  read(j, "workers", c.workers);
  if (j.contains("timeouts")) {
    const auto& t = j["timeouts"];
    check_keys(t, "timeouts", {"compile_ms", "execute_ms", "llm_ms"});
    read_ms(t, "compile_ms", c.timeouts.compile);
    read_ms(t, "execute_ms", c.timeouts.execute);
    read_ms(t, "llm_ms", c.timeouts.llm);
  }
  if (j.contains("backend") && !j["backend"].is_null()) {
    const auto& b = j["backend"];
    check_keys(b, "backend",
               {"kind", "endpoint", "model", "api_key_env", "system_message", "seed",
                "p_planted", "p_fenced", "p_prose", "p_invalid", "retry"});
    BackendConfig bc;
    const std::string kind = b.value("kind", "mock");
    if (kind == "mock") {
      bc.kind = BackendKind::Mock;
      bc.mock.seed = c.seed;
      read(b, "seed", bc.mock.seed);
      read(b, "p_planted", bc.mock.p_planted);
      read(b, "p_fenced", bc.mock.p_fenced);
      read(b, "p_prose", bc.mock.p_prose);
      read(b, "p_invalid", bc.mock.p_invalid);
    } else if (kind == "http") {
      bc.kind = BackendKind::Http;
      read(b, "endpoint", bc.http.endpoint);
      read(b, "model", bc.http.model);
      read(b, "api_key_env", bc.http.api_key_env);
      read(b, "system_message", bc.http.system_message);
    } else {
      throw ConfigError("unknown backend kind '" + kind + "' (expected mock or http)");
    }
    if (b.contains("retry")) {
      const auto& r = b["retry"];
      check_keys(r, "backend.retry", {"attempts", "initial_backoff_ms", "multiplier"});
      read(r, "attempts", bc.retry.attempts);
      read_ms(r, "initial_backoff_ms", bc.retry.initial_backoff);
      read(r, "multiplier", bc.retry.multiplier);
    }
    c.backend = bc;
  }
  if (j.contains("sampling")) {
    const auto& s = j["sampling"];
    check_keys(s, "sampling",
               {"temperature", "frequency_penalty", "presence_penalty", "max_tokens"});
    read(s, "temperature", c.sampling.temperature);
    read(s, "frequency_penalty", c.sampling.frequency_penalty);
    read(s, "presence_penalty", c.sampling.presence_penalty);
    read(s, "max_tokens", c.sampling.max_tokens);
  }
  if (j.contains("generator")) {
    const auto& g = j["generator"];
    check_keys(g, "generator",
               {"max_expr_depth", "max_block_stmts", "max_loop_nest", "min_params",
                "max_params", "max_pointer_params", "loop_bound_max", "max_terms",
                "p_paren", "p_call", "p_declare"});
    auto& gc = c.generator;
    read(g, "max_expr_depth", gc.max_expr_depth);
    read(g, "max_block_stmts", gc.max_block_stmts);
    read(g, "max_loop_nest", gc.max_loop_nest);
    read(g, "min_params", gc.min_params);
    read(g, "max_params", gc.max_params);
    read(g, "max_pointer_params", gc.max_pointer_params);
    read(g, "loop_bound_max", gc.loop_bound_max);
    read(g, "max_terms", gc.max_terms);
    read(g, "p_paren", gc.p_paren);
    read(g, "p_call", gc.p_call);
    read(g, "p_declare", gc.p_declare);
  }
  c.generator.precision = c.precision;
  if (j.contains("inputs")) {
    const auto& in = j["inputs"];
    check_keys(in, "inputs",
               {"min_magnitude", "max_magnitude", "int_min", "int_max", "array_length"});
    read(in, "min_magnitude", c.inputs.min_magnitude);
    read(in, "max_magnitude", c.inputs.max_magnitude);
    read(in, "int_min", c.inputs.int_min);
    read(in, "int_max", c.inputs.int_max);
    read(in, "array_length", c.inputs.array_length);
  }
  std::string dir;
  read(j, "campaign_dir", dir);
  c.campaign_dir = dir;
  validate(c);
  return c;
}

}  // namespace

CampaignConfig config_from_json(const json& j) {
  try {
    return parse_config(j);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
}

CampaignConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

json to_json(const CampaignConfig& c) {
  json j;
  j["schema"] = kConfigSchema;
  j["budget"] = c.budget;
  j["precision"] = to_string(c.precision);
  j["mode"] = to_string(c.mode);
  j["p_mutation"] = c.p_mutation;
  j["seed"] = c.seed;
  j["compilers"] = json::array();
  for (const auto& s : c.compilers) {
    j["compilers"].push_back({{"name", s.name},
                              {"family", compile::to_string(s.family)},
                              {"path", s.path},
                              {"role", compile::to_string(s.role)}});
  }
  j["levels"] = json::array();
  for (OptLevel l : c.levels) j["levels"].push_back(compile::to_string(l));
  j["baseline"] = c.baseline;
  j["diversity"] = c.diversity;
  j["keep_binaries"] = c.keep_binaries;
  j["attempt_cap_factor"] = c.attempt_cap_factor;
  j["workers"] = c.workers;
  j["timeouts"] = {{"compile_ms", c.timeouts.compile.count()},
                   {"execute_ms", c.timeouts.execute.count()},
                   {"llm_ms", c.timeouts.llm.count()}};
  if (c.backend) {
    const auto& b = *c.backend;
    json bj;
    if (b.kind == BackendKind::Mock) {
      bj = {{"kind", "mock"},
            {"seed", b.mock.seed},
            {"p_planted", b.mock.p_planted},
            {"p_fenced", b.mock.p_fenced},
            {"p_prose", b.mock.p_prose},
            {"p_invalid", b.mock.p_invalid}};
    } else {
      bj = {{"kind", "http"},
            {"endpoint", b.http.endpoint},
            {"model", b.http.model},
            {"api_key_env", b.http.api_key_env},
            {"system_message", b.http.system_message}};
    }
    bj["retry"] = {{"attempts", b.retry.attempts},
                   {"initial_backoff_ms", b.retry.initial_backoff.count()},
                   {"multiplier", b.retry.multiplier}};
    j["backend"] = bj;
  }
  j["sampling"] = {{"temperature", c.sampling.temperature},
                   {"frequency_penalty", c.sampling.frequency_penalty},
                   {"presence_penalty", c.sampling.presence_penalty},
                   {"max_tokens", c.sampling.max_tokens}};
  const auto& g = c.generator;
  j["generator"] = {{"max_expr_depth", g.max_expr_depth},
                    {"max_block_stmts", g.max_block_stmts},
                    {"max_loop_nest", g.max_loop_nest},
                    {"min_params", g.min_params},
                    {"max_params", g.max_params},
                    {"max_pointer_params", g.max_pointer_params},
                    {"loop_bound_max", g.loop_bound_max},
                    {"max_terms", g.max_terms},
                    {"p_paren", g.p_paren},
                    {"p_call", g.p_call},
                    {"p_declare", g.p_declare}};
  j["inputs"] = {{"min_magnitude", c.inputs.min_magnitude},
                 {"max_magnitude", c.inputs.max_magnitude},
                 {"int_min", c.inputs.int_min},
                 {"int_max", c.inputs.int_max},
                 {"array_length", c.inputs.array_length}};
  j["campaign_dir"] = c.campaign_dir.string();
  return j;
}

}  // namespace fpdiff::campaign
