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

#include "fpdiff/diffexec/compare.hpp"

#include <algorithm>

namespace fpdiff::diffexec {

using compile::OptLevel;
using nlohmann::json;

std::string_view to_string(ComparisonMode m) {
  return m == ComparisonMode::Cross ? "cross" : "baseline";
}

namespace {

ComparisonMode parse_mode(std::string_view s) {
  if (s == "cross") return ComparisonMode::Cross;
  if (s == "baseline") return ComparisonMode::Baseline;
  throw Error("unknown comparison mode '" + std::string(s) + "'");
}

json config_json(const ConfigId& c) {
  return {{"compiler", c.compiler}, {"level", compile::to_string(c.level)}};
}

ConfigId config_from_json(const json& j) {
  return {j.at("compiler").get<std::string>(),
          compile::parse_level(j.at("level").get<std::string>())};
}

const ConfigResult* find_result(const std::vector<ConfigResult>& results,
                                const ConfigId& id) {
  const auto it = std::find_if(results.begin(), results.end(),
                               [&](const ConfigResult& r) { return r.config == id; });
  return it == results.end() ? nullptr : &*it;
}

std::string failure_of(const ConfigResult* r, const ConfigId& id) {
  if (!r) return id.label() + ": not run";
  if (r->observation) return "";
  return id.label() + ": " + r->failure;
}

}  // namespace

ComparisonRecord compare_pair(const std::string& program_id, ComparisonMode mode,
                              const FpObservation& a, const FpObservation& b,
                              Precision precision) {
  ComparisonRecord r;
  r.program_id = program_id;
  r.mode = mode;
  r.level = mode == ComparisonMode::Cross ? a.config.level
                                          : std::max(a.config.level, b.config.level);
  r.a = a.config;
  r.b = b.config;
  r.bits_a = a.bits;
  r.bits_b = b.bits;
  r.precision = precision;
  r.inconsistent = a.bits != b.bits;
  r.kind_pair = KindPair::of(a.category, b.category);
  if (r.inconsistent) r.digit_diff = digit_difference(a.value, b.value);
  return r;
}

ConfigResult from_execution(const ConfigId& config, const ExecutionOutcome& outcome) {
  if (const auto* ok = std::get_if<ExecOk>(&outcome)) {
    return {config, ok->observation, ""};
  }
  return {config, std::nullopt, describe(outcome)};
}

ConfigResult from_build_failure(const ConfigId& config, std::string reason) {
  return {config, std::nullopt, std::move(reason)};
}

bool any_inconsistent(const std::vector<ComparisonRecord>& records) {
  return std::any_of(records.begin(), records.end(),
                     [](const ComparisonRecord& r) { return r.inconsistent; });
}

ComparisonBatch run_differential(const std::string& program_id, Precision precision,
                                 const std::vector<std::string>& compilers,
                                 const std::vector<OptLevel>& levels,
                                 const std::vector<ConfigResult>& results) {
  ComparisonBatch out;
  for (OptLevel level : levels) {
    for (std::size_t i = 0; i < compilers.size(); ++i) {
      for (std::size_t j = i + 1; j < compilers.size(); ++j) {
        const ConfigId ia{compilers[i], level};
        const ConfigId ib{compilers[j], level};
        const ConfigResult* ra = find_result(results, ia);
        const ConfigResult* rb = find_result(results, ib);
        const std::string fa = failure_of(ra, ia);
        const std::string fb = failure_of(rb, ib);
        if (fa.empty() && fb.empty()) {
          out.records.push_back(compare_pair(program_id, ComparisonMode::Cross,
                                             *ra->observation, *rb->observation,
                                             precision));
        } else {
          std::string reason = fa;
          if (!fb.empty()) reason += (reason.empty() ? "" : "; ") + fb;
          out.exclusions.push_back(
              {program_id, ComparisonMode::Cross, level, ia, ib, std::move(reason)});
        }
      }
    }
  }
  return out;
}

ComparisonBatch baseline_comparisons(const std::string& program_id,
                                     Precision precision, const std::string& compiler,
                                     const std::vector<OptLevel>& levels,
                                     const std::vector<ConfigResult>& results) {
  ComparisonBatch out;
  const ConfigId base{compiler, OptLevel::O0_nofma};
  const ConfigResult* rbase = find_result(results, base);
  const std::string fbase = failure_of(rbase, base);
  for (OptLevel level : levels) {
    if (level == OptLevel::O0_nofma) continue;
    const ConfigId other{compiler, level};
    if (!fbase.empty()) {
      out.exclusions.push_back({program_id, ComparisonMode::Baseline, level, base, other,
                                "baseline-missing (" + fbase + ")"});
      continue;
    }
    const ConfigResult* r = find_result(results, other);
    const std::string f = failure_of(r, other);
    if (!f.empty()) {
      out.exclusions.push_back(
          {program_id, ComparisonMode::Baseline, level, base, other, f});
      continue;
    }
    out.records.push_back(compare_pair(program_id, ComparisonMode::Baseline,
                                       *rbase->observation, *r->observation,
                                       precision));
  }
  return out;
}

json to_json(const ComparisonRecord& r) {
  json j;
  j["schema"] = kRecordSchema;
  j["mode"] = to_string(r.mode);
  j["program"] = r.program_id;
  j["level"] = compile::to_string(r.level);
  j["a"] = config_json(r.a);
  j["b"] = config_json(r.b);
  j["inconsistent"] = r.inconsistent;
  j["kind_pair"] = {to_string(r.kind_pair.first), to_string(r.kind_pair.second)};
  j["digit_diff"] = r.digit_diff ? json(*r.digit_diff) : json(nullptr);
  j["bits_a"] = format_bits(r.bits_a, r.precision);
  j["bits_b"] = format_bits(r.bits_b, r.precision);
  j["precision"] = to_string(r.precision);
  return j;
}

ComparisonRecord record_from_json(const json& j) {
  try {
    if (j.at("schema").get<int>() != kRecordSchema) {
      throw Error("unsupported record schema " + j.at("schema").dump());
    }
    ComparisonRecord r;
    r.mode = parse_mode(j.at("mode").get<std::string>());
    r.program_id = j.at("program").get<std::string>();
    r.level = compile::parse_level(j.at("level").get<std::string>());
    r.a = config_from_json(j.at("a"));
    r.b = config_from_json(j.at("b"));
    r.inconsistent = j.at("inconsistent").get<bool>();
    const auto& kp = j.at("kind_pair");
    r.kind_pair = KindPair::of(parse_category(kp.at(0).get<std::string>()),
                               parse_category(kp.at(1).get<std::string>()));
    if (!j.at("digit_diff").is_null()) r.digit_diff = j.at("digit_diff").get<int>();
    r.precision = parse_precision(j.at("precision").get<std::string>());
    r.bits_a = parse_output(j.at("bits_a").get<std::string>(), r.precision);
    r.bits_b = parse_output(j.at("bits_b").get<std::string>(), r.precision);
    return r;
  } catch (const json::exception& e) {
    throw Error(std::string("malformed comparison record: ") + e.what());
  }
}

json to_json(const Exclusion& e) {
  json j;
  j["schema"] = kRecordSchema;
  j["mode"] = to_string(e.mode);
  j["program"] = e.program_id;
  j["level"] = compile::to_string(e.level);
  j["a"] = config_json(e.a);
  j["b"] = config_json(e.b);
  j["reason"] = e.reason;
  return j;
}

Exclusion exclusion_from_json(const json& j) {
  try {
    Exclusion e;
    e.mode = parse_mode(j.at("mode").get<std::string>());
    e.program_id = j.at("program").get<std::string>();
    e.level = compile::parse_level(j.at("level").get<std::string>());
    e.a = config_from_json(j.at("a"));
    e.b = config_from_json(j.at("b"));
    e.reason = j.at("reason").get<std::string>();
    return e;
  } catch (const json::exception& ex) {
    throw Error(std::string("malformed exclusion: ") + ex.what());
  }
}

}  // namespace fpdiff::diffexec
