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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass criterion numbers as arguments to run a subset.

#include <bit>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "fpdiff/analysis/clones.hpp"
#include "fpdiff/analysis/similarity.hpp"
#include "fpdiff/analysis/tables.hpp"
#include "fpdiff/campaign/campaign.hpp"
#include "fpdiff/compile/driver.hpp"
#include "fpdiff/diffexec/compare.hpp"
#include "fpdiff/diffexec/fp.hpp"
#include "fpdiff/llm/prompts.hpp"
#include "fpdiff/program/generator.hpp"
#include "fpdiff/program/structure.hpp"
#include "oracles.hpp"

using namespace fpdiff;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;
using nlohmann::json;

namespace {

// Pinned limits.
constexpr double kAc1MaxSeconds = 1e-3;
constexpr double kAc3MaxSeconds = 300;
constexpr double kAc5MaxSeconds = 600;
constexpr int kAc4Pairs = 10000;
constexpr int kAc8Pairs = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string detail) { return {false, std::move(detail)}; }

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::string fmt(const char* format, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

fs::path work_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "fpdiff_acceptance" / name;
  fs::remove_all(dir);
  return dir;
}

json host_compilers() {
  return {{{"name", "gcc"}, {"family", "gcc"}, {"path", "gcc"}},
          {{"name", "clang"}, {"family", "clang"}, {"path", "clang"}}};
}

std::vector<json> read_jsonl(const fs::path& file) {
  std::vector<json> out;
  std::ifstream in(file);
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

// 1. Rate formula against the two headline rates.
Outcome ac1() {
  const auto t = Clock::now();
  const std::string a = analysis::format_percent(analysis::inconsistency_rate(4781, 3, 6, 1000));
  const std::string b = analysis::format_percent(analysis::inconsistency_rate(2147, 3, 6, 1000));
  const double s = seconds_since(t);
  const bool pass = a == "26.56%" && b == "11.93%" && s < kAc1MaxSeconds;
  return {pass, a + " / " + b + " in " + fmt("%.1f us", s * 1e6)};
}

// 2. Every cell of the level table.
Outcome ac2() {
  struct Row {
    const char* level;
    const char* host;
    const char* device;
  };
  const Row table[] = {
      {"O0_nofma", "-O0 -ffp-contract=off", "-O0 --fmad=false"},
      {"O0", "-O0", "-O0"},
      {"O1", "-O1", "-O1"},
      {"O2", "-O2", "-O2"},
      {"O3", "-O3", "-O3"},
      {"O3_fastmath", "-O3 -ffast-math", "-O3 --use_fast_math"},
  };
  auto joined = [](const std::vector<std::string>& flags) {
    std::string s;
    for (const auto& f : flags) s += (s.empty() ? "" : " ") + f;
    return s;
  };
  int cells = 0;
  for (const Row& r : table) {
    for (auto family : {compile::CompilerFamily::GccLike, compile::CompilerFamily::ClangLike}) {
      if (joined(compile::flags_for(family, r.level)) != r.host) {
        return fail(std::string("host cell ") + r.level);
      }
    }
    ++cells;
    if (joined(compile::flags_for(compile::CompilerFamily::NvccLike, r.level)) != r.device) {
      return fail(std::string("nvcc cell ") + r.level);
    }
    ++cells;
  }
  return {cells == 12, std::to_string(cells) + " cells byte-exact"};
}

diffexec::Category reference_fp32(std::uint32_t bits) {
  const std::string name = testing::reference_category(std::bit_cast<float>(bits));
  return diffexec::parse_category(name);
}

// 3. Exhaustive FP32 classification.
Outcome ac3() {
  const auto t = Clock::now();
  std::uint64_t counts[5] = {};
  std::uint64_t mismatches = 0;
  for (std::uint64_t i = 0; i <= 0xffffffffull; ++i) {
    const auto bits = static_cast<std::uint32_t>(i);
    const diffexec::Category c = diffexec::classify(i, Precision::FP32);
    const float f = std::bit_cast<float>(bits);
    diffexec::Category ref;
    switch (std::fpclassify(f)) {
      case FP_INFINITE: ref = std::signbit(f) ? diffexec::Category::NegInf : diffexec::Category::PosInf; break;
      case FP_NAN: ref = diffexec::Category::NaN; break;
      case FP_ZERO: ref = diffexec::Category::Zero; break;
      default: ref = diffexec::Category::Real; break;
    }
    mismatches += c != ref;
    ++counts[static_cast<int>(c)];
  }
  const bool spot = reference_fp32(0x7f800000u) == diffexec::Category::PosInf &&
                    reference_fp32(0x00000001u) == diffexec::Category::Real;
  const double s = seconds_since(t);
  using diffexec::Category;
  const std::uint64_t inf = counts[int(Category::PosInf)] + counts[int(Category::NegInf)];
  const bool partition = counts[int(Category::PosInf)] == 1 && counts[int(Category::NegInf)] == 1 &&
                         counts[int(Category::Zero)] == 2 &&
                         counts[int(Category::NaN)] == (1ull << 24) - 2 &&
                         counts[int(Category::Real)] == (1ull << 32) - 4 - ((1ull << 24) - 2);
  return {partition && mismatches == 0 && spot && inf == 2 && s < kAc3MaxSeconds,
          std::to_string(counts[int(Category::NaN)]) + " NaN, " +
              std::to_string(counts[int(Category::Real)]) + " REAL, " +
              std::to_string(mismatches) + " mismatches, " + fmt("%.1f s", s)};
}

// 4. Digit difference against exact decimal rendering.
Outcome ac4() {
  Rng rng(2026);
  auto random_finite = [&] {
    for (;;) {
      const double v = std::bit_cast<double>(rng.next_u64());
      if (std::isfinite(v)) return v;
    }
  };
  int mismatches = 0;
  std::set<int> seen;
  for (int i = 0; i < kAc4Pairs; ++i) {
    const double a = random_finite();
    double b;
    switch (i % 3) {
      case 0: b = random_finite(); break;
      case 1: b = a * (1 + std::pow(10.0, -static_cast<double>(rng.uniform_int(1, 17)))); break;
      default: {
        b = a;
        for (auto k = rng.uniform_int(1, 1000); k > 0; --k) b = std::nextafter(b, 0.0);
      }
    }
    if (!std::isfinite(b)) b = a;
    const auto got = diffexec::digit_difference(a, b);
    const auto want = testing::reference_digit_difference(a, b);
    mismatches += got != want;
    if (got) seen.insert(*got);
  }
  const double one = 1.0;
  struct Case {
    double a, b;
    int want;
  };
  const Case boundary[] = {
      {one, std::nextafter(one, 2.0), 1},
      {1e300, std::nextafter(1e300, 1e301), 1},
      {std::numeric_limits<double>::denorm_min(), 2 * std::numeric_limits<double>::denorm_min(), 16},
      {9.999999999999999, 10.0, 16},
      {1.0, 10.0, 16},
      {0.0, -0.0, 16},
      {-1.5, 1.5, 16},
      {1.25, 1.2500001, 9},
  };
  int boundary_bad = 0;
  std::string which;
  for (const auto& c : boundary) {
    const bool bad = diffexec::digit_difference(c.a, c.b) != c.want ||
                     testing::reference_digit_difference(c.a, c.b) != c.want;
    boundary_bad += bad;
    if (bad) which += " " + fmt("%.17g", c.a) + "|" + fmt("%.17g", c.b);
  }
  return {mismatches == 0 && boundary_bad == 0,
          std::to_string(kAc4Pairs) + " pairs, " + std::to_string(mismatches) +
              " mismatches, " + std::to_string(seen.size()) + " distinct values, " +
              std::to_string(boundary_bad) + " boundary failures" + which};
}

// 5. Offline grammar-random campaign.
Outcome ac5() {
  const fs::path dir = work_dir("ac5");
  const json j = {{"budget", 50},
                  {"mode", "grammar-random"},
                  {"seed", 5},
                  {"compilers", host_compilers()},
                  {"campaign_dir", dir.string()}};
  const auto t = Clock::now();
  const auto report = campaign::run_campaign(campaign::config_from_json(j));
  const double s = seconds_since(t);
  std::uint64_t records = 0, exclusions = 0;
  for (const auto& r : read_jsonl(dir / campaign::kRecordsFile)) records += r["mode"] == "cross";
  for (const auto& e : read_jsonl(dir / campaign::kExclusionsFile)) exclusions += e["mode"] == "cross";
  const bool pass = report.totals.accepted == 50 && report.summary.nominal == 300 &&
                    records + exclusions == 300 && s < kAc5MaxSeconds;
  return {pass, "nominal " + std::to_string(report.summary.nominal) + ", records " +
                    std::to_string(records) + " + exclusions " + std::to_string(exclusions) +
                    ", " + std::to_string(report.summary.inconsistent) + " inconsistent, " +
                    fmt("%.0f s", s)};
}

// 6. Feedback loop with a planted inconsistency-triggering program.
Outcome ac6() {
  const fs::path dir = work_dir("ac6");
  const json j = {{"budget", 100},
                  {"mode", "hybrid"},
                  {"p_mutation", 0.5},
                  {"seed", 6},
                  {"compilers", host_compilers()},
                  {"backend", {{"kind", "mock"}, {"p_planted", 0.1}}},
                  {"campaign_dir", dir.string()}};
  const auto requests_before = llm::network_request_count();
  const auto report = campaign::run_campaign(campaign::config_from_json(j));
  std::set<std::string> members;
  int mutations = 0, bad = 0;
  for (const auto& e : read_jsonl(dir / campaign::kEventsFile)) {
    if (e.value("strategy", "") == "mutation") {
      ++mutations;
      const std::string parent = e["parent"];
      const auto embedded =
          llm::extract_parent(read_file((dir / e["prompt"].get<std::string>()).string()));
      const std::string parent_text = read_file((dir / "programs" / (parent + ".c")).string());
      bad += !members.count(parent) || embedded != parent_text;
    }
    if (e["status"] == "accepted" && e["successful"]) members.insert(e["program_id"]);
  }
  const bool closed = llm::network_request_count() == requests_before;
  const bool pass = report.totals.successful > 0 && mutations > 0 && bad == 0 && closed &&
                    report.totals.accepted == 100;
  return {pass, std::to_string(report.totals.successful) + " successful, " +
                    std::to_string(mutations) + " mutation prompts, " + std::to_string(bad) +
                    " audit failures, network " + (closed ? "untouched" : "USED")};
}

// 7. Hand-written program that fast-math changes.
Outcome ac7() {
  const fs::path dir = work_dir("ac7");
  fs::create_directories(dir);
  const std::string text =
      "#include <stdio.h>\n#include <stdlib.h>\n#include <math.h>\n\n"
      "void compute(double comp, double var_1, double* result) {\n"
      "  comp = (comp + 1.0E16) - 1.0E16;\n"
      "  comp = comp * var_1 + 3.0E0;\n"
      "  *result = comp;\n}\n\n"
      "int main(int argc, char** argv) {\n"
      "  double r;\n  compute(atof(argv[1]), atof(argv[2]), &r);\n"
      "  printf(\"%.17g\\n\", r);\n  return 0;\n}\n";
  const program::ProgramSource src = program::attach_harness({text, Precision::FP64});
  write_file((dir / "ac7.c").string(), src.text);
  const compile::CompilerSpec gcc{"gcc", compile::CompilerFamily::GccLike, "gcc"};
  program::InputVector in;
  in.values = {{"comp", program::ParamKind::Scalar, {"0.1"}},
               {"var_1", program::ParamKind::Scalar, {"2.5"}}};
  std::vector<diffexec::FpObservation> obs;
  for (auto level : {compile::OptLevel::O0_nofma, compile::OptLevel::O3_fastmath}) {
    compile::CompileJob job{"ac7", gcc, level, dir / "ac7.c",
                            dir / ("ac7-" + std::string(compile::to_string(level)))};
    const auto built = compile::compile(job, std::chrono::seconds(60));
    const auto* ok = std::get_if<compile::CompileSuccess>(&built);
    if (!ok) return fail("build failed at " + std::string(compile::to_string(level)));
    const diffexec::ConfigId config{"gcc", level};
    const auto run = diffexec::execute(ok->binary, config, in, Precision::FP64,
                                       diffexec::kDefaultExecTimeout);
    const auto* r = std::get_if<diffexec::ExecOk>(&run);
    if (!r) return fail("execution failed: " + diffexec::describe(run));
    obs.push_back(r->observation);
  }
  const auto rec = diffexec::compare_pair("ac7", diffexec::ComparisonMode::Baseline, obs[0],
                                          obs[1], Precision::FP64);
  const bool pass = rec.inconsistent &&
                    rec.kind_pair == diffexec::KindPair::of(diffexec::Category::Real,
                                                            diffexec::Category::Real) &&
                    rec.digit_diff && *rec.digit_diff >= 1 && *rec.digit_diff <= 16;
  return {pass, fmt("%.17g", obs[0].value) + " vs " + fmt("%.17g", obs[1].value) + ", " +
                    rec.kind_pair.label() + ", digit_diff " +
                    (rec.digit_diff ? std::to_string(*rec.digit_diff) : "none")};
}

std::string rename_ids(std::string text) {
  for (const auto& [from, to] : {std::pair{"var_1", "q1"}, std::pair{"comp", "acc"}}) {
    std::string::size_type pos = 0;
    const std::string f = from;
    while ((pos = text.find(f, pos)) != std::string::npos) {
      const bool left = pos == 0 || !(std::isalnum((unsigned char)text[pos - 1]) || text[pos - 1] == '_');
      const auto end = pos + f.size();
      const bool right = end >= text.size() ||
                         !(std::isalnum((unsigned char)text[end]) || text[end] == '_');
      if (left && right) {
        text.replace(pos, f.size(), to);
        pos += std::string(to).size();
      } else {
        pos = end;
      }
    }
  }
  return text;
}

std::string change_literals(std::string text) {
  // Every fp literal in scientific form becomes the same constant.
  const program::TokenStream tokens = program::tokenize_c(text);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (it->kind == program::TokenKind::FpLiteral) text.replace(it->offset, it->lexeme.size(), "7.25E1");
  }
  return text;
}

// 8. Diversity metrics.
Outcome ac8() {
  Rng rng(88);
  int asym = 0, nonreflexive = 0;
  for (int i = 0; i < kAc8Pairs; ++i) {
    const std::string a = program::generate_random_program(rng.next_u64(), {}).text;
    const std::string b = program::generate_random_program(rng.next_u64(), {}).text;
    nonreflexive += std::fabs(analysis::similarity_score(a, a) - 1.0) > 1e-12;
    asym += std::fabs(analysis::similarity_score(a, b) - analysis::similarity_score(b, a)) > 1e-12;
  }
  std::vector<std::string> corpus;
  auto gen = [](std::uint64_t s) { return program::generate_random_program(s, {}).text; };
  for (std::uint64_t s : {101, 102}) {
    corpus.push_back(gen(s));
    corpus.push_back("/* copy */\n" + gen(s));
  }
  for (std::uint64_t s : {201, 202}) {
    corpus.push_back(gen(s));
    corpus.push_back(rename_ids(gen(s)));
  }
  for (std::uint64_t s : {301, 302}) {
    corpus.push_back(gen(s));
    corpus.push_back(change_literals(rename_ids(gen(s))));
  }
  const auto r = analysis::detect_clones(corpus);
  int nest_bad = 0;
  for (const auto& p : r.pairs) {
    const auto ta = program::tokenize_c(corpus[p.a]);
    const auto tb = program::tokenize_c(corpus[p.b]);
    const bool t1 = analysis::normalize_type1(ta) == analysis::normalize_type1(tb);
    const bool t2c = analysis::normalize_type2c(ta) == analysis::normalize_type2c(tb);
    const bool t2 = analysis::normalize_type2(ta) == analysis::normalize_type2(tb);
    nest_bad += (t1 && !t2c) || (t2c && !t2) || !t2;
  }
  const bool classes = r.exclusive.type1 == 2 && r.exclusive.type2c == 2 &&
                       r.exclusive.type2 == 2 && r.cumulative.type2c == 4 &&
                       r.cumulative.type2 == 6;
  for (std::uint64_t s = 1000; s < 1038; ++s) corpus.push_back(gen(s));
  const auto r50 = analysis::detect_clones(corpus);
  const bool percent = r50.participating == 12 && r50.programs == 50 &&
                       analysis::format_percent(r50.fraction()) == "24.00%";
  return {asym == 0 && nonreflexive == 0 && classes && nest_bad == 0 && percent,
          std::to_string(asym + nonreflexive) + " similarity violations, exclusive " +
              std::to_string(r.exclusive.type1) + "/" + std::to_string(r.exclusive.type2c) +
              "/" + std::to_string(r.exclusive.type2) + ", clone share " +
              analysis::format_percent(r50.fraction()) + " of 50"};
}

// 9. Kind-pair row for O3_fastmath.
Outcome ac9() {
  using diffexec::Category;
  const std::pair<diffexec::KindPair, int> row[] = {
      {diffexec::KindPair::of(Category::Real, Category::Real), 977},
      {diffexec::KindPair::of(Category::Real, Category::Zero), 100},
      {diffexec::KindPair::of(Category::Real, Category::PosInf), 2},
      {diffexec::KindPair::of(Category::Real, Category::NegInf), 2},
  };
  std::vector<diffexec::ComparisonRecord> records;
  int n = 0;
  for (const auto& [kind, count] : row) {
    for (int i = 0; i < count; ++i) {
      diffexec::ComparisonRecord r;
      r.program_id = "p" + std::to_string(n++);
      r.level = compile::OptLevel::O3_fastmath;
      r.a = {"gcc", r.level};
      r.b = {"clang", r.level};
      r.inconsistent = true;
      r.kind_pair = kind;
      r.bits_b = 1;
      records.push_back(r);
    }
  }
  for (int i = 0; i < 500; ++i) {  // consistent noise
    diffexec::ComparisonRecord r;
    r.level = compile::OptLevel::O3_fastmath;
    records.push_back(r);
  }
  const auto t = analysis::kind_distribution(records);
  std::string cells;
  bool pass = t.kinds.size() == 4 && t.total == 1081;
  for (const auto& [kind, count] : row) {
    const auto v = t.at(kind, compile::OptLevel::O3_fastmath);
    pass &= v && *v == static_cast<std::uint64_t>(count);
    cells += (cells.empty() ? "" : ", ") + kind.label() + "=" + (v ? std::to_string(*v) : "--");
  }
  return {pass, cells};
}

// 10. Byte-identical records across runs and across a stop and resume.
Outcome ac10() {
  auto config = [](const fs::path& dir) {
    return campaign::config_from_json(
        {{"budget", 10},
         {"mode", "hybrid"},
         {"seed", 10},
         {"compilers", host_compilers()},
         {"backend", {{"kind", "mock"}, {"p_planted", 0.3}}},
         {"campaign_dir", dir.string()}});
  };
  const fs::path a = work_dir("ac10a"), b = work_dir("ac10b"), c = work_dir("ac10c");
  campaign::run_campaign(config(a));
  campaign::run_campaign(config(b));
  campaign::RunOptions stop;
  stop.stop_after_attempts = 4;
  campaign::run_campaign(config(c), stop);
  std::ofstream(c / campaign::kRecordsFile, std::ios::app) << "{\"program_id\": \"torn";
  campaign::run_campaign(config(c));
  const std::string ra = read_file((a / campaign::kRecordsFile).string());
  const bool same = ra == read_file((b / campaign::kRecordsFile).string());
  const bool resumed = ra == read_file((c / campaign::kRecordsFile).string());
  return {same && resumed && !ra.empty(),
          std::string("repeat ") + (same ? "identical" : "DIFFERS") + ", resume " +
              (resumed ? "identical" : "DIFFERS") + " (" + std::to_string(ra.size()) + " bytes)"};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"formula fidelity", ac1},        {"flag fidelity", ac2},
      {"classification oracle", ac3},   {"digit-difference oracle", ac4},
      {"offline campaign", ac5},        {"feedback loop", ac6},
      {"known inconsistency", ac7},     {"diversity metrics", ac8},
      {"kind table row", ac9},          {"reproducibility", ac10},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    failures += !o.pass;
    std::printf("AC%d %s %s: %s\n", id, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
