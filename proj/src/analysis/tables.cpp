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

#include "fpdiff/analysis/tables.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>

namespace fpdiff::analysis {

using diffexec::ComparisonMode;
using nlohmann::json;

std::uint64_t nominal_comparisons(std::uint64_t n_compilers, std::uint64_t n_levels,
                                  std::uint64_t n_programs) {
  if (n_compilers < 2 || n_levels == 0 || n_programs == 0) {
    throw DomainError("nominal comparisons need >= 2 compilers and positive level and "
                      "program counts");
  }
  return n_compilers * (n_compilers - 1) / 2 * n_levels * n_programs;
}

double inconsistency_rate(std::uint64_t n_incons, std::uint64_t n_compilers,
                          std::uint64_t n_levels, std::uint64_t n_programs) {
  const std::uint64_t denom = nominal_comparisons(n_compilers, n_levels, n_programs);
  if (n_incons > denom) {
    throw DomainError(std::to_string(n_incons) + " inconsistencies exceed " +
                      std::to_string(denom) + " comparisons");
  }
  return static_cast<double>(n_incons) / static_cast<double>(denom);
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f%%", fraction * 100.0);
  return buf;
}

std::optional<DigitStats> digit_stats(const std::vector<int>& diffs) {
  if (diffs.empty()) return std::nullopt;
  DigitStats s;
  s.min = *std::min_element(diffs.begin(), diffs.end());
  s.max = *std::max_element(diffs.begin(), diffs.end());
  double sum = 0;
  for (int d : diffs) sum += d;
  s.count = diffs.size();
  s.mean = sum / static_cast<double>(diffs.size());
  return s;
}

std::optional<std::uint64_t> KindTable::at(KindPair kind, OptLevel level) const {
  const auto it = counts.find({kind, level});
  if (it == counts.end()) return std::nullopt;
  return it->second;
}

KindTable kind_distribution(const std::vector<ComparisonRecord>& records,
                            std::vector<OptLevel> levels) {
  KindTable t;
  std::set<OptLevel> seen_levels;
  std::set<KindPair> seen_kinds;
  for (const auto& r : records) {
    if (r.mode != ComparisonMode::Cross || !r.inconsistent) continue;
    ++t.counts[{r.kind_pair, r.level}];
    ++t.total;
    seen_levels.insert(r.level);
    seen_kinds.insert(r.kind_pair);
  }
  if (levels.empty()) levels.assign(seen_levels.begin(), seen_levels.end());
  t.levels = std::move(levels);
  t.kinds.assign(seen_kinds.begin(), seen_kinds.end());
  return t;
}

namespace {

struct Accumulator {
  std::uint64_t count = 0;
  std::uint64_t non_finite = 0;
  std::vector<int> digits;

  void add(const ComparisonRecord& r) {
    if (!r.inconsistent) return;
    ++count;
    if (r.digit_diff) {
      digits.push_back(*r.digit_diff);
    } else {
      ++non_finite;
    }
  }
  void merge(const Accumulator& o) {
    count += o.count;
    non_finite += o.non_finite;
    digits.insert(digits.end(), o.digits.begin(), o.digits.end());
  }
  RateCell cell(std::uint64_t programs) const {
    RateCell c;
    c.count = count;
    c.rate = programs ? static_cast<double>(count) / static_cast<double>(programs) : 0.0;
    c.digits = digit_stats(digits);
    c.non_finite = non_finite;
    return c;
  }
};

std::size_t index_of(const std::vector<std::string>& names, const std::string& name) {
  const auto it = std::find(names.begin(), names.end(), name);
  return it == names.end() ? std::numeric_limits<std::size_t>::max()
                           : static_cast<std::size_t>(it - names.begin());
}

}  // namespace

const RateCell& PairTable::at(std::size_t pair, OptLevel level) const {
  return cells.at({pair, level});
}

PairTable compiler_pair_table(const std::vector<ComparisonRecord>& records,
                              std::uint64_t n_programs,
                              const std::vector<std::string>& compilers,
                              const std::vector<OptLevel>& levels) {
  PairTable t;
  t.programs = n_programs;
  t.levels = levels;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_index;
  for (std::size_t i = 0; i < compilers.size(); ++i) {
    for (std::size_t j = i + 1; j < compilers.size(); ++j) {
      pair_index[{i, j}] = t.pairs.size();
      t.pairs.emplace_back(compilers[i], compilers[j]);
    }
  }
  std::map<std::pair<std::size_t, OptLevel>, Accumulator> acc;
  for (const auto& r : records) {
    if (r.mode != ComparisonMode::Cross) continue;
    std::size_t a = index_of(compilers, r.a.compiler);
    std::size_t b = index_of(compilers, r.b.compiler);
    if (a > b) std::swap(a, b);
    const auto it = pair_index.find({a, b});
    if (it == pair_index.end()) continue;
    acc[{it->second, r.level}].add(r);
  }
  t.totals.resize(t.pairs.size());
  for (std::size_t p = 0; p < t.pairs.size(); ++p) {
    Accumulator total;
    for (OptLevel l : levels) {
      const Accumulator& a = acc[{p, l}];
      t.cells[{p, l}] = a.cell(n_programs);
      total.merge(a);
    }
    t.totals[p] = total.cell(n_programs);
  }
  return t;
}

const RateCell& BaselineTable::at(std::size_t compiler, OptLevel level) const {
  return cells.at({compiler, level});
}

BaselineTable baseline_table(const std::vector<ComparisonRecord>& records,
                             std::uint64_t n_programs,
                             const std::vector<std::string>& compilers,
                             const std::vector<OptLevel>& levels) {
  BaselineTable t;
  t.programs = n_programs;
  t.compilers = compilers;
  for (OptLevel l : levels) {
    if (l != OptLevel::O0_nofma) t.levels.push_back(l);
  }
  std::map<std::pair<std::size_t, OptLevel>, Accumulator> acc;
  for (const auto& r : records) {
    if (r.mode != ComparisonMode::Baseline) continue;
    const std::size_t c = index_of(compilers, r.a.compiler);
    if (c >= compilers.size()) continue;
    acc[{c, r.level}].add(r);
  }
  t.totals.resize(compilers.size());
  for (std::size_t c = 0; c < compilers.size(); ++c) {
    Accumulator total;
    for (OptLevel l : t.levels) {
      const Accumulator& a = acc[{c, l}];
      t.cells[{c, l}] = a.cell(n_programs);
      total.merge(a);
    }
    t.totals[c] = total.cell(n_programs);
  }
  return t;
}

Summary summarize(const std::vector<ComparisonRecord>& records, std::uint64_t excluded,
                  std::uint64_t n_programs, std::uint64_t n_compilers,
                  std::uint64_t n_levels) {
  Summary s;
  s.programs = n_programs;
  s.compilers = n_compilers;
  s.levels = n_levels;
  s.excluded = excluded;
  for (const auto& r : records) {
    if (r.mode != ComparisonMode::Cross) continue;
    ++s.compared;
    s.inconsistent += r.inconsistent;
  }
  if (n_programs == 0) return s;
  s.nominal = nominal_comparisons(n_compilers, n_levels, n_programs);
  s.rate = inconsistency_rate(s.inconsistent, n_compilers, n_levels, n_programs);
  s.effective_rate = s.compared ? static_cast<double>(s.inconsistent) /
                                      static_cast<double>(s.compared)
                                : 0.0;
  return s;
}

// ---- rendering ----

namespace {

std::string stats_text(const RateCell& c) {
  if (!c.digits) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "(%d/%d/%.2f)", c.digits->min, c.digits->max,
                c.digits->mean);
  return buf;
}

// Columns are right-aligned except the first.
std::string layout(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    if (width.size() < r.size()) width.resize(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  std::ostringstream o;
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const std::string pad(width[i] - r[i].size(), ' ');
      if (i == 0) {
        line += r[i] + pad;
      } else {
        line += "  " + pad + r[i];
      }
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    o << line << "\n";
  }
  return o.str();
}

json cell_json(const RateCell& c) {
  json j = {{"count", c.count}, {"rate", c.rate}, {"rate_display", format_percent(c.rate)},
            {"non_finite", c.non_finite}};
  if (c.digits) {
    j["digits"] = {{"min", c.digits->min},
                   {"max", c.digits->max},
                   {"mean", c.digits->mean},
                   {"count", c.digits->count}};
  } else {
    j["digits"] = nullptr;
  }
  return j;
}

std::string level_name(OptLevel l) { return std::string(compile::to_string(l)); }

}  // namespace

std::string render_text(const Summary& s) {
  std::vector<std::vector<std::string>> rows = {
      {"programs", std::to_string(s.programs)},
      {"compilers", std::to_string(s.compilers)},
      {"levels", std::to_string(s.levels)},
      {"nominal comparisons", std::to_string(s.nominal)},
      {"compared", std::to_string(s.compared)},
      {"excluded", std::to_string(s.excluded)},
      {"inconsistencies", std::to_string(s.inconsistent)},
      {"inconsistency rate", format_percent(s.rate)},
      {"effective rate", format_percent(s.effective_rate)},
  };
  return "Summary\n" + layout(rows);
}

std::string render_text(const KindTable& t) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Level"};
  for (const auto& k : t.kinds) header.push_back(k.label());
  rows.push_back(header);
  for (OptLevel l : t.levels) {
    std::vector<std::string> row = {level_name(l)};
    for (const auto& k : t.kinds) {
      const auto v = t.at(k, l);
      row.push_back(v ? std::to_string(*v) : "--");
    }
    rows.push_back(row);
  }
  rows.push_back({"Total inconsistencies", std::to_string(t.total)});
  return "Inconsistency counts by kind pair\n" + layout(rows);
}

std::string render_text(const PairTable& t) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Level"};
  for (const auto& [a, b] : t.pairs) header.push_back(a + ", " + b);
  rows.push_back(header);
  for (OptLevel l : t.levels) {
    std::vector<std::string> rates = {level_name(l)};
    std::vector<std::string> stats = {""};
    bool any_stats = false;
    for (std::size_t p = 0; p < t.pairs.size(); ++p) {
      const RateCell& c = t.at(p, l);
      rates.push_back(format_percent(c.rate));
      stats.push_back(stats_text(c));
      any_stats |= !stats.back().empty();
    }
    rows.push_back(rates);
    if (any_stats) rows.push_back(stats);
  }
  std::vector<std::string> total = {"Total"};
  for (const auto& c : t.totals) total.push_back(format_percent(c.rate));
  rows.push_back(total);
  return "Compiler-pair inconsistency rates (digit differences min/max/avg)\n" +
         layout(rows);
}

std::string render_text(const BaselineTable& t) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header = {"Level"};
  for (const auto& c : t.compilers) header.push_back(c);
  rows.push_back(header);
  for (OptLevel l : t.levels) {
    std::vector<std::string> row = {level_name(l)};
    for (std::size_t c = 0; c < t.compilers.size(); ++c) {
      row.push_back(format_percent(t.at(c, l).rate));
    }
    rows.push_back(row);
  }
  std::vector<std::string> total = {"Total"};
  for (const auto& c : t.totals) total.push_back(format_percent(c.rate));
  rows.push_back(total);
  return "Inconsistency rates against O0_nofma\n" + layout(rows);
}

json to_json(const Summary& s) {
  return {{"programs", s.programs},
          {"compilers", s.compilers},
          {"levels", s.levels},
          {"nominal_comparisons", s.nominal},
          {"compared", s.compared},
          {"excluded", s.excluded},
          {"inconsistent", s.inconsistent},
          {"rate", s.rate},
          {"rate_display", format_percent(s.rate)},
          {"effective_rate", s.effective_rate}};
}

json to_json(const KindTable& t) {
  json rows = json::array();
  for (OptLevel l : t.levels) {
    json cells = json::object();
    for (const auto& k : t.kinds) {
      const auto v = t.at(k, l);
      cells[k.label()] = v ? json(*v) : json(nullptr);
    }
    rows.push_back({{"level", level_name(l)}, {"cells", cells}});
  }
  json kinds = json::array();
  for (const auto& k : t.kinds) kinds.push_back(k.label());
  return {{"kinds", kinds}, {"rows", rows}, {"total", t.total}};
}

json to_json(const PairTable& t) {
  json pairs = json::array();
  for (const auto& [a, b] : t.pairs) pairs.push_back({a, b});
  json rows = json::array();
  for (OptLevel l : t.levels) {
    json cells = json::array();
    for (std::size_t p = 0; p < t.pairs.size(); ++p) cells.push_back(cell_json(t.at(p, l)));
    rows.push_back({{"level", level_name(l)}, {"cells", cells}});
  }
  json totals = json::array();
  for (const auto& c : t.totals) totals.push_back(cell_json(c));
  return {{"programs", t.programs}, {"pairs", pairs}, {"rows", rows}, {"totals", totals}};
}

json to_json(const BaselineTable& t) {
  json rows = json::array();
  for (OptLevel l : t.levels) {
    json cells = json::array();
    for (std::size_t c = 0; c < t.compilers.size(); ++c) {
      cells.push_back(cell_json(t.at(c, l)));
    }
    rows.push_back({{"level", level_name(l)}, {"cells", cells}});
  }
  json totals = json::array();
  for (const auto& c : t.totals) totals.push_back(cell_json(c));
  return {{"programs", t.programs},
          {"compilers", t.compilers},
          {"rows", rows},
          {"totals", totals}};
}

}  // namespace fpdiff::analysis
