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

#include "fpdiff/analysis/clones.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace fpdiff::analysis {

using program::TokenKind;
using program::TokenStream;

std::string_view to_string(CloneClass c) {
  switch (c) {
    case CloneClass::None: return "none";
    case CloneClass::Type2: return "type-2";
    case CloneClass::Type2c: return "type-2c";
    case CloneClass::Type1: return "type-1";
  }
  return "?";
}

namespace {

bool is_literal(TokenKind k) {
  return k == TokenKind::IntLiteral || k == TokenKind::FpLiteral ||
         k == TokenKind::StringLiteral || k == TokenKind::CharLiteral;
}

}  // namespace

std::vector<std::string> normalize_type1(const TokenStream& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.lexeme);
  return out;
}

std::vector<std::string> normalize_type2c(const TokenStream& tokens) {
  std::map<std::string, std::size_t> ids;
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Identifier) {
      const auto [it, fresh] = ids.emplace(t.lexeme, ids.size());
      out.push_back("$" + std::to_string(it->second));
    } else {
      out.push_back(t.lexeme);
    }
  }
  return out;
}

std::vector<std::string> normalize_type2(const TokenStream& tokens) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (t.kind == TokenKind::Identifier) {
      out.push_back("$ID");
    } else if (is_literal(t.kind)) {
      out.push_back("$LIT");
    } else if (t.kind == TokenKind::Keyword && program::is_type_keyword(t.lexeme)) {
      out.push_back("$TYPE");
    } else {
      out.push_back(t.lexeme);
    }
  }
  return out;
}

CloneClass classify_pair(const TokenStream& a, const TokenStream& b) {
  if (normalize_type1(a) == normalize_type1(b)) return CloneClass::Type1;
  if (normalize_type2c(a) == normalize_type2c(b)) return CloneClass::Type2c;
  if (normalize_type2(a) == normalize_type2(b)) return CloneClass::Type2;
  return CloneClass::None;
}

double CloneReport::fraction() const {
  return programs ? static_cast<double>(participating) / static_cast<double>(programs)
                  : 0.0;
}

CloneReport detect_clones(const std::vector<std::string>& corpus) {
  CloneReport r;
  r.programs = corpus.size();
  std::vector<std::vector<std::string>> t1, t2c, t2;
  for (const auto& text : corpus) {
    const TokenStream tokens = program::tokenize_c(text);
    t1.push_back(normalize_type1(tokens));
    t2c.push_back(normalize_type2c(tokens));
    t2.push_back(normalize_type2(tokens));
  }
  // Type-2 is the loosest class, so every clone pair shares a Type-2 group.
  std::map<std::vector<std::string>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < corpus.size(); ++i) groups[t2[i]].push_back(i);

  std::set<std::size_t> members;
  for (const auto& [key, idx] : groups) {
    for (std::size_t x = 0; x < idx.size(); ++x) {
      for (std::size_t y = x + 1; y < idx.size(); ++y) {
        const std::size_t a = idx[x], b = idx[y];
        CloneClass cls = CloneClass::Type2;
        if (t1[a] == t1[b]) {
          cls = CloneClass::Type1;
        } else if (t2c[a] == t2c[b]) {
          cls = CloneClass::Type2c;
        }
        r.pairs.push_back({a, b, cls});
        members.insert(a);
        members.insert(b);
      }
    }
  }
  std::sort(r.pairs.begin(), r.pairs.end(), [](const ClonePair& x, const ClonePair& y) {
    return std::tie(x.a, x.b) < std::tie(y.a, y.b);
  });
  for (const auto& p : r.pairs) {
    switch (p.cls) {
      case CloneClass::Type1: ++r.exclusive.type1; break;
      case CloneClass::Type2c: ++r.exclusive.type2c; break;
      case CloneClass::Type2: ++r.exclusive.type2; break;
      case CloneClass::None: break;
    }
  }
  r.cumulative.type1 = r.exclusive.type1;
  r.cumulative.type2c = r.exclusive.type2c + r.exclusive.type1;
  r.cumulative.type2 = r.exclusive.type2 + r.cumulative.type2c;
  r.participating = members.size();
  return r;
}

nlohmann::json to_json(const CloneReport& r) {
  auto counts = [](const CloneCounts& c) {
    return nlohmann::json{{"type1", c.type1}, {"type2c", c.type2c}, {"type2", c.type2}};
  };
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : r.pairs) pairs.push_back({p.a, p.b, to_string(p.cls)});
  return {{"programs", r.programs},
          {"participating", r.participating},
          {"fraction", r.fraction()},
          {"exclusive", counts(r.exclusive)},
          {"cumulative", counts(r.cumulative)},
          {"pairs", pairs}};
}

}  // namespace fpdiff::analysis
