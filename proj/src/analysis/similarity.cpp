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

#include "fpdiff/analysis/similarity.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <optional>

#include "fpdiff/analysis/tables.hpp"
#include "fpdiff/program/structure.hpp"

namespace fpdiff::analysis {

using program::Token;
using program::TokenKind;
using program::TokenStream;

namespace {

using Gram = std::vector<std::string>;

std::map<Gram, std::size_t> count_grams(const std::vector<std::string>& toks,
                                        std::size_t n) {
  std::map<Gram, std::size_t> counts;
  if (toks.size() < n) return counts;
  for (std::size_t i = 0; i + n <= toks.size(); ++i) {
    ++counts[Gram(toks.begin() + static_cast<std::ptrdiff_t>(i),
                  toks.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

// Clipped precision of order n, or nullopt when cand has no n-grams.
std::optional<double> precision(const std::vector<std::string>& cand,
                                const std::vector<std::string>& ref, std::size_t n,
                                bool weighted) {
  const auto c = count_grams(cand, n);
  if (c.empty()) return std::nullopt;
  const auto r = count_grams(ref, n);
  double matched = 0, total = 0;
  for (const auto& [gram, count] : c) {
    const double w =
        weighted ? (program::is_c_keyword(gram.front()) ? 1.0 : 0.2) : 1.0;
    const auto it = r.find(gram);
    const std::size_t clipped = it == r.end() ? 0 : std::min(count, it->second);
    matched += w * static_cast<double>(clipped);
    total += w * static_cast<double>(count);
  }
  return matched / total;
}

double bleu(const std::vector<std::string>& cand, const std::vector<std::string>& ref,
            bool weighted_unigrams) {
  if (cand.empty() || ref.empty()) return cand.empty() && ref.empty() ? 1.0 : 0.0;
  double log_sum = 0;
  int orders = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto p = precision(cand, ref, n, weighted_unigrams && n == 1);
    if (!p) continue;
    if (*p <= 0) return 0.0;
    log_sum += std::log(*p);
    ++orders;
  }
  const double c = static_cast<double>(cand.size());
  const double r = static_cast<double>(ref.size());
  const double bp = c > r ? 1.0 : std::exp(1.0 - r / c);
  return bp * std::exp(log_sum / orders);
}

struct Node {
  std::string label;
  bool internal = false;
  std::vector<std::unique_ptr<Node>> children;
};

std::string leaf_label(const Token& t) {
  switch (t.kind) {
    case TokenKind::Identifier: return "id";
    case TokenKind::IntLiteral:
    case TokenKind::FpLiteral:
    case TokenKind::StringLiteral:
    case TokenKind::CharLiteral: return "lit";
    default: return t.lexeme;
  }
}

class TreeBuilder {
 public:
  explicit TreeBuilder(const TokenStream& t) : t_(t) {}

  std::unique_ptr<Node> block(std::string_view close) {
    auto node = std::make_unique<Node>();
    node->label = "<block>";
    node->internal = true;
    while (pos_ < t_.size() && t_[pos_].lexeme != close) {
      node->children.push_back(statement(close));
    }
    if (pos_ < t_.size()) ++pos_;
    return node;
  }

 private:
  std::unique_ptr<Node> statement(std::string_view close) {
    auto node = std::make_unique<Node>();
    node->label = "<stmt>";
    node->internal = true;
    while (pos_ < t_.size() && t_[pos_].lexeme != close) {
      const Token& tok = t_[pos_++];
      if (tok.lexeme == ";") {
        node->children.push_back(leaf(tok));
        break;
      }
      if (tok.lexeme == "{") {
        node->children.push_back(block("}"));
        break;
      }
      if (tok.lexeme == "(" || tok.lexeme == "[") {
        node->children.push_back(group(tok.lexeme == "(" ? ")" : "]"));
        continue;
      }
      node->children.push_back(leaf(tok));
    }
    return node;
  }

  std::unique_ptr<Node> group(std::string_view close) {
    auto node = std::make_unique<Node>();
    node->label = close == ")" ? "<paren>" : "<index>";
    node->internal = true;
    while (pos_ < t_.size() && t_[pos_].lexeme != close) {
      const Token& tok = t_[pos_++];
      if (tok.lexeme == "(" || tok.lexeme == "[") {
        node->children.push_back(group(tok.lexeme == "(" ? ")" : "]"));
      } else {
        node->children.push_back(leaf(tok));
      }
    }
    if (pos_ < t_.size()) ++pos_;
    return node;
  }

  static std::unique_ptr<Node> leaf(const Token& tok) {
    auto n = std::make_unique<Node>();
    n->label = leaf_label(tok);
    return n;
  }

  const TokenStream& t_;
  std::size_t pos_ = 0;
};

// Serializes n and records every internal subtree.
std::string collect(const Node& n, std::map<std::string, std::size_t>& out) {
  if (!n.internal) return n.label;
  std::string s = n.label + "(";
  for (const auto& c : n.children) s += collect(*c, out) + " ";
  s += ")";
  ++out[s];
  return s;
}

std::map<std::string, std::size_t> subtrees(const TokenStream& body) {
  TreeBuilder b(body);
  const auto root = b.block("");
  std::map<std::string, std::size_t> out;
  collect(*root, out);
  return out;
}

}  // namespace

double ngram_match(const std::vector<std::string>& cand,
                   const std::vector<std::string>& ref) {
  return bleu(cand, ref, false);
}

double weighted_ngram_match(const std::vector<std::string>& cand,
                            const std::vector<std::string>& ref) {
  return bleu(cand, ref, true);
}

double syntax_match(const TokenStream& cand, const TokenStream& ref) {
  const auto c = subtrees(cand);
  const auto r = subtrees(ref);
  std::size_t matched = 0, total = 0;
  for (const auto& [tree, count] : r) {
    total += count;
    const auto it = c.find(tree);
    if (it != c.end()) matched += std::min(count, it->second);
  }
  return total ? static_cast<double>(matched) / static_cast<double>(total) : 1.0;
}

ScoredProgram prepare(std::string_view text) {
  ScoredProgram p;
  const TokenStream tokens = program::tokenize_c(text);
  p.lexemes.reserve(tokens.size());
  for (const auto& t : tokens) p.lexemes.push_back(t.lexeme);
  p.body = program::compute_body_tokens(tokens);
  if (p.body.empty()) p.body = tokens;
  return p;
}

double similarity_score(const ScoredProgram& a, const ScoredProgram& b,
                        const SimilarityWeights& w) {
  auto one_way = [&](const ScoredProgram& cand, const ScoredProgram& ref) {
    return w.ngram * ngram_match(cand.lexemes, ref.lexemes) +
           w.weighted_ngram * weighted_ngram_match(cand.lexemes, ref.lexemes) +
           w.syntax * syntax_match(cand.body, ref.body);
  };
  return 0.5 * (one_way(a, b) + one_way(b, a));
}

double similarity_score(std::string_view a, std::string_view b,
                        const SimilarityWeights& w) {
  return similarity_score(prepare(a), prepare(b), w);
}

SimilarityReport mean_pairwise_similarity(const std::vector<std::string>& corpus,
                                          const SimilarityWeights& w,
                                          std::size_t workers, bool keep_matrix) {
  SimilarityReport report;
  std::vector<std::optional<ScoredProgram>> prepared(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      prepared[i] = prepare(corpus[i]);
    } catch (const program::LexError&) {
      ++report.skipped_programs;
    }
  }
  std::vector<std::size_t> usable;
  for (std::size_t i = 0; i < prepared.size(); ++i) {
    if (prepared[i]) usable.push_back(i);
  }
  if (usable.size() < 2) {
    throw DomainError("similarity needs at least two programs that tokenize");
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < usable.size(); ++i) {
    for (std::size_t j = i + 1; j < usable.size(); ++j) {
      pairs.emplace_back(usable[i], usable[j]);
    }
  }
  std::vector<double> scores(pairs.size());
  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    scores[k] = similarity_score(*prepared[pairs[k].first], *prepared[pairs[k].second], w);
  });
  double sum = 0;
  for (double s : scores) sum += s;
  report.pairs = pairs.size();
  report.mean = sum / static_cast<double>(pairs.size());
  if (keep_matrix) {
    report.matrix.assign(corpus.size(), std::vector<double>(corpus.size(), 0.0));
    for (std::size_t i : usable) report.matrix[i][i] = 1.0;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      report.matrix[pairs[k].first][pairs[k].second] = scores[k];
      report.matrix[pairs[k].second][pairs[k].first] = scores[k];
    }
  }
  return report;
}

}  // namespace fpdiff::analysis
