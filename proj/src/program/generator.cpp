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

#include "fpdiff/program/generator.hpp"

#include <stdexcept>

#include "fpdiff/program/math_functions.hpp"
#include "fpdiff/program/render.hpp"

namespace fpdiff::program {

void GenConfig::check() const {
  if (max_expr_depth < 1 || max_block_stmts < 1 || max_loop_nest < 0 ||
      min_params < 0 || max_params < min_params || max_pointer_params < 0 ||
      loop_bound_max < 1 || max_terms < 1) {
    throw std::invalid_argument("generator bounds must be positive");
  }
}

namespace {

constexpr std::string_view kLoopVars[] = {"i", "j", "k", "l", "m", "n"};

struct Scope {
  std::vector<std::string> fp_values;  // comp, scalar params, temporaries
  std::vector<std::string> int_values;
  std::vector<std::string> pointers;
  std::vector<std::string> loop_vars;
};

class Generator {
 public:
  Generator(std::uint64_t seed, const GenConfig& cfg) : rng_(seed), cfg_(cfg) {}

  GrammarAst run() {
    GrammarAst ast;
    ast.precision = cfg_.precision;
    Scope scope;
    scope.fp_values.emplace_back(kAccumulator);

    const int n = static_cast<int>(rng_.uniform_int(cfg_.min_params, cfg_.max_params));
    int pointers = 0;
    for (int i = 1; i <= n; ++i) {
      Param p;
      p.name = "var_" + std::to_string(i);
      const double r = rng_.uniform01();
      if (pointers < cfg_.max_pointer_params && r < 0.25) {
        p.kind = ParamKind::Pointer;
        ++pointers;
        scope.pointers.push_back(p.name);
      } else if (r < 0.45) {
        p.kind = ParamKind::Int;
        scope.int_values.push_back(p.name);
      } else {
        p.kind = ParamKind::Scalar;
        scope.fp_values.push_back(p.name);
      }
      ast.params.push_back(std::move(p));
    }
    ast.body = block(scope, 0, 0, true);
    return ast;
  }

 private:
  Rng rng_;
  const GenConfig& cfg_;
  int temps_ = 0;

  // <block> ::= (<if-block> | <for-loop-block>)* {<assignment>}+
  Block block(Scope scope, int loop_nest, int control_depth, bool top) {
    const int cap = top ? cfg_.max_block_stmts
                        : std::max(1, cfg_.max_block_stmts / 2);
    const int total = static_cast<int>(rng_.uniform_int(1, cap));
    int controls = 0;
    if (total > 1 && control_depth <= cfg_.max_loop_nest) {
      controls = static_cast<int>(rng_.uniform_int(0, std::min(2, total - 1)));
    }
    Block out;
    for (int c = 0; c < controls; ++c) {
      const bool can_loop = loop_nest < cfg_.max_loop_nest;
      if (can_loop && rng_.bernoulli(0.6)) {
        ForBlock f;
        f.var = std::string(kLoopVars[static_cast<std::size_t>(loop_nest) % std::size(kLoopVars)]);
        if (loop_nest >= static_cast<int>(std::size(kLoopVars))) {
          f.var += std::to_string(loop_nest);
        }
        f.bound = static_cast<int>(rng_.uniform_int(1, cfg_.loop_bound_max));
        Scope inner = scope;
        inner.loop_vars.push_back(f.var);
        f.body = block(inner, loop_nest + 1, control_depth + 1, false);
        out.push_back(Statement{std::move(f)});
      } else {
        IfBlock b;
        b.lhs = rng_.pick(scope.fp_values);
        b.op = static_cast<BoolOp>(rng_.uniform_int(0, 5));
        b.rhs = expression(scope, 1);
        b.body = block(scope, loop_nest, control_depth + 1, false);
        out.push_back(Statement{std::move(b)});
      }
    }
    const int assignments = total - controls;
    for (int a = 0; a < assignments; ++a) {
      const bool last_top = top && a == assignments - 1;
      Assignment as;
      as.value = expression(scope, 1);
      if (!last_top && rng_.bernoulli(cfg_.p_declare)) {
        as.declares = true;
        as.target = "tmp_" + std::to_string(++temps_);
        as.op = AssignOp::Assign;
        scope.fp_values.push_back(as.target);
      } else {
        as.target = std::string(kAccumulator);
        as.op = static_cast<AssignOp>(rng_.uniform_int(0, 4));
      }
      out.push_back(Statement{std::move(as)});
    }
    return out;
  }

  Expression expression(const Scope& scope, int depth) {
    Expression e;
    e.first = operand(scope, depth);
    const int terms = static_cast<int>(rng_.uniform_int(1, cfg_.max_terms));
    for (int t = 1; t < terms; ++t) {
      static constexpr char ops[] = {'+', '-', '*', '/'};
      e.rest.emplace_back(ops[rng_.uniform_int(0, 3)], operand(scope, depth));
    }
    return e;
  }

  Operand operand(const Scope& scope, int depth) {
    Operand o;
    if (depth < cfg_.max_expr_depth) {
      const double r = rng_.uniform01();
      if (r < cfg_.p_paren) {
        o.kind = Operand::Kind::Paren;
        o.args.push_back(expression(scope, depth + 1));
        return o;
      }
      if (r < cfg_.p_paren + cfg_.p_call) {
        const auto& fn = kMathFunctions[rng_.uniform_int(
            0, static_cast<std::int64_t>(std::size(kMathFunctions)) - 1)];
        o.kind = Operand::Kind::Call;
        o.text = math_function_name(fn.name, cfg_.precision);
        for (int a = 0; a < fn.arity; ++a) {
          o.args.push_back(expression(scope, depth + 1));
        }
        return o;
      }
    }
    return term(scope);
  }

  Operand term(const Scope& scope) {
    Operand o;
    const double r = rng_.uniform01();
    if (r < 0.2 && !scope.pointers.empty()) {
      o.kind = Operand::Kind::Index;
      o.text = rng_.pick(scope.pointers);
      o.index = scope.loop_vars.empty() ? "0" : rng_.pick(scope.loop_vars);
    } else if (r < 0.55) {
      o.kind = Operand::Kind::Identifier;
      o.text = rng_.pick(scope.fp_values);
    } else if (r < 0.62 && !scope.int_values.empty()) {
      o.kind = Operand::Kind::Identifier;
      o.text = rng_.pick(scope.int_values);
    } else {
      o.kind = Operand::Kind::Numeral;
      o.text = numeral();
    }
    return o;
  }

  std::string numeral() {
    std::string s = std::to_string(rng_.uniform_int(1, 9)) + ".";
    const int frac = static_cast<int>(rng_.uniform_int(1, 4));
    for (int i = 0; i < frac; ++i) s += static_cast<char>('0' + rng_.uniform_int(0, 9));
    const auto exp = rng_.uniform_int(-3, 3);
    s += "E" + std::to_string(exp);
    if (cfg_.precision == Precision::FP32) s += "F";
    return s;
  }
};

}  // namespace

GrammarAst generate_random_ast(std::uint64_t seed, const GenConfig& config) {
  config.check();
  return Generator(seed, config).run();
}

ProgramSource generate_random_program(std::uint64_t seed,
                                      const GenConfig& config) {
  ProgramSource src = render_c(generate_random_ast(seed, config));
  src.provenance.kind = Provenance::Kind::GrammarRandom;
  src.provenance.seed = seed;
  return src;
}

}  // namespace fpdiff::program
