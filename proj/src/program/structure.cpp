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

#include "fpdiff/program/structure.hpp"

#include <algorithm>
#include <set>

#include "fpdiff/program/math_functions.hpp"
#include "fpdiff/program/render.hpp"

namespace fpdiff::program {

bool StructureReport::has(std::string_view code) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.code == code; });
}

namespace {

std::size_t matching_close(const TokenStream& t, std::size_t open,
                           std::string_view o, std::string_view c) {
  int depth = 0;
  for (std::size_t i = open; i < t.size(); ++i) {
    if (t[i].is_punct(o)) ++depth;
    if (t[i].is_punct(c) && --depth == 0) return i;
  }
  return t.size();
}

bool is_output_call(const TokenStream& t, std::size_t i) {
  static const std::set<std::string> kOutput = {"printf", "puts", "putchar",
                                                "fprintf", "fputs", "fwrite"};
  return t[i].kind == TokenKind::Identifier && kOutput.count(t[i].lexeme) &&
         i + 1 < t.size() && t[i + 1].is_punct("(");
}

std::string include_name(const std::string& directive) {
  // "#include <x>" or "#include \"x\"" (whitespace already collapsed)
  std::string rest = directive.substr(1);
  while (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
  if (rest.rfind("include", 0) != 0) return {};
  rest = rest.substr(7);
  while (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
  if (rest.size() < 2) return rest;
  const char close = rest.front() == '<' ? '>' : '"';
  const auto end = rest.find(close, 1);
  return rest.substr(1, end == std::string::npos ? std::string::npos : end - 1);
}

const FunctionSpan* find_named(const std::vector<FunctionSpan>& fns,
                               std::string_view name) {
  for (const auto& f : fns) {
    if (f.name == name) return &f;
  }
  return nullptr;
}

std::string slice_definition(const ProgramSource& src, const TokenStream& t,
                             const FunctionSpan& f) {
  const std::size_t begin = t[f.first_token].offset;
  const std::size_t end = t[f.body_close].offset + 1;
  return src.text.substr(begin, end - begin);
}

}  // namespace

std::vector<FunctionSpan> find_functions(const TokenStream& t) {
  std::vector<FunctionSpan> out;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!t[i].is_punct("{")) continue;
    const std::size_t close = matching_close(t, i, "{", "}");
    if (i > 0 && t[i - 1].is_punct(")")) {
      // Walk back to the '(' that opens the parameter list.
      int depth = 0;
      std::size_t j = i - 1;
      for (;; --j) {
        if (t[j].is_punct(")")) ++depth;
        if (t[j].is_punct("(") && --depth == 0) break;
        if (j == 0) break;
      }
      if (j > 0 && t[j - 1].kind == TokenKind::Identifier) {
        FunctionSpan f;
        f.name = t[j - 1].lexeme;
        f.name_token = j - 1;
        std::size_t s = j - 1;
        while (s > 0 && (t[s - 1].kind == TokenKind::Keyword ||
                         t[s - 1].kind == TokenKind::Identifier ||
                         t[s - 1].is_op("*"))) {
          --s;
        }
        f.first_token = s;
        f.body_open = i;
        f.body_close = close;
        if (close < t.size()) out.push_back(std::move(f));
      }
    }
    i = close;
  }
  return out;
}

StructureReport validate_structure(const ProgramSource& src) {
  StructureReport report;
  TokenStream t;
  try {
    t = tokenize_c(src.text);
  } catch (const LexError& e) {
    report.violations.push_back({"lex-error", std::string("lex error: ") + e.what()});
    return report;
  }

  for (const auto& tok : t) {
    if (tok.kind != TokenKind::Directive) continue;
    const std::string name = include_name(tok.lexeme);
    if (name.empty()) continue;
    if (std::find(std::begin(kAllowedHeaders), std::end(kAllowedHeaders), name) ==
        std::end(kAllowedHeaders)) {
      report.violations.push_back({"disallowed-header", "disallowed header: " + name});
    }
  }

  const auto fns = find_functions(t);
  for (const auto& f : fns) {
    if (f.name != "main" && f.name != "compute") {
      report.violations.push_back({"extra-function", "extra function: " + f.name});
    }
  }
  auto count = [&](std::string_view n) {
    return std::count_if(fns.begin(), fns.end(),
                         [&](const FunctionSpan& f) { return f.name == n; });
  };
  if (count("main") > 1) report.violations.push_back({"extra-function", "extra function: main"});
  if (count("compute") > 1) report.violations.push_back({"extra-function", "extra function: compute"});

  const FunctionSpan* main_fn = find_named(fns, "main");
  const FunctionSpan* compute_fn = find_named(fns, "compute");
  if (!main_fn) report.violations.push_back({"missing-main", "missing main"});
  if (!compute_fn) report.violations.push_back({"missing-compute", "missing compute"});

  bool prints = false;
  for (const FunctionSpan* f : {main_fn, compute_fn}) {
    if (!f) continue;
    for (std::size_t i = f->body_open; i < f->body_close; ++i) {
      if (is_output_call(t, i)) prints = true;
    }
  }
  if (!prints) report.violations.push_back({"missing-output", "missing output statement"});

  if (main_fn) {
    bool called = false;
    for (std::size_t i = main_fn->body_open; i + 1 < main_fn->body_close; ++i) {
      if (t[i].is(TokenKind::Identifier, "compute") &&
          (t[i + 1].is_punct("(") || t[i + 1].is_op("<<<"))) {
        called = true;
      }
    }
    if (!called) {
      report.violations.push_back({"compute-not-called", "compute not called from main"});
    }
  }
  return report;
}

ComputeSignature parse_compute_signature(const TokenStream& t,
                                         const FunctionSpan& f) {
  bool saw_void = false;
  for (std::size_t i = f.first_token; i < f.name_token; ++i) {
    const auto& tok = t[i];
    if (tok.is(TokenKind::Keyword, "void")) {
      saw_void = true;
    } else if (!(tok.is(TokenKind::Keyword, "static") ||
                 tok.is(TokenKind::Keyword, "inline") ||
                 tok.is(TokenKind::Keyword, "__global__"))) {
      throw TranslateError("compute must return void");
    }
  }
  if (!saw_void) throw TranslateError("compute must return void");

  // Parameter tokens between '(' and ')'.
  const std::size_t open = f.name_token + 1;
  const std::size_t close = f.body_open - 1;
  std::vector<std::vector<Token>> decls(1);
  for (std::size_t i = open + 1; i < close; ++i) {
    if (t[i].is_punct(",")) {
      decls.emplace_back();
    } else {
      decls.back().push_back(t[i]);
    }
  }

  struct Decl {
    std::string type;
    bool pointer;
    std::string name;
  };
  std::vector<Decl> parsed;
  for (const auto& d : decls) {
    std::size_t k = 0;
    if (k < d.size() && d[k].is(TokenKind::Keyword, "const")) ++k;
    if (k >= d.size() || d[k].kind != TokenKind::Keyword) {
      throw TranslateError("unsupported parameter declaration in compute");
    }
    Decl out{d[k].lexeme, false, {}};
    ++k;
    if (k < d.size() && d[k].is_op("*")) {
      out.pointer = true;
      ++k;
    }
    if (k + 1 != d.size() || d[k].kind != TokenKind::Identifier) {
      throw TranslateError("unsupported parameter declaration in compute");
    }
    out.name = d[k].lexeme;
    if (out.type != "int" && out.type != "float" && out.type != "double") {
      throw TranslateError("unsupported parameter type '" + out.type + "'");
    }
    if (out.type == "int" && out.pointer) {
      throw TranslateError("int pointer parameters are not supported");
    }
    parsed.push_back(std::move(out));
  }

  if (parsed.size() < 2 || parsed.front().name != kAccumulator ||
      parsed.front().pointer || parsed.front().type == "int") {
    throw TranslateError("compute must take a floating-point 'comp' first");
  }
  if (parsed.back().name != kResultParam || !parsed.back().pointer) {
    throw TranslateError("compute must take a floating-point 'result' pointer last");
  }
  ComputeSignature sig;
  sig.precision = parse_precision(parsed.front().type);
  for (std::size_t i = 1; i + 1 < parsed.size(); ++i) {
    const auto& d = parsed[i];
    if (d.type != "int" && d.type != parsed.front().type) {
      throw TranslateError("mixed floating-point precision in compute");
    }
    Param p;
    p.name = d.name;
    p.kind = d.type == "int" ? ParamKind::Int
                             : (d.pointer ? ParamKind::Pointer : ParamKind::Scalar);
    sig.params.push_back(std::move(p));
  }
  if (parsed.back().type != parsed.front().type) {
    throw TranslateError("mixed floating-point precision in compute");
  }
  return sig;
}

namespace {

struct Located {
  TokenStream tokens;
  FunctionSpan compute;
  ComputeSignature sig;
};

Located locate_compute(const ProgramSource& src) {
  Located l;
  try {
    l.tokens = tokenize_c(src.text);
  } catch (const LexError& e) {
    throw TranslateError(std::string("lex error: ") + e.what());
  }
  const auto fns = find_functions(l.tokens);
  const FunctionSpan* f = find_named(fns, "compute");
  if (!f) throw TranslateError("missing compute");
  l.compute = *f;
  l.sig = parse_compute_signature(l.tokens, l.compute);
  return l;
}

constexpr std::string_view kHeaders =
    "#include <stdio.h>\n#include <stdlib.h>\n#include <math.h>\n\n";

}  // namespace

ProgramSource attach_harness(const ProgramSource& src) {
  const Located l = locate_compute(src);
  ProgramSource out = src;
  out.precision = l.sig.precision;
  out.dialect = Dialect::C;
  out.text = std::string(kHeaders) + slice_definition(src, l.tokens, l.compute) +
             "\n\n" + render_main(l.sig.precision, l.sig.params, Dialect::C);
  return out;
}

ProgramSource translate_to_cuda(const ProgramSource& src) {
  const StructureReport report = validate_structure(src);
  if (!report.ok()) {
    throw TranslateError("cannot translate invalid program: " +
                         report.violations.front().message);
  }
  const Located l = locate_compute(src);
  ProgramSource out = src;
  out.precision = l.sig.precision;
  out.dialect = Dialect::Cuda;
  out.text = std::string(kHeaders) + "__global__ " +
             slice_definition(src, l.tokens, l.compute) + "\n\n" +
             render_main(l.sig.precision, l.sig.params, Dialect::Cuda);
  return out;
}

TokenStream compute_body_tokens(const TokenStream& tokens) {
  const auto fns = find_functions(tokens);
  const FunctionSpan* f = find_named(fns, "compute");
  if (!f) return {};
  return TokenStream(tokens.begin() + static_cast<std::ptrdiff_t>(f->body_open + 1),
                     tokens.begin() + static_cast<std::ptrdiff_t>(f->body_close));
}

namespace {

class GrammarParser {
 public:
  GrammarParser(const TokenStream& t, std::size_t begin, std::size_t end,
                Precision p)
      : t_(t), pos_(begin), end_(end), precision_(p) {}

  Block block_until_end() {
    Block b = block();
    if (pos_ != end_) fail("unexpected token");
    return b;
  }

 private:
  const TokenStream& t_;
  std::size_t pos_;
  std::size_t end_;
  Precision precision_;

  [[noreturn]] void fail(const std::string& what) const {
    if (pos_ < end_) {
      const Token& tok = t_[pos_];
      throw TranslateError(what + " '" + tok.lexeme + "' at " +
                           std::to_string(tok.line) + ":" +
                           std::to_string(tok.column));
    }
    throw TranslateError(what + " at end of compute body");
  }

  const Token* peek(std::size_t ahead = 0) const {
    return pos_ + ahead < end_ ? &t_[pos_ + ahead] : nullptr;
  }

  void expect_punct(std::string_view p) {
    if (!peek() || !peek()->is_punct(p)) fail("expected '" + std::string(p) + "', got");
    ++pos_;
  }
  void expect_op(std::string_view p) {
    if (!peek() || !peek()->is_op(p)) fail("expected '" + std::string(p) + "', got");
    ++pos_;
  }
  std::string expect_ident() {
    if (!peek() || peek()->kind != TokenKind::Identifier) fail("expected identifier, got");
    return t_[pos_++].lexeme;
  }

  bool at_block_end() const { return !peek() || peek()->is_punct("}"); }

  Block block() {
    Block b;
    bool seen_assignment = false;
    while (!at_block_end()) {
      const Token& tok = *peek();
      if (tok.is(TokenKind::Keyword, "if") || tok.is(TokenKind::Keyword, "for")) {
        if (seen_assignment) fail("control block after assignment");
        b.push_back(tok.lexeme == "if" ? Statement{if_block()} : Statement{for_block()});
      } else {
        b.push_back(Statement{assignment()});
        seen_assignment = true;
      }
    }
    if (!seen_assignment) fail("block without assignment");
    return b;
  }

  IfBlock if_block() {
    ++pos_;
    IfBlock f;
    expect_punct("(");
    f.lhs = expect_ident();
    static constexpr std::pair<std::string_view, BoolOp> ops[] = {
        {"<", BoolOp::Lt}, {">", BoolOp::Gt}, {"<=", BoolOp::Le},
        {">=", BoolOp::Ge}, {"==", BoolOp::Eq}, {"!=", BoolOp::Ne}};
    bool matched = false;
    for (const auto& [text, op] : ops) {
      if (peek() && peek()->is_op(text)) {
        f.op = op;
        matched = true;
      }
    }
    if (!matched) fail("expected comparison operator, got");
    ++pos_;
    f.rhs = expression();
    expect_punct(")");
    expect_punct("{");
    f.body = block();
    expect_punct("}");
    return f;
  }

  ForBlock for_block() {
    ++pos_;
    ForBlock f;
    expect_punct("(");
    if (!peek() || !peek()->is(TokenKind::Keyword, "int")) fail("expected 'int', got");
    ++pos_;
    f.var = expect_ident();
    expect_op("=");
    if (!peek() || !peek()->is(TokenKind::IntLiteral, "0")) fail("expected 0, got");
    ++pos_;
    expect_punct(";");
    if (expect_ident() != f.var) fail("loop condition must test the loop variable");
    expect_op("<");
    if (!peek() || peek()->kind != TokenKind::IntLiteral) fail("expected loop bound, got");
    f.bound = std::stoi(t_[pos_++].lexeme);
    expect_punct(";");
    expect_op("++");
    if (expect_ident() != f.var) fail("loop increment must step the loop variable");
    expect_punct(")");
    expect_punct("{");
    f.body = block();
    expect_punct("}");
    return f;
  }

  Assignment assignment() {
    Assignment a;
    const Token* tok = peek();
    if (tok->kind == TokenKind::Keyword) {
      if (tok->lexeme != fp_type_name(precision_)) fail("unexpected type");
      ++pos_;
      a.declares = true;
      a.target = expect_ident();
      expect_op("=");
    } else {
      a.target = expect_ident();
      if (a.target != kAccumulator) fail("assignment target must be comp, got");
      static constexpr std::pair<std::string_view, AssignOp> ops[] = {
          {"=", AssignOp::Assign}, {"+=", AssignOp::Add}, {"-=", AssignOp::Sub},
          {"*=", AssignOp::Mul},   {"/=", AssignOp::Div}};
      bool matched = false;
      for (const auto& [text, op] : ops) {
        if (peek() && peek()->is_op(text)) {
          a.op = op;
          matched = true;
        }
      }
      if (!matched) fail("expected assignment operator, got");
      ++pos_;
    }
    a.value = expression();
    expect_punct(";");
    return a;
  }

  Expression expression() {
    Expression e;
    e.first = operand();
    while (peek() && peek()->kind == TokenKind::Operator &&
           peek()->lexeme.size() == 1 &&
           std::string_view("+-*/").find(peek()->lexeme[0]) != std::string_view::npos) {
      const char op = t_[pos_++].lexeme[0];
      e.rest.emplace_back(op, operand());
    }
    return e;
  }

  Operand operand() {
    Operand o;
    const Token* tok = peek();
    if (!tok) fail("expected operand");
    if (tok->is_punct("(")) {
      ++pos_;
      o.kind = Operand::Kind::Paren;
      o.args.push_back(expression());
      expect_punct(")");
      return o;
    }
    if (tok->kind == TokenKind::FpLiteral) {
      o.kind = Operand::Kind::Numeral;
      o.text = t_[pos_++].lexeme;
      return o;
    }
    if (tok->kind != TokenKind::Identifier) fail("expected operand, got");
    o.text = t_[pos_++].lexeme;
    if (peek() && peek()->is_punct("(")) {
      ++pos_;
      o.kind = Operand::Kind::Call;
      if (math_function_arity(o.text) == 0) fail("unknown math function");
      o.args.push_back(expression());
      while (peek() && peek()->is_punct(",")) {
        ++pos_;
        o.args.push_back(expression());
      }
      expect_punct(")");
      return o;
    }
    if (peek() && peek()->is_punct("[")) {
      ++pos_;
      o.kind = Operand::Kind::Index;
      if (peek() && peek()->is(TokenKind::IntLiteral, "0")) {
        o.index = "0";
        ++pos_;
      } else {
        o.index = expect_ident();
      }
      expect_punct("]");
      return o;
    }
    o.kind = Operand::Kind::Identifier;
    return o;
  }
};

bool assigns_accumulator(const Block& b) {
  for (const auto& st : b) {
    if (const auto* a = std::get_if<Assignment>(&st.node)) {
      if (!a->declares && a->target == kAccumulator) return true;
    } else if (const auto* f = std::get_if<IfBlock>(&st.node)) {
      if (assigns_accumulator(f->body)) return true;
    } else if (const auto* l = std::get_if<ForBlock>(&st.node)) {
      if (assigns_accumulator(l->body)) return true;
    }
  }
  return false;
}

}  // namespace

GrammarAst parse_grammar_ast(const ProgramSource& src) {
  const Located l = locate_compute(src);
  const TokenStream& t = l.tokens;
  const std::size_t open = l.compute.body_open;
  const std::size_t close = l.compute.body_close;
  // Trailing `*result = comp;`
  if (close < open + 6 || !t[close - 5].is_op("*") ||
      !t[close - 4].is(TokenKind::Identifier, std::string(kResultParam)) ||
      !t[close - 3].is_op("=") ||
      !t[close - 2].is(TokenKind::Identifier, std::string(kAccumulator)) ||
      !t[close - 1].is_punct(";")) {
    throw TranslateError("compute must end with '*result = comp;'");
  }
  GrammarAst ast;
  ast.precision = l.sig.precision;
  ast.params = l.sig.params;
  ast.body = GrammarParser(t, open + 1, close - 5, ast.precision).block_until_end();
  if (!assigns_accumulator(ast.body)) {
    throw TranslateError("compute never assigns comp");
  }
  try {
    (void)render_compute(ast);
  } catch (const RenderError& e) {
    throw TranslateError(e.what());
  }
  return ast;
}

}  // namespace fpdiff::program
