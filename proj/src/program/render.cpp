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

#include "fpdiff/program/render.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fpdiff/program/math_functions.hpp"

namespace fpdiff::program {

std::string_view to_string(AssignOp op) {
  switch (op) {
    case AssignOp::Assign: return "=";
    case AssignOp::Add: return "+=";
    case AssignOp::Sub: return "-=";
    case AssignOp::Mul: return "*=";
    case AssignOp::Div: return "/=";
  }
  return "=";
}

std::string_view to_string(BoolOp op) {
  switch (op) {
    case BoolOp::Lt: return "<";
    case BoolOp::Gt: return ">";
    case BoolOp::Le: return "<=";
    case BoolOp::Ge: return ">=";
    case BoolOp::Eq: return "==";
    case BoolOp::Ne: return "!=";
  }
  return "<";
}

std::string_view to_string(Provenance::Kind kind) {
  switch (kind) {
    case Provenance::Kind::GrammarRandom: return "grammar-random";
    case Provenance::Kind::LlmGrammar: return "llm-grammar";
    case Provenance::Kind::LlmMutation: return "llm-mutation";
  }
  return "?";
}

namespace {

void render_operand(const Operand& o, std::string& out);

void render_expr(const Expression& e, std::string& out) {
  render_operand(e.first, out);
  for (const auto& [op, operand] : e.rest) {
    out += ' ';
    out += op;
    out += ' ';
    render_operand(operand, out);
  }
}

void render_operand(const Operand& o, std::string& out) {
  switch (o.kind) {
    case Operand::Kind::Identifier:
    case Operand::Kind::Numeral:
      out += o.text;
      break;
    case Operand::Kind::Index:
      out += o.text + "[" + o.index + "]";
      break;
    case Operand::Kind::Paren:
      out += '(';
      render_expr(o.args.at(0), out);
      out += ')';
      break;
    case Operand::Kind::Call:
      out += o.text + "(";
      for (std::size_t i = 0; i < o.args.size(); ++i) {
        if (i) out += ", ";
        render_expr(o.args[i], out);
      }
      out += ')';
      break;
  }
}

class Renderer {
 public:
  explicit Renderer(const GrammarAst& ast) : ast_(ast) {
    scopes_.emplace_back();
    declare(std::string(kAccumulator), ParamKind::Scalar);
    for (const auto& p : ast.params) declare(p.name, p.kind);
  }

  std::string run() {
    const std::string_view fp = fp_type_name(ast_.precision);
    out_ << "void compute(" << fp << " " << kAccumulator;
    for (const auto& p : ast_.params) {
      out_ << ", ";
      switch (p.kind) {
        case ParamKind::Int: out_ << "int " << p.name; break;
        case ParamKind::Scalar: out_ << fp << " " << p.name; break;
        case ParamKind::Pointer: out_ << fp << "* " << p.name; break;
      }
    }
    out_ << ", " << fp << "* " << kResultParam << ") {\n";
    block(ast_.body, 1);
    out_ << "  *" << kResultParam << " = " << kAccumulator << ";\n}\n";
    return out_.str();
  }

 private:
  const GrammarAst& ast_;
  std::ostringstream out_;
  std::vector<std::vector<std::pair<std::string, ParamKind>>> scopes_;
  std::vector<std::string> loop_vars_;

  void declare(const std::string& name, ParamKind kind) {
    scopes_.back().emplace_back(name, kind);
  }

  const ParamKind* lookup(const std::string& name) const {
    for (auto s = scopes_.rbegin(); s != scopes_.rend(); ++s) {
      for (const auto& [n, k] : *s) {
        if (n == name) return &k;
      }
    }
    return nullptr;
  }

  bool is_loop_var(const std::string& name) const {
    return std::find(loop_vars_.begin(), loop_vars_.end(), name) !=
           loop_vars_.end();
  }

  void check_value(const std::string& name) const {
    const ParamKind* k = lookup(name);
    if (is_loop_var(name)) return;
    if (!k) throw RenderError("unresolvable identifier '" + name + "'");
    if (*k == ParamKind::Pointer) {
      throw RenderError("pointer '" + name + "' used without index");
    }
  }

  void check_expr(const Expression& e) const {
    check_operand(e.first);
    for (const auto& [op, o] : e.rest) {
      if (std::string_view("+-*/").find(op) == std::string_view::npos) {
        throw RenderError(std::string("bad operator '") + op + "'");
      }
      check_operand(o);
    }
  }

  void check_operand(const Operand& o) const {
    switch (o.kind) {
      case Operand::Kind::Identifier:
        check_value(o.text);
        break;
      case Operand::Kind::Index: {
        const ParamKind* k = lookup(o.text);
        if (!k || *k != ParamKind::Pointer) {
          throw RenderError("unresolvable array '" + o.text + "'");
        }
        if (o.index != "0" && !is_loop_var(o.index)) {
          throw RenderError("unresolvable index '" + o.index + "'");
        }
        break;
      }
      case Operand::Kind::Numeral:
        break;
      case Operand::Kind::Paren:
        if (o.args.size() != 1) throw RenderError("malformed parenthesis");
        check_expr(o.args[0]);
        break;
      case Operand::Kind::Call: {
        const int arity = math_function_arity(o.text);
        if (arity == 0 || static_cast<std::size_t>(arity) != o.args.size()) {
          throw RenderError("unknown math call '" + o.text + "'");
        }
        for (const auto& a : o.args) check_expr(a);
        break;
      }
    }
  }

  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void block(const Block& b, int depth) {
    scopes_.emplace_back();
    for (const auto& st : b) statement(st, depth);
    scopes_.pop_back();
  }

  void statement(const Statement& st, int depth) {
    std::string text;
    if (const auto* a = std::get_if<Assignment>(&st.node)) {
      check_expr(a->value);
      indent(depth);
      render_expr(a->value, text);
      if (a->declares) {
        if (lookup(a->target)) {
          throw RenderError("redeclared identifier '" + a->target + "'");
        }
        out_ << fp_type_name(ast_.precision) << " " << a->target << " = "
             << text << ";\n";
        declare(a->target, ParamKind::Scalar);
      } else {
        if (a->target != kAccumulator) {
          throw RenderError("assignment target must be comp, got '" +
                            a->target + "'");
        }
        out_ << a->target << " " << to_string(a->op) << " " << text << ";\n";
      }
    } else if (const auto* f = std::get_if<IfBlock>(&st.node)) {
      check_value(f->lhs);
      check_expr(f->rhs);
      render_expr(f->rhs, text);
      indent(depth);
      out_ << "if (" << f->lhs << " " << to_string(f->op) << " " << text
           << ") {\n";
      block(f->body, depth + 1);
      indent(depth);
      out_ << "}\n";
    } else if (const auto* l = std::get_if<ForBlock>(&st.node)) {
      indent(depth);
      out_ << "for (int " << l->var << " = 0; " << l->var << " < " << l->bound
           << "; ++" << l->var << ") {\n";
      loop_vars_.push_back(l->var);
      block(l->body, depth + 1);
      loop_vars_.pop_back();
      indent(depth);
      out_ << "}\n";
    }
  }
};

std::string literal_for(const std::string& value, Precision p) {
  std::string v = value;
  if (v.find_first_of(".eEn") == std::string::npos) v += ".0";
  if (p == Precision::FP32) v += "f";
  return v;
}

}  // namespace

std::string render_expression(const Expression& e) {
  std::string out;
  render_expr(e, out);
  return out;
}

std::string render_compute(const GrammarAst& ast) { return Renderer(ast).run(); }

std::string render_main(Precision precision, const std::vector<Param>& params,
                        Dialect dialect,
                        const std::optional<InputVector>& embedded) {
  if (embedded) {
    check_inputs_match(*embedded, params);
  }
  const std::string fp(fp_type_name(precision));
  const bool fp32 = precision == Precision::FP32;
  const std::string parse_fp = fp32 ? "strtof" : "strtod";
  const bool cuda = dialect == Dialect::Cuda;

  std::ostringstream o;
  if (embedded) {
    o << "int main(void) {\n";
  } else {
    o << "int main(int argc, char** argv) {\n";
    o << "  int arg_ = 1;\n";
  }

  auto read_scalar = [&](const std::string& decl, const std::string& name,
                         bool is_int, std::size_t idx) {
    if (embedded) {
      const std::string& v = embedded->values[idx].values.at(0);
      o << "  " << decl << " " << name << " = "
        << (is_int ? v : literal_for(v, precision)) << ";\n";
      return;
    }
    o << "  if (arg_ >= argc) return 2;\n";
    o << "  " << decl << " " << name << " = "
      << (is_int ? "atoi(argv[arg_++])" : parse_fp + "(argv[arg_++], NULL)")
      << ";\n";
  };

  read_scalar(fp, std::string(kAccumulator), false, 0);
  std::vector<std::string> arrays;
  for (std::size_t i = 0; i < params.size(); ++i) {
    const Param& p = params[i];
    switch (p.kind) {
      case ParamKind::Int:
        read_scalar("int", p.name, true, i + 1);
        break;
      case ParamKind::Scalar:
        read_scalar(fp, p.name, false, i + 1);
        break;
      case ParamKind::Pointer: {
        arrays.push_back(p.name);
        const std::string len = p.name + "_len_";
        if (embedded) {
          const auto& vals = embedded->values[i + 1].values;
          o << "  int " << len << " = " << vals.size() << ";\n";
          o << "  " << fp << " " << p.name << "_init_[] = {";
          for (std::size_t k = 0; k < vals.size(); ++k) {
            o << (k ? ", " : "") << literal_for(vals[k], precision);
          }
          o << "};\n";
          o << "  " << fp << "* " << p.name << " = (" << fp << "*)malloc(sizeof("
            << fp << ") * " << len << ");\n";
          o << "  for (int k_ = 0; k_ < " << len << "; ++k_) {\n";
          o << "    " << p.name << "[k_] = " << p.name << "_init_[k_];\n";
          o << "  }\n";
        } else {
          o << "  if (arg_ >= argc) return 2;\n";
          o << "  int " << len << " = atoi(argv[arg_++]);\n";
          o << "  if (" << len << " < 1) return 2;\n";
          o << "  " << fp << "* " << p.name << " = (" << fp << "*)malloc(sizeof("
            << fp << ") * " << len << ");\n";
          o << "  for (int k_ = 0; k_ < " << len << "; ++k_) {\n";
          o << "    if (arg_ >= argc) return 2;\n";
          o << "    " << p.name << "[k_] = " << parse_fp
            << "(argv[arg_++], NULL);\n";
          o << "  }\n";
        }
        break;
      }
    }
  }

  auto call_args = [&](bool device) {
    std::string s(kAccumulator);
    for (const auto& p : params) {
      s += ", ";
      if (device && p.kind == ParamKind::Pointer) s += "d_";
      s += p.name;
    }
    s += device ? ", d_result_" : ", &result";
    return s;
  };

  if (cuda) {
    for (const auto& a : arrays) {
      const std::string bytes = "sizeof(" + fp + ") * " + a + "_len_";
      o << "  " << fp << "* d_" << a << " = NULL;\n";
      o << "  cudaMalloc((void**)&d_" << a << ", " << bytes << ");\n";
      o << "  cudaMemcpy(d_" << a << ", " << a << ", " << bytes
        << ", cudaMemcpyHostToDevice);\n";
    }
    o << "  " << fp << "* d_result_ = NULL;\n";
    o << "  cudaMalloc((void**)&d_result_, sizeof(" << fp << "));\n";
    o << "  compute<<<1, 1>>>(" << call_args(true) << ");\n";
    o << "  cudaDeviceSynchronize();\n";
    o << "  if (cudaGetLastError() != cudaSuccess) return 3;\n";
    o << "  " << fp << " result = 0;\n";
    o << "  cudaMemcpy(&result, d_result_, sizeof(" << fp
      << "), cudaMemcpyDeviceToHost);\n";
  } else {
    o << "  " << fp << " result = 0;\n";
    o << "  compute(" << call_args(false) << ");\n";
  }

  o << "  union {\n    " << fp << " value;\n    "
    << (fp32 ? "unsigned int" : "unsigned long long") << " bits;\n  } out_;\n";
  o << "  out_.value = result;\n";
  o << "  printf(\"" << (fp32 ? "%08x" : "%016llx") << "\\n\", out_.bits);\n";
  if (cuda) {
    for (const auto& a : arrays) o << "  cudaFree(d_" << a << ");\n";
    o << "  cudaFree(d_result_);\n";
  }
  for (const auto& a : arrays) o << "  free(" << a << ");\n";
  o << "  return 0;\n}\n";
  return o.str();
}

ProgramSource render_c(const GrammarAst& ast,
                       const std::optional<InputVector>& embedded) {
  ProgramSource src;
  src.precision = ast.precision;
  src.dialect = Dialect::C;
  src.text =
      "#include <stdio.h>\n#include <stdlib.h>\n#include <math.h>\n\n" +
      render_compute(ast) + "\n" +
      render_main(ast.precision, ast.params, Dialect::C, embedded);
  return src;
}

void check_inputs_match(const InputVector& inputs,
                        const std::vector<Param>& params) {
  if (inputs.values.size() != params.size() + 1) {
    throw Error("input arity " + std::to_string(inputs.values.size()) +
                " does not match signature arity " +
                std::to_string(params.size() + 1));
  }
  auto check = [](const InputValue& v, ParamKind kind, const std::string& name) {
    if (v.kind != kind || v.name != name) {
      throw Error("input '" + v.name + "' does not match parameter '" + name +
                  "'");
    }
    if (v.values.empty()) throw Error("input '" + name + "' has no values");
    if (kind != ParamKind::Pointer && v.values.size() != 1) {
      throw Error("scalar input '" + name + "' has multiple values");
    }
  };
  check(inputs.values[0], ParamKind::Scalar, std::string(kAccumulator));
  for (std::size_t i = 0; i < params.size(); ++i) {
    check(inputs.values[i + 1], params[i].kind, params[i].name);
  }
}

std::vector<std::string> InputVector::to_argv() const {
  std::vector<std::string> argv;
  for (const auto& v : values) {
    if (v.kind == ParamKind::Pointer) argv.push_back(std::to_string(v.values.size()));
    argv.insert(argv.end(), v.values.begin(), v.values.end());
  }
  return argv;
}

}  // namespace fpdiff::program
