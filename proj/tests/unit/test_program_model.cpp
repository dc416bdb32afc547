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

#include <filesystem>

#include "doctest.h"
#include "fpdiff/program/generator.hpp"
#include "fpdiff/program/render.hpp"
#include "fpdiff/program/structure.hpp"
#include "fpdiff/subprocess.hpp"

using namespace fpdiff;
using namespace fpdiff::program;
namespace fs = std::filesystem;

namespace {

Expression ident(const std::string& name) {
  Expression e;
  e.first.kind = Operand::Kind::Identifier;
  e.first.text = name;
  return e;
}

ProgramSource with_text(std::string text) {
  ProgramSource s;
  s.text = std::move(text);
  return s;
}

const char* kMinimal = R"(#include <stdio.h>
#include <math.h>

void compute(double comp, double x, double* result) {
  comp += x;
  *result = comp;
}

int main(int argc, char** argv) {
  double r = 0;
  compute(1.0, 2.0, &r);
  printf("%f\n", r);
  return 0;
}
)";

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / "fpdiff_program_model_test";
  fs::create_directories(dir);
  return dir;
}

// Compiles a C source with the local gcc. Returns the binary path or empty.
fs::path compile_with_gcc(const std::string& text, const std::string& stem) {
  const fs::path dir = scratch_dir();
  const fs::path c = dir / (stem + ".c");
  const fs::path bin = dir / stem;
  write_file(c.string(), text);
  const auto r = run_process({"gcc", "-O0", c.string(), "-o", bin.string(), "-lm"},
                             std::chrono::seconds(60));
  if (!r.exited_ok()) {
    MESSAGE(r.err);
    return {};
  }
  return bin;
}

std::size_t count_assignments_to_comp(const Block& b) {
  std::size_t n = 0;
  for (const auto& st : b) {
    if (const auto* a = std::get_if<Assignment>(&st.node)) {
      n += !a->declares && a->target == "comp";
    } else if (const auto* f = std::get_if<IfBlock>(&st.node)) {
      n += count_assignments_to_comp(f->body);
    } else if (const auto* l = std::get_if<ForBlock>(&st.node)) {
      n += count_assignments_to_comp(l->body);
    }
  }
  return n;
}

}  // namespace

TEST_CASE("generator is deterministic in (seed, config)") {
  GenConfig cfg;
  const auto a = generate_random_program(7, cfg);
  const auto b = generate_random_program(7, cfg);
  CHECK(a.text == b.text);
  CHECK(a.text != generate_random_program(8, cfg).text);
  CHECK(a.provenance.kind == Provenance::Kind::GrammarRandom);
  CHECK(a.provenance.seed == 7);
}

TEST_CASE("minimum sizes yield a single assignment to comp") {
  GenConfig cfg;
  cfg.max_expr_depth = 1;
  cfg.max_block_stmts = 1;
  const auto ast = generate_random_ast(7, cfg);
  REQUIRE(ast.body.size() == 1);
  const auto* a = std::get_if<Assignment>(&ast.body[0].node);
  REQUIRE(a != nullptr);
  CHECK_FALSE(a->declares);
  CHECK(a->target == "comp");
  for (const auto& [op, o] : a->value.rest) {
    CHECK(o.kind != Operand::Kind::Paren);
    CHECK(o.kind != Operand::Kind::Call);
  }
}

TEST_CASE("invalid generator bounds are rejected") {
  GenConfig cfg;
  cfg.max_block_stmts = 0;
  CHECK_THROWS_AS(generate_random_program(1, cfg), std::invalid_argument);
  cfg = GenConfig{};
  cfg.max_params = 1;
  cfg.min_params = 2;
  CHECK_THROWS_AS(generate_random_program(1, cfg), std::invalid_argument);
}

TEST_CASE("generated ASTs satisfy the grammar invariants") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto ast = generate_random_ast(seed, cfg);
    CHECK(count_assignments_to_comp(ast.body) >= 1);
    CHECK(static_cast<int>(ast.params.size()) >= cfg.min_params);
    CHECK(static_cast<int>(ast.params.size()) <= cfg.max_params);
    int pointers = 0;
    for (const auto& p : ast.params) pointers += p.kind == ParamKind::Pointer;
    CHECK(pointers <= cfg.max_pointer_params);
  }
}

TEST_CASE("render_c uses comp as first parameter and result as out-parameter") {
  GrammarAst ast;
  ast.params = {Param{ParamKind::Scalar, "x"}};
  Assignment a;
  a.target = "comp";
  a.op = AssignOp::Add;
  a.value = ident("x");
  ast.body.push_back(Statement{a});
  const auto src = render_c(ast);
  CHECK(src.text.find("void compute(double comp, double x, double* result) {") !=
        std::string::npos);
  CHECK(src.text.find("  comp += x;\n  *result = comp;\n}") != std::string::npos);
  CHECK(validate_structure(src).ok());
}

TEST_CASE("render_c maps for-loop blocks to canonical headers") {
  GrammarAst ast;
  ForBlock loop;
  loop.var = "i";
  loop.bound = 5;
  Assignment inner;
  inner.target = "comp";
  inner.op = AssignOp::Mul;
  inner.value = ident("comp");
  loop.body.push_back(Statement{inner});
  ast.body.push_back(Statement{loop});
  Assignment last = inner;
  last.op = AssignOp::Add;
  ast.body.push_back(Statement{last});
  const auto src = render_c(ast);
  CHECK(src.text.find("for (int i = 0; i < 5; ++i) {") != std::string::npos);
}

TEST_CASE("render_c rejects unresolvable identifiers") {
  GrammarAst ast;
  Assignment a;
  a.target = "comp";
  a.value = ident("nowhere");
  ast.body.push_back(Statement{a});
  CHECK_THROWS_AS(render_c(ast), RenderError);

  GrammarAst bad_target;
  a.value = ident("comp");
  a.target = "var_1";
  bad_target.body.push_back(Statement{a});
  CHECK_THROWS_AS(render_c(bad_target), RenderError);
}

TEST_CASE("render, tokenize and re-parse round-trips the compute body") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    cfg.precision = seed % 3 == 0 ? Precision::FP32 : Precision::FP64;
    const auto ast = generate_random_ast(seed, cfg);
    const auto reparsed = parse_grammar_ast(render_c(ast));
    CHECK_MESSAGE(reparsed == ast, "seed " << seed);
  }
}

TEST_CASE("grammar recognizer rejects bodies outside the grammar") {
  auto body = [](const std::string& b) {
    return with_text("#include <stdio.h>\nvoid compute(double comp, double x, double* result) {\n" +
                     b + "\n  *result = comp;\n}\nint main(void) { double r; compute(1, 2, &r); printf(\"%f\", r); return 0; }\n");
  };
  CHECK_NOTHROW(parse_grammar_ast(body("comp += x;")));
  CHECK_THROWS_AS(parse_grammar_ast(body("")), TranslateError);
  CHECK_THROWS_AS(parse_grammar_ast(body("while (comp < 1.0) { comp += x; }")), TranslateError);
  CHECK_THROWS_AS(parse_grammar_ast(body("comp += x; if (comp < 1.0) { comp += x; }")), TranslateError);
  CHECK_THROWS_AS(parse_grammar_ast(body("for (int i = 0; i < 3; i++) { comp += x; } comp += x;")), TranslateError);
  CHECK_THROWS_AS(parse_grammar_ast(body("comp += y;")), TranslateError);
  CHECK_THROWS_AS(parse_grammar_ast(body("comp += x[0];")), TranslateError);
}

TEST_CASE("validate_structure accepts generator output") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto report = validate_structure(generate_random_program(seed, cfg));
    CHECK_MESSAGE(report.ok(), "seed " << seed);
  }
  CHECK(validate_structure(with_text(kMinimal)).ok());
}

TEST_CASE("validate_structure flags rule violations") {
  std::string text = kMinimal;
  SUBCASE("disallowed header") {
    text = "#include <string.h>\n" + text;
    const auto r = validate_structure(with_text(text));
    REQUIRE(r.has("disallowed-header"));
    CHECK(r.violations.front().message == "disallowed header: string.h");
  }
  SUBCASE("extra function") {
    text += "static double helper(double v) { return v; }\n";
    const auto r = validate_structure(with_text(text));
    REQUIRE(r.has("extra-function"));
    CHECK(r.violations.front().message == "extra function: helper");
  }
  SUBCASE("missing main") {
    text = text.substr(0, text.find("int main"));
    const auto r = validate_structure(with_text(text));
    CHECK(r.has("missing-main"));
    CHECK(r.has("missing-output"));
  }
  SUBCASE("missing output statement") {
    text.replace(text.find("printf(\"%f\\n\", r);"), 19, "(void)r;");
    CHECK(validate_structure(with_text(text)).has("missing-output"));
  }
  SUBCASE("compute not called") {
    text.replace(text.find("compute(1.0"), 7, "(void)");
    const auto r = validate_structure(with_text(text));
    CHECK(r.has("compute-not-called"));
  }
  SUBCASE("lex error is a violation, not a crash") {
    const auto r = validate_structure(with_text("int main() { @ }"));
    CHECK(r.has("lex-error"));
  }
}

TEST_CASE("signature convention is enforced") {
  auto sig_of = [](const std::string& decl) {
    const auto t = tokenize_c(decl + " { }");
    const auto fns = find_functions(t);
    REQUIRE(fns.size() == 1);
    return parse_compute_signature(t, fns[0]);
  };
  const auto sig = sig_of("void compute(float comp, int n, float* a, const float b, float* result)");
  CHECK(sig.precision == Precision::FP32);
  REQUIRE(sig.params.size() == 3);
  CHECK(sig.params[0] == Param{ParamKind::Int, "n"});
  CHECK(sig.params[1] == Param{ParamKind::Pointer, "a"});
  CHECK(sig.params[2] == Param{ParamKind::Scalar, "b"});
  CHECK_THROWS_AS(sig_of("double compute(double comp, double* result)"), TranslateError);
  CHECK_THROWS_AS(sig_of("void compute(double x, double* result)"), TranslateError);
  CHECK_THROWS_AS(sig_of("void compute(double comp, double r)"), TranslateError);
  CHECK_THROWS_AS(sig_of("void compute(double comp, float x, double* result)"), TranslateError);
}

TEST_CASE("attach_harness is the identity on canonical programs") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto src = generate_random_program(seed, cfg);
    CHECK(attach_harness(src).text == src.text);
  }
}

TEST_CASE("attach_harness replaces a hand-written main") {
  const auto out = attach_harness(with_text(kMinimal));
  CHECK(out.text.find("compute(comp, x, &result);") != std::string::npos);
  CHECK(out.text.find("printf(\"%016llx\\n\", out_.bits);") != std::string::npos);
  CHECK(validate_structure(out).ok());
}

TEST_CASE("CUDA translation launches one block of one thread") {
  GenConfig cfg;
  const auto cuda = translate_to_cuda(generate_random_program(3, cfg));
  CHECK(cuda.dialect == Dialect::Cuda);
  CHECK(cuda.text.find("__global__ void compute(") != std::string::npos);
  CHECK(cuda.text.find("compute<<<1, 1>>>(") != std::string::npos);
  CHECK(cuda.text.find("cudaMemcpyDeviceToHost") != std::string::npos);
  CHECK(cuda.text.find("printf(\"%016llx\\n\", out_.bits);") != std::string::npos);
  CHECK(validate_structure(cuda).ok());
}

TEST_CASE("CUDA translation copies pointer arguments before launch") {
  GrammarAst ast;
  ast.params = {Param{ParamKind::Pointer, "var_1"}};
  ForBlock loop;
  loop.var = "i";
  loop.bound = 8;
  Assignment inner;
  inner.target = "comp";
  inner.op = AssignOp::Add;
  inner.value.first.kind = Operand::Kind::Index;
  inner.value.first.text = "var_1";
  inner.value.first.index = "i";
  loop.body.push_back(Statement{inner});
  ast.body.push_back(Statement{loop});
  Assignment last;
  last.target = "comp";
  last.op = AssignOp::Mul;
  last.value.first.text = "2.0";
  ast.body.push_back(Statement{last});
  const auto cuda = translate_to_cuda(render_c(ast));
  const auto copy = cuda.text.find(
      "cudaMemcpy(d_var_1, var_1, sizeof(double) * var_1_len_, cudaMemcpyHostToDevice);");
  const auto launch = cuda.text.find("compute<<<1, 1>>>(comp, d_var_1, d_result_);");
  REQUIRE(copy != std::string::npos);
  REQUIRE(launch != std::string::npos);
  CHECK(copy < launch);

  InputVector in;
  in.values.push_back({"comp", ParamKind::Scalar, {"1.5"}});
  in.values.push_back({"var_1", ParamKind::Pointer, std::vector<std::string>(8, "0.25")});
  const auto argv = in.to_argv();
  REQUIRE(argv.size() == 10);
  CHECK(argv[1] == "8");
}

TEST_CASE("CUDA translation keeps the compute body token stream") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto c = generate_random_program(seed, cfg);
    const auto cu = translate_to_cuda(c);
    const auto tc = tokenize_c(c.text);
    const auto tu = tokenize_c(cu.text);
    const auto bc = compute_body_tokens(tc);
    const auto bu = compute_body_tokens(tu);
    REQUIRE(bc.size() == bu.size());
    for (std::size_t i = 0; i < bc.size(); ++i) {
      CHECK(bc[i].kind == bu[i].kind);
      CHECK(bc[i].lexeme == bu[i].lexeme);
    }
    // Signature differs only by the kernel qualifier.
    const auto fc = find_functions(tc);
    const auto fu = find_functions(tu);
    const auto& sc = *std::find_if(fc.begin(), fc.end(), [](auto& f) { return f.name == "compute"; });
    const auto& su = *std::find_if(fu.begin(), fu.end(), [](auto& f) { return f.name == "compute"; });
    CHECK(tu[su.first_token].lexeme == "__global__");
    CHECK(su.body_open - su.first_token == sc.body_open - sc.first_token + 1);
    for (std::size_t i = 0; i + sc.first_token < sc.body_open; ++i) {
      CHECK(tc[sc.first_token + i].lexeme == tu[su.first_token + 1 + i].lexeme);
    }
  }
}

TEST_CASE("translate_to_cuda refuses invalid programs") {
  CHECK_THROWS_AS(translate_to_cuda(with_text("int main(void) { return 0; }")), TranslateError);
}

TEST_CASE("generator outputs compile under the host compiler at -O0") {
  GenConfig cfg;
  int compiled = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto src = generate_random_program(seed, cfg);
    REQUIRE(validate_structure(src).ok());
    compiled += !compile_with_gcc(src.text, "gen_" + std::to_string(seed)).empty();
  }
  CHECK(compiled == 100);
}

TEST_CASE("embedded inputs print the same bits as argv inputs") {
  GenConfig cfg;
  const auto ast = generate_random_ast(11, cfg);
  InputVector in;
  in.values.push_back({"comp", ParamKind::Scalar, {"0.75"}});
  for (const auto& p : ast.params) {
    if (p.kind == ParamKind::Int) in.values.push_back({p.name, p.kind, {"3"}});
    if (p.kind == ParamKind::Scalar) in.values.push_back({p.name, p.kind, {"1.25e-2"}});
    if (p.kind == ParamKind::Pointer) {
      in.values.push_back({p.name, p.kind, std::vector<std::string>(10, "2")});
    }
  }
  const auto argv_bin = compile_with_gcc(render_c(ast).text, "argv_mode");
  const auto emb_bin = compile_with_gcc(render_c(ast, in).text, "embedded_mode");
  REQUIRE(!argv_bin.empty());
  REQUIRE(!emb_bin.empty());
  std::vector<std::string> cmd = {argv_bin.string()};
  for (const auto& a : in.to_argv()) cmd.push_back(a);
  const auto r1 = run_process(cmd, std::chrono::seconds(10));
  const auto r2 = run_process({emb_bin.string()}, std::chrono::seconds(10));
  REQUIRE(r1.exited_ok());
  REQUIRE(r2.exited_ok());
  CHECK(r1.out.size() == 17);
  CHECK(r1.out == r2.out);
}
