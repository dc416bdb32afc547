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

#include "doctest.h"
#include "fpdiff/program/generator.hpp"
#include "fpdiff/program/tokenizer.hpp"

using namespace fpdiff;
using namespace fpdiff::program;

namespace {

std::vector<std::pair<TokenKind, std::string>> kinds(const TokenStream& t) {
  std::vector<std::pair<TokenKind, std::string>> out;
  for (const auto& tok : t) out.emplace_back(tok.kind, tok.lexeme);
  return out;
}

}  // namespace

TEST_CASE("compound assignment with trailing comment") {
  const auto t = tokenize_c("comp += 1.5e0; // x");
  REQUIRE(t.size() == 4);
  CHECK(t[0].is(TokenKind::Identifier, "comp"));
  CHECK(t[1].is(TokenKind::Operator, "+="));
  CHECK(t[2].is(TokenKind::FpLiteral, "1.5e0"));
  CHECK(t[3].is(TokenKind::Punctuation, ";"));
}

TEST_CASE("block comment is dropped") {
  const auto t = tokenize_c("/*a*/int i;");
  REQUIRE(t.size() == 3);
  CHECK(t[0].is(TokenKind::Keyword, "int"));
  CHECK(t[1].is(TokenKind::Identifier, "i"));
  CHECK(t[2].is(TokenKind::Punctuation, ";"));
}

TEST_CASE("empty input") { CHECK(tokenize_c("").empty()); }

TEST_CASE("literal classification") {
  const auto t = tokenize_c("1 0x1F 10u 1.0 .5 1e3 2.5F 0x1.8p1 3.0L 7ULL");
  const TokenKind expect[] = {
      TokenKind::IntLiteral, TokenKind::IntLiteral, TokenKind::IntLiteral,
      TokenKind::FpLiteral,  TokenKind::FpLiteral,  TokenKind::FpLiteral,
      TokenKind::FpLiteral,  TokenKind::FpLiteral,  TokenKind::FpLiteral,
      TokenKind::IntLiteral};
  REQUIRE(t.size() == std::size(expect));
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t[i].kind == expect[i]);
}

TEST_CASE("signed exponent stays in one literal") {
  const auto t = tokenize_c("x=1.2E-3-y");
  REQUIRE(t.size() == 5);
  CHECK(t[2].lexeme == "1.2E-3");
  CHECK(t[3].is_op("-"));
}

TEST_CASE("directives become single tokens") {
  const auto t = tokenize_c("#include   <stdio.h> // io\nint main(void) { return 0; }");
  REQUIRE(!t.empty());
  CHECK(t[0].kind == TokenKind::Directive);
  CHECK(t[0].lexeme == "#include <stdio.h>");
  CHECK(t[1].is(TokenKind::Keyword, "int"));
}

TEST_CASE("strings and kernel launch") {
  const auto t = tokenize_c("printf(\"%016llx\\n\", b); k<<<1, 1>>>(x);");
  CHECK(t[2].kind == TokenKind::StringLiteral);
  CHECK(t[2].lexeme == "\"%016llx\\n\"");
  bool launch = false;
  for (const auto& tok : t) launch = launch || tok.is_op("<<<");
  CHECK(launch);
}

TEST_CASE("positions are 1-based line and column") {
  const auto t = tokenize_c("a\n  b");
  CHECK(t[1].line == 2);
  CHECK(t[1].column == 3);
  CHECK(t[1].offset == 4);
}

TEST_CASE("malformed input raises LexError with position") {
  CHECK_THROWS_AS(tokenize_c("int @x;"), LexError);
  CHECK_THROWS_AS(tokenize_c("double d = 1.2.3;"), LexError);
  CHECK_THROWS_AS(tokenize_c("/* open"), LexError);
  CHECK_THROWS_AS(tokenize_c("\"open"), LexError);
  try {
    tokenize_c("x\n  $");
    FAIL("expected LexError");
  } catch (const LexError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
}

TEST_CASE("lex idempotence over generated programs") {
  GenConfig cfg;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    cfg.precision = seed % 2 ? Precision::FP32 : Precision::FP64;
    const auto src = generate_random_program(seed, cfg);
    const auto once = tokenize_c(src.text);
    const auto twice = tokenize_c(join_lexemes(once));
    CHECK(kinds(once) == kinds(twice));
  }
}

TEST_CASE("lex idempotence on hand-written C") {
  const char* text = R"(#include <stdio.h>
#define N 4 /* size */
static double f(double* a) { return a[0] >= 1e-3 ? a[0] : -.5f; }
int main(void) { double a[N] = {1.0}; a[0] <<= 1; printf("%g\n", f(a)); return 'x' != 0; })";
  const auto once = tokenize_c(text);
  CHECK(kinds(once) == kinds(tokenize_c(join_lexemes(once))));
}
