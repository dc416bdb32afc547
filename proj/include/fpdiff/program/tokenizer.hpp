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

#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fpdiff/common.hpp"

namespace fpdiff::program {

// Directive, StringLiteral and CharLiteral extend the six core kinds so that
// whole LLM-written translation units (includes, printf formats) lex.
enum class TokenKind {
  Identifier,
  Keyword,
  IntLiteral,
  FpLiteral,
  Operator,
  Punctuation,
  StringLiteral,
  CharLiteral,
  Directive,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string lexeme;
  std::size_t offset = 0;  // byte offset into the source
  int line = 1;
  int column = 1;

  bool is(TokenKind k, std::string_view text) const {
    return kind == k && lexeme == text;
  }
  bool is_punct(std::string_view text) const {
    return kind == TokenKind::Punctuation && lexeme == text;
  }
  bool is_op(std::string_view text) const {
    return kind == TokenKind::Operator && lexeme == text;
  }
};

using TokenStream = std::vector<Token>;

class LexError : public Error {
 public:
  LexError(const std::string& what, int line, int column)
      : Error(what + " at " + std::to_string(line) + ":" +
              std::to_string(column)),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

bool is_c_keyword(std::string_view word);
bool is_type_keyword(std::string_view word);

// Tokenizes C (and the CUDA subset the translator emits). Comments and
// whitespace are dropped. Preprocessor lines become single Directive tokens
// with whitespace collapsed.
TokenStream tokenize_c(std::string_view text);

// Joins lexemes with single separators: a newline around directives, a
// space otherwise. tokenize_c(join_lexemes(s)) reproduces s's lexemes.
std::string join_lexemes(const TokenStream& tokens);

}  // namespace fpdiff::program
