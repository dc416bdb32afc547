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

#include "fpdiff/program/tokenizer.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace fpdiff::program {

namespace {

constexpr std::array<std::string_view, 48> kKeywords = {
    "auto",     "break",    "case",     "char",       "const",
    "continue", "default",  "do",       "double",     "else",
    "enum",     "extern",   "float",    "for",        "goto",
    "if",       "inline",   "int",      "long",       "register",
    "restrict", "return",   "short",    "signed",     "sizeof",
    "static",   "struct",   "switch",   "typedef",    "union",
    "unsigned", "void",     "volatile", "while",      "_Bool",
    "_Complex", "_Imaginary", "_Alignas", "_Alignof", "_Atomic",
    "_Noreturn", "_Static_assert", "_Thread_local", "__global__",
    "__device__", "__host__", "__shared__", "__constant__",
};

constexpr std::array<std::string_view, 11> kTypeKeywords = {
    "char", "short", "int",  "long", "float", "double",
    "signed", "unsigned", "void", "_Bool", "_Complex",
};

// Longest first so a greedy scan picks the longest match.
constexpr std::string_view kOperators[] = {
    "<<<", ">>>", "<<=", ">>=", "->", "++", "--", "<<", ">>", "<=",
    ">=",  "==",  "!=",  "&&",  "||", "+=", "-=", "*=", "/=", "%=",
    "&=",  "|=",  "^=",  "##",  "+",  "-",  "*",  "/",  "%",  "<",
    ">",   "=",   "!",   "~",   "&",  "|",  "^",  "?",  ":",  "#",
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

bool valid_int_suffix(std::string_view s) {
  std::string lower;
  for (char c : s) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  static constexpr std::array<std::string_view, 11> ok = {
      "", "u", "l", "ul", "lu", "ll", "ull", "llu", "z", "uz", "zu"};
  return std::find(ok.begin(), ok.end(), lower) != ok.end();
}

bool valid_fp_suffix(std::string_view s) {
  return s.empty() || s == "f" || s == "F" || s == "l" || s == "L";
}

// Classifies a pp-number. Returns false if it is not a valid C constant.
bool classify_number(std::string_view s, TokenKind& kind) {
  std::size_t i = 0;
  if (s.size() > 1 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
    i = 2;
    bool digits = false, dot = false, exp = false;
    while (i < s.size() && is_hex(s[i])) { ++i; digits = true; }
    if (i < s.size() && s[i] == '.') {
      dot = true;
      ++i;
      while (i < s.size() && is_hex(s[i])) { ++i; digits = true; }
    }
    if (!digits) return false;
    if (i < s.size() && (s[i] == 'p' || s[i] == 'P')) {
      exp = true;
      ++i;
      if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
      const std::size_t d0 = i;
      while (i < s.size() && is_digit(s[i])) ++i;
      if (i == d0) return false;
    }
    if (dot && !exp) return false;
    if (exp) {
      kind = TokenKind::FpLiteral;
      return valid_fp_suffix(s.substr(i));
    }
    kind = TokenKind::IntLiteral;
    return valid_int_suffix(s.substr(i));
  }

  bool int_digits = false, frac_digits = false, dot = false, exp = false;
  while (i < s.size() && is_digit(s[i])) { ++i; int_digits = true; }
  if (i < s.size() && s[i] == '.') {
    dot = true;
    ++i;
    while (i < s.size() && is_digit(s[i])) { ++i; frac_digits = true; }
  }
  if (!int_digits && !frac_digits) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    exp = true;
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    const std::size_t d0 = i;
    while (i < s.size() && is_digit(s[i])) ++i;
    if (i == d0) return false;
  }
  if (dot || exp) {
    kind = TokenKind::FpLiteral;
    return valid_fp_suffix(s.substr(i));
  }
  kind = TokenKind::IntLiteral;
  return valid_int_suffix(s.substr(i));
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : src_(text) {}

  TokenStream run() {
    TokenStream out;
    bool line_start = true;
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '\n') {
        advance();
        line_start = true;
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
        continue;
      }
      if (starts_with("//")) {
        skip_line_comment();
        continue;
      }
      if (starts_with("/*")) {
        skip_block_comment();
        continue;
      }
      if (c == '#' && line_start) {
        out.push_back(directive());
        line_start = true;
        continue;
      }
      line_start = false;
      out.push_back(token());
    }
    return out;
  }

 private:
  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;

  bool starts_with(std::string_view s) const {
    return src_.substr(pos_, s.size()) == s;
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_line_comment() {
    while (pos_ < src_.size() && src_[pos_] != '\n') advance();
  }

  void skip_block_comment() {
    const int l = line_, c = col_;
    advance();
    advance();
    while (pos_ < src_.size() && !starts_with("*/")) advance();
    if (pos_ >= src_.size()) throw LexError("unterminated comment", l, c);
    advance();
    advance();
  }

  Token make(TokenKind kind, std::size_t start, int line, int col) const {
    return Token{kind, std::string(src_.substr(start, pos_ - start)), start,
                 line, col};
  }

  Token directive() {
    const std::size_t start = pos_;
    const int l = line_, c = col_;
    std::string text;
    bool pending_space = false;
    while (pos_ < src_.size() && src_[pos_] != '\n') {
      if (src_[pos_] == '\\' && pos_ + 1 < src_.size() &&
          src_[pos_ + 1] == '\n') {
        advance();
        advance();
        pending_space = true;
        continue;
      }
      if (starts_with("//")) {
        skip_line_comment();
        break;
      }
      if (starts_with("/*")) {
        skip_block_comment();
        pending_space = true;
        continue;
      }
      const char ch = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        pending_space = true;
      } else {
        if (pending_space && !text.empty()) text += ' ';
        pending_space = false;
        text += ch;
      }
      advance();
    }
    return Token{TokenKind::Directive, text, start, l, c};
  }

  Token token() {
    const std::size_t start = pos_;
    const int l = line_, c = col_;
    const char ch = src_[pos_];

    if (ident_start(ch)) {
      while (pos_ < src_.size() && ident_char(src_[pos_])) advance();
      Token t = make(TokenKind::Identifier, start, l, c);
      if (is_c_keyword(t.lexeme)) t.kind = TokenKind::Keyword;
      return t;
    }

    if (is_digit(ch) ||
        (ch == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      // pp-number: digits, letters, '.', '_' and signs after an exponent.
      while (pos_ < src_.size()) {
        const char d = src_[pos_];
        if (ident_char(d) || d == '.') {
          advance();
        } else if ((d == '+' || d == '-') && pos_ > start) {
          const char prev = src_[pos_ - 1];
          const bool hex = src_.substr(start, 2) == "0x" || src_.substr(start, 2) == "0X";
          if ((!hex && (prev == 'e' || prev == 'E')) || prev == 'p' || prev == 'P') {
            advance();
          } else {
            break;
          }
        } else {
          break;
        }
      }
      Token t = make(TokenKind::IntLiteral, start, l, c);
      if (!classify_number(t.lexeme, t.kind)) {
        throw LexError("malformed number '" + t.lexeme + "'", l, c);
      }
      return t;
    }

    if (ch == '"' || ch == '\'') {
      advance();
      while (pos_ < src_.size() && src_[pos_] != ch) {
        if (src_[pos_] == '\n') break;
        if (src_[pos_] == '\\' && pos_ + 1 < src_.size()) advance();
        advance();
      }
      if (pos_ >= src_.size() || src_[pos_] != ch) {
        throw LexError(ch == '"' ? "unterminated string literal"
                                 : "unterminated character literal",
                       l, c);
      }
      advance();
      return make(ch == '"' ? TokenKind::StringLiteral : TokenKind::CharLiteral,
                  start, l, c);
    }

    if (starts_with("...")) {
      advance();
      advance();
      advance();
      return make(TokenKind::Punctuation, start, l, c);
    }
    if (std::string_view("()[]{},;.").find(ch) != std::string_view::npos) {
      advance();
      return make(TokenKind::Punctuation, start, l, c);
    }
    for (std::string_view op : kOperators) {
      if (starts_with(op)) {
        for (std::size_t k = 0; k < op.size(); ++k) advance();
        return make(TokenKind::Operator, start, l, c);
      }
    }
    throw LexError(std::string("unexpected character '") + ch + "'", l, c);
  }
};

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Keyword: return "keyword";
    case TokenKind::IntLiteral: return "literal-int";
    case TokenKind::FpLiteral: return "literal-fp";
    case TokenKind::Operator: return "operator";
    case TokenKind::Punctuation: return "punctuation";
    case TokenKind::StringLiteral: return "literal-string";
    case TokenKind::CharLiteral: return "literal-char";
    case TokenKind::Directive: return "directive";
  }
  return "?";
}

bool is_c_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) != kKeywords.end();
}

bool is_type_keyword(std::string_view word) {
  return std::find(kTypeKeywords.begin(), kTypeKeywords.end(), word) !=
         kTypeKeywords.end();
}

TokenStream tokenize_c(std::string_view text) { return Lexer(text).run(); }

std::string join_lexemes(const TokenStream& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const bool dir = tokens[i].kind == TokenKind::Directive;
    if (i > 0) {
      const bool prev_dir = tokens[i - 1].kind == TokenKind::Directive;
      out += (dir || prev_dir) ? '\n' : ' ';
    }
    out += tokens[i].lexeme;
  }
  return out;
}

}  // namespace fpdiff::program
