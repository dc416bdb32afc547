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

#include "fpdiff/diffexec/fp.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>

namespace fpdiff::diffexec {

std::string_view to_string(Category c) {
  switch (c) {
    case Category::Real: return "REAL";
    case Category::Zero: return "ZERO";
    case Category::PosInf: return "POS_INF";
    case Category::NegInf: return "NEG_INF";
    case Category::NaN: return "NAN";
  }
  return "?";
}

Category parse_category(std::string_view text) {
  for (Category c : {Category::Real, Category::Zero, Category::PosInf,
                     Category::NegInf, Category::NaN}) {
    if (to_string(c) == text) return c;
  }
  throw Error("unknown category '" + std::string(text) + "'");
}

Category classify(std::uint64_t bits, Precision precision) {
  std::uint64_t sign, exponent, mantissa, exp_all_ones;
  if (precision == Precision::FP64) {
    sign = bits >> 63;
    exponent = (bits >> 52) & 0x7ff;
    mantissa = bits & ((std::uint64_t{1} << 52) - 1);
    exp_all_ones = 0x7ff;
  } else {
    bits &= 0xffffffffu;
    sign = bits >> 31;
    exponent = (bits >> 23) & 0xff;
    mantissa = bits & ((std::uint64_t{1} << 23) - 1);
    exp_all_ones = 0xff;
  }
  if (exponent == exp_all_ones) {
    if (mantissa != 0) return Category::NaN;
    return sign ? Category::NegInf : Category::PosInf;
  }
  if (exponent == 0 && mantissa == 0) return Category::Zero;
  return Category::Real;
}

std::uint64_t parse_output(std::string_view text, Precision precision) {
  const std::size_t width = static_cast<std::size_t>(hex_width(precision));
  std::string_view line = text;
  if (!line.empty() && line.back() == '\n') line.remove_suffix(1);
  if (line.size() != width) {
    throw MalformedOutput("expected " + std::to_string(width) +
                          " hex characters on one line");
  }
  std::uint64_t bits = 0;
  for (char c : line) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else {
      throw MalformedOutput("non lowercase-hex character in output");
    }
    bits = (bits << 4) | static_cast<std::uint64_t>(v);
  }
  return bits;
}

std::string format_bits(std::uint64_t bits, Precision precision) {
  char buf[17];
  if (precision == Precision::FP64) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(bits));
  } else {
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(bits & 0xffffffffu));
  }
  return buf;
}

double decode_value(std::uint64_t bits, Precision precision) {
  if (precision == Precision::FP64) return std::bit_cast<double>(bits);
  return static_cast<double>(
      std::bit_cast<float>(static_cast<std::uint32_t>(bits & 0xffffffffu)));
}

std::string KindPair::label() const {
  return "{" + std::string(to_string(first)) + ", " +
         std::string(to_string(second)) + "}";
}

namespace {

struct Decimal16 {
  bool negative;
  int exponent;
  char digits[17];
};

// %.15e gives 16 significant digits with glibc's exact, correctly rounded
// conversion.
Decimal16 render16(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15e", v);
  Decimal16 d{};
  const char* p = buf;
  d.negative = *p == '-';
  if (d.negative) ++p;
  int n = 0;
  for (; *p && *p != 'e'; ++p) {
    if (*p != '.') d.digits[n++] = *p;
  }
  d.digits[n] = '\0';
  d.exponent = std::atoi(p + 1);
  return d;
}

}  // namespace

std::optional<int> digit_difference(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return std::nullopt;
  if (std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b)) return 0;
  const Decimal16 da = render16(a);
  const Decimal16 db = render16(b);
  if (da.negative != db.negative || da.exponent != db.exponent) return 16;
  int common = 0;
  while (common < 16 && da.digits[common] == db.digits[common]) ++common;
  return common == 16 ? 1 : 16 - common;
}

}  // namespace fpdiff::diffexec
