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

// Independent reference implementations used only by tests.

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace fpdiff::testing {

using boost::multiprecision::cpp_int;

struct ExactDecimal {
  bool negative = false;
  int exponent = 0;    // value = 0.d1d2...d16 * 10^(exponent + 1)
  std::string digits;  // exactly 16 characters
};

inline cpp_int pow10(int n) {
  cpp_int r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

// Correctly rounded (half to even) 16-significant-digit rendering of a finite
// double, computed with exact integer arithmetic on value = mantissa * 2^e.
inline ExactDecimal exact_decimal16(double v) {
  ExactDecimal out;
  const std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  out.negative = (bits >> 63) != 0;
  const int biased = static_cast<int>((bits >> 52) & 0x7ff);
  std::uint64_t frac = bits & ((std::uint64_t{1} << 52) - 1);
  if (biased == 0 && frac == 0) {
    out.digits.assign(16, '0');
    return out;
  }
  int e2;
  if (biased == 0) {
    e2 = -1074;
  } else {
    frac |= std::uint64_t{1} << 52;
    e2 = biased - 1075;
  }
  // value = num / den exactly.
  cpp_int num = frac;
  cpp_int den = 1;
  if (e2 >= 0) {
    num <<= e2;
  } else {
    den <<= -e2;
  }
  // Decimal exponent d with 10^d <= value < 10^(d+1).
  int d = static_cast<int>(std::floor(std::log10(std::fabs(v))));
  auto below = [&](int k) {  // value < 10^k
    return k >= 0 ? num < pow10(k) * den : num * pow10(-k) < den;
  };
  while (below(d)) --d;
  while (!below(d + 1)) ++d;

  // scaled = value * 10^(15 - d), in [10^15, 10^16).
  cpp_int sn = num;
  cpp_int sd = den;
  if (15 - d >= 0) {
    sn *= pow10(15 - d);
  } else {
    sd *= pow10(d - 15);
  }
  cpp_int q = sn / sd;
  const cpp_int r = sn % sd;
  const cpp_int twice = 2 * r;
  if (twice > sd || (twice == sd && (q % 2) != 0)) ++q;
  if (q == pow10(16)) {
    q = pow10(15);
    ++d;
  }
  out.exponent = d;
  out.digits = q.str();
  return out;
}

inline std::optional<int> reference_digit_difference(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) return std::nullopt;
  if (std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b)) return 0;
  const ExactDecimal x = exact_decimal16(a);
  const ExactDecimal y = exact_decimal16(b);
  if (x.negative != y.negative || x.exponent != y.exponent) return 16;
  int common = 0;
  while (common < 16 && x.digits[common] == y.digits[common]) ++common;
  return common == 16 ? 1 : 16 - common;
}

// Category name from the C library's classifier, independent of the bit
// decoding under test.
template <typename F>
const char* reference_category(F f) {
  switch (std::fpclassify(f)) {
    case FP_INFINITE: return std::signbit(f) ? "NEG_INF" : "POS_INF";
    case FP_NAN: return "NAN";
    case FP_ZERO: return "ZERO";
    default: return "REAL";
  }
}

}  // namespace fpdiff::testing
