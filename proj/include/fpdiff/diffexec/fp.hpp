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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "fpdiff/common.hpp"

namespace fpdiff::diffexec {

// The five output classes. REAL covers normals and subnormals.
enum class Category { Real, Zero, PosInf, NegInf, NaN };

std::string_view to_string(Category c);
Category parse_category(std::string_view text);

// Total over every bit pattern. FP32 patterns live in the low 32 bits.
Category classify(std::uint64_t bits, Precision precision);

inline bool is_finite(Category c) {
  return c == Category::Real || c == Category::Zero;
}

class MalformedOutput : public Error {
 public:
  using Error::Error;
};

// Accepts exactly one line of 16 (FP64) or 8 (FP32) lowercase hex digits,
// optionally terminated by a single newline.
std::uint64_t parse_output(std::string_view text, Precision precision);

// Zero-padded lowercase hex, the inverse of parse_output.
std::string format_bits(std::uint64_t bits, Precision precision);

double decode_value(std::uint64_t bits, Precision precision);

// Unordered pair of categories, stored with first <= second.
struct KindPair {
  Category first = Category::Real;
  Category second = Category::Real;

  static KindPair of(Category a, Category b) {
    return a <= b ? KindPair{a, b} : KindPair{b, a};
  }
  std::string label() const;  // "{REAL, ZERO}"
  auto operator<=>(const KindPair&) const = default;
};

// Number of leading significant decimal digits (out of 16) on which two
// finite values disagree. Each value is rendered as a correctly rounded
// 16-significant-digit scientific string; differing signs or decimal
// exponents give 16, otherwise 16 minus the common digit prefix. Bitwise
// unequal values whose 16-digit renderings coincide count as 1, and
// bitwise-equal values give 0. Returns nullopt when either value is not finite.
std::optional<int> digit_difference(double a, double b);

}  // namespace fpdiff::diffexec
