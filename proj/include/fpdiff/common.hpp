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
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fpdiff {

enum class Precision { FP32, FP64 };

std::string_view to_string(Precision p);
Precision parse_precision(std::string_view text);

// C spelling of the floating-point type for a precision.
inline std::string_view fp_type_name(Precision p) {
  return p == Precision::FP32 ? "float" : "double";
}

// Width of the hex output contract: 8 chars for FP32, 16 for FP64.
inline int hex_width(Precision p) { return p == Precision::FP32 ? 8 : 16; }

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view data);

// Mixes a base seed with a stream tag and an index into an independent seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag,
                          std::uint64_t index);

// Deterministic random source. All draws are built from raw mt19937_64
// output so sequences are identical across standard library vendors.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

  // Uniform real in [0, 1).
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& items) {
    return items[static_cast<std::size_t>(
        uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

// Runs fn(i) for i in [0, count) on up to `workers` threads. Results are
// written by index, so the caller sees a deterministic order.
void parallel_for(std::size_t count, std::size_t workers,
                  const std::function<void(std::size_t)>& fn);

std::size_t default_worker_count();

// Writes a file atomically (temp file + rename).
void write_file_atomic(const std::string& path, std::string_view contents);
void write_file(const std::string& path, std::string_view contents);
std::string read_file(const std::string& path);

}  // namespace fpdiff
