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

#include "fpdiff/diffexec/inputs.hpp"

#include <charconv>
#include <cmath>
#include <string>

namespace fpdiff::diffexec {

std::string sample_fp(Rng& rng, Precision precision, const InputPolicy& policy) {
  const double lo = std::log(policy.min_magnitude);
  const double hi = std::log(policy.max_magnitude);
  double v = std::exp(lo + (hi - lo) * rng.uniform01());
  if (rng.bernoulli(0.5)) v = -v;
  char buf[64];
  std::to_chars_result r;
  if (precision == Precision::FP32) {
    r = std::to_chars(buf, buf + sizeof buf, static_cast<float>(v));
  } else {
    r = std::to_chars(buf, buf + sizeof buf, v);
  }
  return std::string(buf, r.ptr);
}

program::InputVector sample_inputs(const std::vector<program::Param>& params,
                                   Precision precision, std::uint64_t seed,
                                   const InputPolicy& policy) {
  using program::ParamKind;
  if (policy.array_length < 1 || policy.int_min > policy.int_max ||
      !(policy.min_magnitude > 0) || policy.min_magnitude > policy.max_magnitude) {
    throw ConfigError("invalid input policy");
  }
  Rng rng(seed);
  program::InputVector iv;
  iv.rng_seed = seed;
  iv.values.push_back({std::string(program::kAccumulator), ParamKind::Scalar,
                       {sample_fp(rng, precision, policy)}});
  for (const auto& p : params) {
    program::InputValue v{p.name, p.kind, {}};
    switch (p.kind) {
      case ParamKind::Int:
        v.values.push_back(std::to_string(rng.uniform_int(policy.int_min, policy.int_max)));
        break;
      case ParamKind::Scalar:
        v.values.push_back(sample_fp(rng, precision, policy));
        break;
      case ParamKind::Pointer:
        for (int i = 0; i < policy.array_length; ++i) {
          v.values.push_back(sample_fp(rng, precision, policy));
        }
        break;
    }
    iv.values.push_back(std::move(v));
  }
  return iv;
}

}  // namespace fpdiff::diffexec
