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
#include <vector>

#include "fpdiff/common.hpp"
#include "fpdiff/program/inputs.hpp"

namespace fpdiff::diffexec {

struct InputPolicy {
  double min_magnitude = 1e-6;
  double max_magnitude = 1e6;
  int int_min = 1;
  int int_max = 10;
  int array_length = 10;  // must cover the largest loop bound
};

// One fp value: magnitude log-uniform over [min, max], sign uniform. The
// decimal text is the shortest form that parses back to the sampled value
// at the given precision.
std::string sample_fp(Rng& rng, Precision precision, const InputPolicy& policy);

// Arguments for the comp accumulator followed by params, drawn from
// Rng(seed). Deterministic in (params, precision, seed, policy).
program::InputVector sample_inputs(const std::vector<program::Param>& params,
                                   Precision precision, std::uint64_t seed,
                                   const InputPolicy& policy = {});

}  // namespace fpdiff::diffexec
