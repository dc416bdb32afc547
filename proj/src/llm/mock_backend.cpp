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

#include <regex>

#include "fpdiff/llm/backend.hpp"
#include "fpdiff/program/generator.hpp"
#include "fpdiff/program/render.hpp"

namespace fpdiff::llm {

std::string planted_program(Precision precision) {
  const std::string fp(fp_type_name(precision));
  const std::string f = precision == Precision::FP32 ? "F" : "";
  const std::string big = precision == Precision::FP32 ? "1.0E8F" : "1.0E16";
  std::string text = "#include <stdio.h>\n#include <stdlib.h>\n#include <math.h>\n\n";
  text += "void compute(" + fp + " comp, " + fp + " var_1, " + fp + "* var_2, " + fp +
          "* result) {\n";
  text += "  for (int i = 0; i < 10; ++i) {\n";
  text += "    comp += var_2[i] * var_1;\n";
  text += "  }\n";
  text += "  comp = (comp + " + big + ") - " + big + " + var_1;\n";
  text += "  comp = comp / var_1 + comp / 3.0E0" + f + ";\n";
  text += "  *result = comp;\n";
  text += "}\n\n";
  text += program::render_main(precision,
                               {{program::ParamKind::Scalar, "var_1"},
                                {program::ParamKind::Pointer, "var_2"}},
                               program::Dialect::C);
  return text;
}

namespace {

constexpr std::pair<std::string_view, std::string_view> kSwaps[] = {
    {"sin", "cos"}, {"cos", "sin"}, {"exp", "tanh"}, {"tanh", "exp"},
    {"sqrt", "fabs"}, {"fabs", "sqrt"}, {"log", "exp"}, {"floor", "fabs"}};

// New value for an fp literal such as 3.25E1 or 3.25E1F, same spelling style.
std::string perturb_literal(Rng& rng, const std::string& lit, bool fp32) {
  const double v = std::strtod(lit.c_str(), nullptr);
  const double scaled = v * (0.5 + 1.5 * rng.uniform01());
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4E", scaled);
  return std::string(buf) + (fp32 ? "F" : "");
}

std::string mutate(Rng& rng, const std::string& parent, bool fp32) {
  const auto begin = parent.find("void compute");
  const auto end = parent.find("int main");
  if (begin == std::string::npos || end == std::string::npos || end < begin) {
    return parent;
  }
  std::string compute = parent.substr(begin, end - begin);

  static const std::regex literal(R"(\b[0-9]+\.[0-9]+(?:[eE][-+]?[0-9]+)?[fF]?)");
  std::string out;
  auto it = std::sregex_iterator(compute.begin(), compute.end(), literal);
  std::size_t last = 0;
  for (; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(compute, last, static_cast<std::size_t>(m.position()) - last);
    out += rng.bernoulli(0.5) ? perturb_literal(rng, m.str(), fp32) : m.str();
    last = static_cast<std::size_t>(m.position() + m.length());
  }
  out.append(compute, last);

  if (rng.bernoulli(0.3)) {
    const auto& [from, to] = kSwaps[rng.uniform_int(0, std::size(kSwaps) - 1)];
    const std::string call = std::string(from) + (fp32 ? "f(" : "(");
    const auto pos = out.find(call);
    if (pos != std::string::npos && (pos == 0 || !std::isalnum(static_cast<unsigned char>(out[pos - 1])))) {
      out.replace(pos, from.size(), to);
    }
  }
  return parent.substr(0, begin) + out + parent.substr(end);
}

std::string make_invalid(Rng& rng, const std::string& text) {
  switch (rng.uniform_int(0, 2)) {
    case 0: return text.substr(0, text.find("int main"));
    case 1: return "#include <string.h>\n" + text;
    default:
      return text + "\nstatic double helper(double x) { return x * 2.0; }\n";
  }
}

}  // namespace

std::string MockBackend::complete(const Prompt& prompt, const SamplingParams& params,
                                  std::chrono::milliseconds) {
  Rng rng(derive_seed(config_.seed ^ fnv1a64(prompt.text), "mock",
                      params.seed.value_or(0)));
  const bool fp32 = prompt.precision == Precision::FP32;
  std::string text;
  if (prompt.strategy == Strategy::FeedbackMutation) {
    const auto parent = extract_parent(prompt.text);
    if (!parent) throw BackendError(BackendErrorKind::Protocol, "mutation prompt without parent");
    text = mutate(rng, *parent, fp32);
  } else if (rng.bernoulli(config_.p_planted)) {
    text = planted_program(prompt.precision);
  } else {
    program::GenConfig cfg;
    cfg.precision = prompt.precision;
    text = program::generate_random_program(rng.next_u64(), cfg).text;
  }

  if (rng.bernoulli(config_.p_invalid)) text = make_invalid(rng, text);
  if (rng.bernoulli(config_.p_fenced)) {
    text = "```c\n" + text + "```\n";
  } else if (rng.bernoulli(config_.p_prose)) {
    text = "Sure! Here is a program that fits the requirements:\n\n" + text +
           "\nThe compute function updates comp and main prints the result.\n";
  }
  return text;
}

}  // namespace fpdiff::llm
