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

#include "fpdiff/diffexec/execute.hpp"

#include <cstring>

#include "fpdiff/subprocess.hpp"

namespace fpdiff::diffexec {

std::string ConfigId::label() const {
  return compiler + "@" + std::string(compile::to_string(level));
}

FpObservation observe(std::uint64_t bits, Precision precision, ConfigId config) {
  return {bits, decode_value(bits, precision), classify(bits, precision),
          std::move(config)};
}

std::string describe(const ExecutionOutcome& outcome) {
  if (const auto* c = std::get_if<ExecCrash>(&outcome)) {
    if (c->signal != 0) return "crash (signal " + std::to_string(c->signal) + ")";
    if (!c->detail.empty()) return "crash (" + c->detail + ")";
    return "crash (exit " + std::to_string(c->exit_code) + ")";
  }
  if (std::holds_alternative<ExecTimeout>(outcome)) return "timeout";
  if (std::holds_alternative<ExecMalformed>(outcome)) return "malformed output";
  return "";
}

ExecutionOutcome execute(const std::filesystem::path& binary, const ConfigId& config,
                         const program::InputVector& inputs, Precision precision,
                         std::chrono::milliseconds timeout) {
  std::vector<std::string> argv = {binary.string()};
  for (auto& a : inputs.to_argv()) argv.push_back(std::move(a));
  const ProcessResult r = run_process(argv, timeout, 4096);
  if (!r.spawned) {
    return ExecCrash{-1, 0, std::string("spawn failed: ") + std::strerror(r.spawn_errno)};
  }
  if (r.timed_out) return ExecTimeout{timeout};
  if (r.term_signal != 0) return ExecCrash{-1, r.term_signal, ""};
  if (r.exit_code != 0) return ExecCrash{r.exit_code, 0, ""};
  try {
    return ExecOk{observe(parse_output(r.out, precision), precision, config), r.duration};
  } catch (const MalformedOutput&) {
    return ExecMalformed{r.out};
  }
}

}  // namespace fpdiff::diffexec
