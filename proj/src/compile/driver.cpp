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

#include "fpdiff/compile/driver.hpp"

#include <cstring>
#include <filesystem>

#include "fpdiff/subprocess.hpp"

namespace fpdiff::compile {

namespace fs = std::filesystem;

std::string_view to_string(CompilerRole r) {
  return r == CompilerRole::Host ? "host" : "device";
}

CompilerRole parse_role(std::string_view text) {
  if (text == "host") return CompilerRole::Host;
  if (text == "device") return CompilerRole::Device;
  throw ConfigError("unknown compiler role '" + std::string(text) + "'");
}

std::vector<std::string> CompileJob::command() const {
  std::vector<std::string> argv = {compiler.path};
  for (auto& f : flags_for(compiler.family, level)) argv.push_back(std::move(f));
  argv.push_back(source.string());
  argv.push_back("-o");
  argv.push_back(output.string());
  if (compiler.role == CompilerRole::Host) argv.push_back("-lm");
  return argv;
}

std::vector<CompileJob> expand_matrix(const std::string& program_id,
                                      const ProgramSources& sources,
                                      const std::vector<CompilerSpec>& compilers,
                                      const std::vector<OptLevel>& levels,
                                      const fs::path& build_root) {
  if (compilers.size() < 2) {
    throw ConfigError("differential testing needs at least two compilers");
  }
  std::vector<CompileJob> jobs;
  jobs.reserve(compilers.size() * levels.size());
  for (const auto& c : compilers) {
    const bool device = c.role == CompilerRole::Device;
    if (device && !sources.cuda) {
      throw ConfigError("device compiler '" + c.name +
                        "' configured but no CUDA translation is available");
    }
    for (OptLevel l : levels) {
      CompileJob job;
      job.program_id = program_id;
      job.compiler = c;
      job.level = l;
      job.source = device ? *sources.cuda : sources.c;
      job.output = build_root / program_id /
                   (c.name + "-" + std::string(to_string(l)));
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

CompileOutcome compile(const CompileJob& job, std::chrono::milliseconds timeout) {
  std::error_code ec;
  fs::create_directories(job.output.parent_path(), ec);
  fs::remove(job.output, ec);
  const ProcessResult r = run_process(job.command(), timeout, 256u << 10);
  if (!r.spawned) {
    return CompileFailure{"cannot execute " + job.compiler.path + ": " +
                              std::strerror(r.spawn_errno),
                          -1, r.duration};
  }
  if (r.timed_out) return CompileTimeout{r.duration};
  if (r.exit_code == 0 && r.term_signal == 0 && fs::exists(job.output)) {
    return CompileSuccess{job.output, r.duration};
  }
  std::string diag = r.err;
  if (diag.empty()) diag = r.out;
  if (diag.empty()) diag = "compiler exited without producing " + job.output.string();
  return CompileFailure{diag, r.term_signal ? 128 + r.term_signal : r.exit_code,
                        r.duration};
}

std::vector<CompileOutcome> compile_all(const std::vector<CompileJob>& jobs,
                                        std::chrono::milliseconds timeout,
                                        std::size_t workers) {
  std::vector<CompileOutcome> out(jobs.size());
  parallel_for(jobs.size(), workers,
               [&](std::size_t i) { out[i] = compile(jobs[i], timeout); });
  return out;
}

std::string probe_toolchain(const CompilerSpec& spec) {
  const ProcessResult r = run_process({spec.path, "--version"},
                                      std::chrono::seconds(30));
  if (!r.spawned) {
    throw ToolchainMissing("compiler '" + spec.name + "' not found at '" +
                           spec.path + "'");
  }
  if (!r.exited_ok()) {
    throw ToolchainMissing("'" + spec.path + " --version' failed");
  }
  std::string banner = r.out.empty() ? r.err : r.out;
  while (!banner.empty() && (banner.back() == '\n' || banner.back() == ' ')) {
    banner.pop_back();
  }
  // nvcc puts the release number on its last line; gcc and clang on the first.
  if (spec.family == CompilerFamily::NvccLike) {
    const auto nl = banner.rfind('\n');
    if (nl != std::string::npos) banner.erase(0, nl + 1);
  } else {
    const auto nl = banner.find('\n');
    if (nl != std::string::npos) banner.resize(nl);
  }
  return banner;
}

void check_device_available() {
  if (!fs::exists("/dev/nvidia0") && !fs::exists("/dev/nvidiactl")) {
    throw ToolchainMissing("a device compiler is configured but no CUDA device is present");
  }
}

}  // namespace fpdiff::compile
