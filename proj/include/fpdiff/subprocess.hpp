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

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

namespace fpdiff {

struct ProcessResult {
  bool spawned = false;
  int spawn_errno = 0;
  bool timed_out = false;
  int exit_code = -1;    // valid when exited normally
  int term_signal = 0;   // nonzero when killed by a signal
  std::string out;
  std::string err;
  std::chrono::nanoseconds duration{0};

  bool exited_ok() const {
    return spawned && !timed_out && term_signal == 0 && exit_code == 0;
  }
};

// Runs argv[0] (PATH lookup) with an argument vector, no shell. stdin is
// /dev/null. The child gets its own process group; on timeout the whole
// group is killed. Captured output is truncated at max_capture bytes.
ProcessResult run_process(const std::vector<std::string>& argv,
                          std::chrono::milliseconds timeout,
                          std::size_t max_capture = 1u << 20);

}  // namespace fpdiff
