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

#include "fpdiff/llm/backend.hpp"

#include <cmath>
#include <thread>

namespace fpdiff::llm {

std::string_view to_string(BackendErrorKind k) {
  switch (k) {
    case BackendErrorKind::Timeout: return "timeout";
    case BackendErrorKind::Transport: return "transport";
    case BackendErrorKind::Quota: return "quota";
    case BackendErrorKind::Http: return "http";
    case BackendErrorKind::Protocol: return "protocol";
  }
  return "?";
}

std::string generate(LlmBackend& backend, const Prompt& prompt,
                     const SamplingParams& params, std::chrono::milliseconds timeout,
                     const RetryPolicy& retry) {
  if (timeout.count() <= 0) throw std::invalid_argument("timeout must be positive");
  if (retry.attempts < 1) throw std::invalid_argument("retry attempts must be >= 1");
  double backoff_ms = static_cast<double>(retry.initial_backoff.count());
  for (int attempt = 1;; ++attempt) {
    try {
      std::string text = backend.complete(prompt, params, timeout);
      if (text.empty()) throw BackendError(BackendErrorKind::Protocol, "empty completion");
      return text;
    } catch (const BackendError&) {
      if (attempt >= retry.attempts) throw;
    }
    std::this_thread::sleep_for(
        std::chrono::milliseconds(static_cast<std::int64_t>(std::llround(backoff_ms))));
    backoff_ms *= retry.multiplier;
  }
}

}  // namespace fpdiff::llm
