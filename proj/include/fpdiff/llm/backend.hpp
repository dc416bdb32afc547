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

#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "fpdiff/llm/prompts.hpp"

namespace fpdiff::llm {

struct SamplingParams {
  double temperature = 1.2;
  double frequency_penalty = 0.5;
  double presence_penalty = 0.6;
  int max_tokens = 2048;
  std::optional<std::uint64_t> seed;  // forwarded to backends that support it
};

enum class BackendErrorKind { Timeout, Transport, Quota, Http, Protocol };

std::string_view to_string(BackendErrorKind k);

class BackendError : public Error {
 public:
  BackendError(BackendErrorKind kind, const std::string& what)
      : Error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}
  BackendErrorKind kind() const { return kind_; }

 private:
  BackendErrorKind kind_;
};

class LlmBackend {
 public:
  virtual ~LlmBackend() = default;
  virtual std::string name() const = 0;
  virtual std::string model() const = 0;
  // One attempt. Throws BackendError.
  virtual std::string complete(const Prompt& prompt, const SamplingParams& params,
                               std::chrono::milliseconds timeout) = 0;
};

struct RetryPolicy {
  int attempts = 3;
  std::chrono::milliseconds initial_backoff{2000};
  double multiplier = 2.0;
};

// Calls backend.complete until it succeeds or the attempts run out, sleeping
// initial_backoff * multiplier^k between attempts. Rethrows the last
// BackendError. Empty text counts as a Protocol failure.
std::string generate(LlmBackend& backend, const Prompt& prompt,
                     const SamplingParams& params, std::chrono::milliseconds timeout,
                     const RetryPolicy& retry = {});

// Number of HTTP requests issued by any HttpBackend in this process.
std::uint64_t network_request_count();

struct HttpBackendConfig {
  std::string endpoint;  // e.g. https://api.example.com/v1/chat/completions
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  std::string system_message = "You are an expert C programmer.";
};

// Chat-completion client. https endpoints need the library built with
// OpenSSL; otherwise complete() fails with a Transport error.
class HttpBackend : public LlmBackend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  std::string name() const override { return "http"; }
  std::string model() const override { return config_.model; }
  std::string complete(const Prompt& prompt, const SamplingParams& params,
                       std::chrono::milliseconds timeout) override;

 private:
  HttpBackendConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;
};

struct MockConfig {
  std::uint64_t seed = 0;
  double p_planted = 0.0;  // grammar prompts answered with the planted program
  double p_fenced = 0.2;
  double p_prose = 0.1;
  double p_invalid = 0.05;
};

// Offline backend. Output is a pure function of (prompt text, params.seed,
// config): grammar prompts get grammar-random programs or the planted
// program, mutation prompts get the parent with perturbed constants. Some
// responses are wrapped in fences or prose, or made structurally invalid.
class MockBackend : public LlmBackend {
 public:
  explicit MockBackend(MockConfig config) : config_(config) {}
  std::string name() const override { return "mock"; }
  std::string model() const override { return "mock-1"; }
  std::string complete(const Prompt& prompt, const SamplingParams& params,
                       std::chrono::milliseconds timeout) override;

 private:
  MockConfig config_;
};

// A program whose result changes under -O3 -ffast-math on gcc: it sums a
// reduction that gcc reassociates, then cancels a large constant that the
// fast-math folder removes.
std::string planted_program(Precision precision);

}  // namespace fpdiff::llm
