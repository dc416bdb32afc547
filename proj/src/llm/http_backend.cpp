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

#include <cstdlib>
#include <regex>

#include "httplib.h"
#include "json.hpp"

#include "fpdiff/llm/backend.hpp"

namespace fpdiff::llm {

namespace {

std::atomic<std::uint64_t> g_requests{0};

}  // namespace

std::uint64_t network_request_count() { return g_requests.load(); }

HttpBackend::HttpBackend(HttpBackendConfig config) : config_(std::move(config)) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.endpoint, m, url)) {
    throw ConfigError("backend endpoint '" + config_.endpoint +
                      "' is not an http(s) URL");
  }
  origin_ = m[1].str();
  path_ = m[2].matched ? m[2].str() : "/";
  if (config_.model.empty()) throw ConfigError("backend model must be set");
}

std::string HttpBackend::complete(const Prompt& prompt, const SamplingParams& params,
                                  std::chrono::milliseconds timeout) {
  nlohmann::json body = {
      {"model", config_.model},
      {"messages",
       {{{"role", "system"}, {"content", config_.system_message}},
        {{"role", "user"}, {"content", prompt.text}}}},
      {"temperature", params.temperature},
      {"frequency_penalty", params.frequency_penalty},
      {"presence_penalty", params.presence_penalty},
      {"max_tokens", params.max_tokens},
  };
  if (params.seed) body["seed"] = *params.seed;

  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  httplib::Client client(origin_);
  if (!client.is_valid()) {
    throw BackendError(BackendErrorKind::Transport,
                       "unsupported endpoint " + origin_ +
                           " (https needs a build with OpenSSL)");
  }
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(timeout);
  const auto usecs =
      std::chrono::duration_cast<std::chrono::microseconds>(timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  ++g_requests;
  const auto res = client.Post(path_, headers, body.dump(), "application/json");
  if (!res) {
    const auto err = res.error();
    const bool timed_out =
        err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
    throw BackendError(timed_out ? BackendErrorKind::Timeout : BackendErrorKind::Transport,
                       httplib::to_string(err));
  }
  if (res->status == 429) {
    throw BackendError(BackendErrorKind::Quota, "HTTP 429: " + res->body.substr(0, 200));
  }
  if (res->status < 200 || res->status >= 300) {
    throw BackendError(BackendErrorKind::Http, "HTTP " + std::to_string(res->status) +
                                                   ": " + res->body.substr(0, 200));
  }
  try {
    const auto j = nlohmann::json::parse(res->body);
    return j.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw BackendError(BackendErrorKind::Protocol,
                       std::string("unexpected response body: ") + e.what());
  }
}

}  // namespace fpdiff::llm
