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

#include <string>
#include <string_view>

#include "fpdiff/program/ast.hpp"

namespace fpdiff::llm {

class RejectedProgram : public Error {
 public:
  explicit RejectedProgram(std::string reason)
      : Error("rejected program: " + reason), reason_(std::move(reason)) {}
  const std::string& reason() const { return reason_; }

 private:
  std::string reason_;
};

// Removes Markdown fences, text before the first #include and text after
// the last closing brace.
std::string strip_response(std::string_view raw);

// strip_response, then validate_structure; the first violation becomes the
// rejection reason. Throws RejectedProgram.
program::ProgramSource sanitize_response(std::string_view raw, Precision precision);

}  // namespace fpdiff::llm
