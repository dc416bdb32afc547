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

#include "fpdiff/llm/sanitize.hpp"

#include "fpdiff/program/structure.hpp"

namespace fpdiff::llm {

namespace {

bool is_fence(std::string_view line) {
  const auto first = line.find_first_not_of(" \t");
  return first != std::string_view::npos && line.substr(first, 3) == "```";
}

// Lines strictly between the first fence and the next one. A missing
// closing fence keeps everything after the opening one.
std::string inside_fences(std::string_view text) {
  std::string out;
  bool inside = false;
  bool seen = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string_view line = text.substr(pos, nl - pos);
    if (is_fence(line)) {
      if (inside) break;
      inside = true;
      seen = true;
    } else if (inside) {
      out.append(line);
      out.push_back('\n');
    }
    pos = nl + 1;
  }
  return seen ? out : std::string(text);
}

}  // namespace

std::string strip_response(std::string_view raw) {
  std::string text = inside_fences(raw);
  const auto include = text.find("#include");
  if (include != std::string::npos) {
    const auto line_start = text.rfind('\n', include);
    text.erase(0, line_start == std::string::npos ? 0 : line_start + 1);
  }
  const auto last = text.rfind('}');
  if (last != std::string::npos) text.resize(last + 1);
  while (!text.empty() && (text.front() == '\n' || text.front() == ' ')) {
    text.erase(0, 1);
  }
  text.push_back('\n');
  return text;
}

program::ProgramSource sanitize_response(std::string_view raw, Precision precision) {
  program::ProgramSource src;
  src.text = strip_response(raw);
  src.precision = precision;
  const auto report = program::validate_structure(src);
  if (!report.ok()) throw RejectedProgram(report.violations.front().message);
  return src;
}

}  // namespace fpdiff::llm
