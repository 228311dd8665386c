// Copyright 2026 The mmcurate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmcurate/synthesis/json_extract.hpp"

#include <cctype>
#include <string>

#include "mmcurate/common/error.hpp"

namespace mmcurate::synthesis {

namespace {

// Index one past the bracket matching text[start], or npos if unbalanced.
// Brackets inside string literals are ignored.
std::size_t balanced_end(std::string_view text, std::size_t start) {
  std::string stack;
  bool in_string = false;
  bool escaped = false;
  for (std::size_t i = start; i < text.size(); ++i) {
    char c = text[i];
    if (in_string) {
      if (escaped) {
        escaped = false;
      } else if (c == '\\') {
        escaped = true;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    switch (c) {
      case '"': in_string = true; break;
      case '{': stack.push_back('}'); break;
      case '[': stack.push_back(']'); break;
      case '}':
      case ']':
        if (stack.empty() || stack.back() != c) return std::string_view::npos;
        stack.pop_back();
        if (stack.empty()) return i + 1;
        break;
      default: break;
    }
  }
  return std::string_view::npos;
}

std::string strip_fences(std::string_view text) {
  // Drops ``` fence lines (with or without a language tag); content between
  // fences is kept in place.
  std::string out;
  out.reserve(text.size());
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto fence = text.find("```", pos);
    if (fence == std::string_view::npos) {
      out.append(text.substr(pos));
      break;
    }
    out.append(text.substr(pos, fence - pos));
    auto eol = text.find('\n', fence);
    auto tag_end = fence + 3;
    while (tag_end < text.size() && (std::isalnum(static_cast<unsigned char>(text[tag_end])) != 0)) ++tag_end;
    // An opening fence swallows its language tag; a closing fence just the backticks.
    pos = (eol != std::string_view::npos && tag_end >= eol) ? eol + 1 : tag_end;
    out.push_back('\n');
  }
  return out;
}

}  // namespace

nlohmann::json parse_llm_json(std::string_view text, JsonShape shape) {
  const char open = shape == JsonShape::kObject ? '{' : '[';
  const std::string cleaned = strip_fences(text);
  for (auto start = cleaned.find(open); start != std::string::npos; start = cleaned.find(open, start + 1)) {
    auto end = balanced_end(cleaned, start);
    if (end == std::string_view::npos) continue;
    auto value = nlohmann::json::parse(cleaned.begin() + static_cast<std::ptrdiff_t>(start),
                                       cleaned.begin() + static_cast<std::ptrdiff_t>(end), nullptr, false);
    if (value.is_discarded()) continue;
    if ((shape == JsonShape::kObject && value.is_object()) || (shape == JsonShape::kArray && value.is_array()))
      return value;
  }
  throw ParseError(std::string("no balanced JSON ") + (shape == JsonShape::kObject ? "object" : "array") +
                   " in model output");
}

}  // namespace mmcurate::synthesis
