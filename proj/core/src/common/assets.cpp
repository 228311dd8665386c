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

#include "mmcurate/common/assets.hpp"

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/text.hpp"

namespace mmcurate {

std::string_view asset(std::string_view name) {
  auto found = find_asset(name);
  if (!found) throw ConfigError("missing embedded asset: " + std::string(name));
  return *found;
}

std::vector<std::string> parse_term_lines(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    auto line = text::trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') out.push_back(std::move(line));
    pos = end + 1;
  }
  return out;
}

}  // namespace mmcurate
