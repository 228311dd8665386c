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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mmcurate {

/// Build-time embedded assets (prompt templates, few-shot fixtures,
/// vocabularies), keyed by path relative to core/assets.
std::optional<std::string_view> find_asset(std::string_view name);
std::vector<std::string_view> asset_names();

/// Like find_asset but throws ConfigError when missing.
std::string_view asset(std::string_view name);

/// Non-empty, non-comment lines of a term-per-line asset or file.
std::vector<std::string> parse_term_lines(std::string_view text);

}  // namespace mmcurate
