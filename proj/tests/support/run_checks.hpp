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

#include <filesystem>
#include <string>
#include <vector>

namespace mmcurate::testing {

/// Whitespace runs collapse to one space and curly quotes fold to straight
/// ones on both sides before a plain substring search.
bool loose_substring(const std::string& needle, const std::string& haystack);

/// Manifest invariants of a finished run directory. Returns one message per
/// violation.
std::vector<std::string> check_run_invariants(const std::filesystem::path& run_dir);

/// Differences between the run's outcomes and the corpus expected.json.
std::vector<std::string> check_expected_outcomes(const std::filesystem::path& run_dir,
                                                 const std::filesystem::path& expected_json);

/// SHA-256 over every regular file below `dir` (relative path and content),
/// skipping names listed in `ignore`.
std::string tree_digest(const std::filesystem::path& dir, const std::vector<std::string>& ignore = {});

}  // namespace mmcurate::testing
