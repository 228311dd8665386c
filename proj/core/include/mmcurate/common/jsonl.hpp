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
#include <fstream>
#include <mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmcurate {

using Json = nlohmann::json;

/// Reads a line-delimited JSON file; blank lines are skipped. Throws
/// ValidationError with the offending line number on bad input.
std::vector<Json> read_jsonl(const std::filesystem::path& path);

/// Writes records one per line with sorted keys, replacing the file atomically.
void write_jsonl(const std::filesystem::path& path, const std::vector<Json>& records);

std::string read_file(const std::filesystem::path& path);
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

Json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const Json& value);

/// Append-only JSONL writer; every line is flushed so a killed process
/// leaves a readable prefix.
class JsonlAppender {
 public:
  explicit JsonlAppender(const std::filesystem::path& path);

  void append(const Json& record);
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::mutex mutex_;
};

}  // namespace mmcurate
