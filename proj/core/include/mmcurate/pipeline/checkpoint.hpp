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
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmcurate {
class JsonlAppender;
}

namespace mmcurate::pipeline {

enum class Stage { kIngested, kSegmented, kRefined, kSeparated, kScored, kSynthesized, kVerified, kAssembled };

std::string_view to_string(Stage s);
Stage stage_from_string(std::string_view s);
std::vector<Stage> all_stages();

/// kOk: the stage completed and the item moves on. kExpanded: a video item
/// whose episodes continue as their own items. The rest are terminal.
enum class Status { kOk, kExpanded, kDiscarded, kQuarantined };

std::string_view to_string(Status s);
Status status_from_string(std::string_view s);

struct CheckpointEntry {
  std::string item_id;
  Stage stage = Stage::kIngested;
  Status status = Status::kOk;
  /// Artifact digest: the item state after `stage`, or for a quarantine
  /// the state the failing stage started from (empty before ingest).
  std::string state;
  std::string reason;
  int attempts = 0;
  std::vector<std::string> children;
};

void to_json(nlohmann::json& j, const CheckpointEntry& e);
void from_json(const nlohmann::json& j, CheckpointEntry& e);

/// Run directory layout:
///   run.json           run id and config digest
///   checkpoint.jsonl   append-only stage completions
///   artifacts/<aa>/<digest>.json   content-addressed item states
class RunStore {
 public:
  explicit RunStore(std::filesystem::path dir);
  ~RunStore();
  RunStore(const RunStore&) = delete;
  RunStore& operator=(const RunStore&) = delete;

  /// Creates the run or reopens it. Throws ResumeError when an existing
  /// run was produced by a different config digest.
  void open(const std::string& run_id, const std::string& config_digest);

  const std::filesystem::path& dir() const { return dir_; }
  bool exists() const;

  std::string put(const nlohmann::json& state);
  nlohmann::json get(const std::string& digest) const;

  void commit(const CheckpointEntry& entry);
  std::vector<CheckpointEntry> entries() const;
  /// Last entry per item id.
  std::map<std::string, CheckpointEntry> latest() const;

 private:
  std::filesystem::path dir_;
  std::unique_ptr<JsonlAppender> log_;
};

}  // namespace mmcurate::pipeline
