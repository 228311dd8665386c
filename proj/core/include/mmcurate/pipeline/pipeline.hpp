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

#include <cstddef>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/dataset/manifest.hpp"
#include "mmcurate/pipeline/checkpoint.hpp"
#include "mmcurate/pipeline/config.hpp"

namespace mmcurate::pipeline {

struct RunOptions {
  /// Stop once this stage has been committed for every pending item.
  std::optional<Stage> stop_after;
  /// Send quarantined items through their failing stage again.
  bool retry_quarantined = false;
  /// Apply the configured split when writing the manifest.
  bool split = true;
};

struct LevelCounts {
  std::size_t input = 0;
  std::size_t completed = 0;  // videos: expanded; episodes: assembled
  std::size_t discarded = 0;
  std::size_t quarantined = 0;
  std::size_t pending = 0;  // not yet terminal (stopped early)
  bool conserved() const { return completed + discarded + quarantined + pending == input; }
};

struct RunReport {
  std::string run_id;
  std::string config_digest;
  LevelCounts videos;
  LevelCounts episodes;
  std::map<std::string, std::size_t> discard_reasons;
  std::map<std::string, std::size_t> quarantine_reasons;  // keyed by stage
  std::map<std::string, std::size_t> instances;  // manifest rows
  std::size_t verifier_discards = 0;
  bool manifest_written = false;
  std::filesystem::path manifest_path;
};

nlohmann::json to_json(const RunReport& r);

/// Runs (or resumes) the pipeline in config.run_dir(). Completed items are
/// never reprocessed. Throws ResumeError on a config digest mismatch,
/// BackendUnavailable when a backend stays unreachable (completed work is
/// kept), and ConfigError/ValidationError for invalid inputs.
RunReport run_pipeline(const RunConfig& config, const backends::BackendSet& backends, const RunOptions& options = {});

/// Manifest records from every assembled episode in a run directory.
dataset::DatasetManifest collect_manifest(const RunConfig& config);

}  // namespace mmcurate::pipeline
