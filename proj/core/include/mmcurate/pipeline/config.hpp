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

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/structured.hpp"
#include "mmcurate/curation/curation.hpp"
#include "mmcurate/dataset/split.hpp"
#include "mmcurate/refiner/refiner.hpp"
#include "mmcurate/segmenter/segmenter.hpp"

namespace mmcurate::pipeline {

/// Where each backend comes from. Mock file paths are resolved against the
/// config file's directory.
struct BackendConfig {
  bool mock = false;
  std::filesystem::path mock_chat;  // ChatFixtures JSON
  std::filesystem::path mock_vision;  // VisionFixtures JSON
  std::filesystem::path mock_transcripts;  // audio_ref -> segments
  int embedding_dim = 16;
  /// Remote endpoints by name: chat, cot_chat, eval_chat, sidecar.
  std::map<std::string, std::string> urls;
  std::string chat_model = "default";
  std::string cot_model;  // falls back to chat_model
  std::string eval_model;
  std::string api_key_env;  // name of the variable holding the bearer token
};

struct RunConfig {
  std::filesystem::path base_dir;  // directory of the config file
  std::filesystem::path metadata;  // line-delimited VideoMeta
  std::optional<std::filesystem::path> keywords;  // term-per-line; builtin when absent
  double min_duration_s = 60.0;
  segmenter::SegmenterConfig segmenter;
  refiner::PromptDictionaries dictionaries = refiner::PromptDictionaries::builtin();
  std::uint8_t mask_value = 0;
  curation::GateConfig gates;
  backends::GenerationConfig generation;
  double cot_temperature = 0.4;
  backends::RetryPolicy retry;
  std::optional<dataset::SplitSpec> split;
  BackendConfig backends;
  int parallelism = 1;
  std::uint64_t seed = 0;
  std::filesystem::path run_root = "runs";
  std::string run_id;  // derived from the config digest when empty

  /// Throws ConfigError.
  void validate() const;
  /// Digest over every setting that influences results (parallelism, the
  /// run location and file locations excluded; referenced files enter by
  /// content).
  std::string digest() const;
  std::string effective_run_id() const;
  std::filesystem::path run_dir() const { return run_root / effective_run_id(); }
};

/// Parses a config object. Relative paths resolve against `base_dir`.
RunConfig config_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical JSON form (paths as given, absolute after resolution).
nlohmann::json config_to_json(const RunConfig& c);

/// Builds the backend set: mocks from fixture files, otherwise HTTP clients.
backends::BackendSet make_backends(const RunConfig& config);

}  // namespace mmcurate::pipeline
