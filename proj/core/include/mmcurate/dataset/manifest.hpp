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
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/types.hpp"
#include "mmcurate/curation/separated.hpp"

namespace mmcurate::dataset {

enum class InstanceKind { kVqa, kConversation, kCot };
enum class Split { kUnsplit, kTrain, kTest };

std::string_view to_string(InstanceKind k);
InstanceKind instance_kind_from_string(std::string_view s);
std::string_view to_string(Split s);
Split split_from_string(std::string_view s);

struct Provenance {
  std::string video_id;
  std::string episode_id;
  std::string run_id;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct ManifestRecord {
  std::string instance_id;
  std::string image_id;
  std::string image_path;  // relative to the manifest directory
  InstanceKind kind = InstanceKind::kVqa;
  std::string subtype;  // question type for VQA, empty otherwise
  backends::Modality modality = backends::Modality::kCFP;
  std::vector<std::string> condition_tags;
  Split split = Split::kUnsplit;
  Provenance provenance;
  curation::SeparatedTranscript context;
  /// vqa: question, answer, generator_reasoning
  /// conversation: turns [{from, value}]
  /// cot: user_text, assistant_text, temperature
  nlohmann::json payload = nlohmann::json::object();

  friend bool operator==(const ManifestRecord&, const ManifestRecord&) = default;
};

void to_json(nlohmann::json& j, const ManifestRecord& r);
void from_json(const nlohmann::json& j, ManifestRecord& r);

/// Table row key, e.g. "vqa/yes_no", "conversation".
std::string row_key(InstanceKind kind, std::string_view subtype);
std::string row_key(const ManifestRecord& r);
/// Rows in table order.
std::vector<std::string> standard_rows();

struct DatasetManifest {
  std::vector<ManifestRecord> records;  // sorted by instance_id

  /// Throws ValidationError: unique instance ids, one modality per image,
  /// VQA subtypes known, non-VQA without subtype, and no test image shared
  /// with a train instance.
  void validate() const;
  std::size_t unique_images() const;
};

/// Sorts, checks, and returns the manifest. Throws ValidationError.
DatasetManifest assemble_manifest(std::vector<ManifestRecord> records);

/// manifest.jsonl plus manifest.summary.json next to it.
void write_manifest(const std::filesystem::path& path, const DatasetManifest& m);
DatasetManifest read_manifest(const std::filesystem::path& path);
std::filesystem::path summary_path(const std::filesystem::path& manifest_path);
nlohmann::json manifest_summary(const DatasetManifest& m);

}  // namespace mmcurate::dataset
