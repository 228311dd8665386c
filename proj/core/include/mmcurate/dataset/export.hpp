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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/dataset/manifest.hpp"
#include "mmcurate/synthesis/synthesis.hpp"

namespace mmcurate::dataset {

/// One training record in the "from"/"value" conversation schema.
struct SftRecord {
  std::string id;
  std::string image;
  InstanceKind kind = InstanceKind::kVqa;
  std::string subtype;
  backends::Modality modality = backends::Modality::kCFP;
  std::string system;
  std::vector<synthesis::Turn> conversations;
  friend bool operator==(const SftRecord&, const SftRecord&) = default;
};

void to_json(nlohmann::json& j, const SftRecord& r);
void from_json(const nlohmann::json& j, SftRecord& r);

/// Format-specific training system prompt.
std::string_view system_prompt(InstanceKind kind);

/// Turns of a manifest record. Generator reasoning and CoT temperature are
/// metadata and not part of the turns.
std::vector<synthesis::Turn> instance_turns(const ManifestRecord& r);
SftRecord to_sft(const ManifestRecord& r);
/// Rebuilds the manifest-side payload from exported turns.
nlohmann::json payload_from_turns(InstanceKind kind, const std::vector<synthesis::Turn>& turns);

struct ExportOptions {
  bool include_test = false;
  bool include_unsplit = true;
  std::vector<InstanceKind> kinds{InstanceKind::kVqa, InstanceKind::kConversation, InstanceKind::kCot};
};

/// Records grouped by kind, in manifest order.
std::map<InstanceKind, std::vector<SftRecord>> export_sft(const DatasetManifest& manifest, const ExportOptions& opt = {});

/// Writes <kind>.jsonl for every requested kind (possibly empty) and an
/// index.json with counts and system prompts. Returns the index.
nlohmann::json write_sft(const std::filesystem::path& dir, const DatasetManifest& manifest,
                         const ExportOptions& opt = {});
std::vector<SftRecord> read_sft(const std::filesystem::path& file);

}  // namespace mmcurate::dataset
