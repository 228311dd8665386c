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

#include "mmcurate/dataset/manifest.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate::dataset {

std::string_view to_string(InstanceKind k) {
  switch (k) {
    case InstanceKind::kVqa: return "vqa";
    case InstanceKind::kConversation: return "conversation";
    case InstanceKind::kCot: return "cot";
  }
  return "?";
}

InstanceKind instance_kind_from_string(std::string_view s) {
  if (s == "vqa") return InstanceKind::kVqa;
  if (s == "conversation") return InstanceKind::kConversation;
  if (s == "cot") return InstanceKind::kCot;
  throw ParseError("unknown instance kind \"" + std::string(s) + "\"");
}

std::string_view to_string(Split s) {
  switch (s) {
    case Split::kUnsplit: return "unsplit";
    case Split::kTrain: return "train";
    case Split::kTest: return "test";
  }
  return "?";
}

Split split_from_string(std::string_view s) {
  if (s == "unsplit") return Split::kUnsplit;
  if (s == "train") return Split::kTrain;
  if (s == "test") return Split::kTest;
  throw ParseError("unknown split label \"" + std::string(s) + "\"");
}

void to_json(nlohmann::json& j, const ManifestRecord& r) {
  j = nlohmann::json{{"instance_id", r.instance_id},
                     {"image_id", r.image_id},
                     {"image_path", r.image_path},
                     {"kind", to_string(r.kind)},
                     {"subtype", r.subtype},
                     {"modality", backends::to_string(r.modality)},
                     {"condition_tags", r.condition_tags},
                     {"split", to_string(r.split)},
                     {"provenance",
                      {{"video_id", r.provenance.video_id},
                       {"episode_id", r.provenance.episode_id},
                       {"run_id", r.provenance.run_id}}},
                     {"context", r.context},
                     {"payload", r.payload}};
}

void from_json(const nlohmann::json& j, ManifestRecord& r) {
  r.instance_id = j.at("instance_id").get<std::string>();
  r.image_id = j.at("image_id").get<std::string>();
  r.image_path = j.value("image_path", std::string());
  r.kind = instance_kind_from_string(j.at("kind").get<std::string>());
  r.subtype = j.value("subtype", std::string());
  r.modality = backends::modality_from_string(j.at("modality").get<std::string>());
  r.condition_tags = j.value("condition_tags", std::vector<std::string>{});
  r.split = split_from_string(j.value("split", std::string("unsplit")));
  if (j.contains("provenance")) {
    const auto& p = j["provenance"];
    r.provenance = {p.value("video_id", ""), p.value("episode_id", ""), p.value("run_id", "")};
  }
  if (j.contains("context")) {
    r.context = j["context"].get<curation::SeparatedTranscript>();
  } else {
    r.context = {};
  }
  r.payload = j.value("payload", nlohmann::json::object());
}

std::string row_key(InstanceKind kind, std::string_view subtype) {
  std::string key(to_string(kind));
  if (!subtype.empty()) key += "/" + std::string(subtype);
  return key;
}

std::string row_key(const ManifestRecord& r) { return row_key(r.kind, r.subtype); }

std::vector<std::string> standard_rows() {
  return {"vqa/yes_no", "vqa/what", "vqa/where", "conversation", "cot"};
}

void DatasetManifest::validate() const {
  std::set<std::string> ids;
  std::map<std::string, backends::Modality> modality;
  std::set<std::string> train_images, test_images;
  for (const auto& r : records) {
    if (r.instance_id.empty() || r.image_id.empty()) throw ValidationError("record lacks instance_id or image_id");
    if (!ids.insert(r.instance_id).second) throw ValidationError("duplicate instance_id " + r.instance_id);
    auto [it, fresh] = modality.emplace(r.image_id, r.modality);
    if (!fresh && it->second != r.modality)
      throw ValidationError("image " + r.image_id + " carries two modalities");
    if (r.kind == InstanceKind::kVqa) {
      if (r.subtype != "yes_no" && r.subtype != "what" && r.subtype != "where")
        throw ValidationError("VQA record " + r.instance_id + " has subtype \"" + r.subtype + "\"");
    } else if (!r.subtype.empty()) {
      throw ValidationError("non-VQA record " + r.instance_id + " must not carry a subtype");
    }
    if (r.split == Split::kTest) {
      if (r.kind != InstanceKind::kVqa) throw ValidationError("only VQA instances can be test-labeled");
      test_images.insert(r.image_id);
    } else if (r.split == Split::kTrain) {
      train_images.insert(r.image_id);
    }
  }
  for (const auto& img : test_images) {
    if (train_images.count(img)) throw ValidationError("test image " + img + " also appears in train");
  }
}

std::size_t DatasetManifest::unique_images() const {
  std::set<std::string_view> images;
  for (const auto& r : records) images.insert(r.image_id);
  return images.size();
}

DatasetManifest assemble_manifest(std::vector<ManifestRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const ManifestRecord& a, const ManifestRecord& b) { return a.instance_id < b.instance_id; });
  DatasetManifest m{std::move(records)};
  m.validate();
  return m;
}

std::filesystem::path summary_path(const std::filesystem::path& manifest_path) {
  auto p = manifest_path;
  p.replace_extension(".summary.json");
  return p;
}

nlohmann::json manifest_summary(const DatasetManifest& m) {
  std::map<std::string, std::size_t> per_row;
  std::map<std::string, std::size_t> per_split;
  for (const auto& row : standard_rows()) per_row[row] = 0;
  for (const auto& r : m.records) {
    ++per_row[row_key(r)];
    ++per_split[std::string(to_string(r.split))];
  }
  return nlohmann::json{{"instances", m.records.size()},
                        {"unique_images", m.unique_images()},
                        {"per_row", per_row},
                        {"per_split", per_split}};
}

void write_manifest(const std::filesystem::path& path, const DatasetManifest& m) {
  std::vector<nlohmann::json> rows;
  rows.reserve(m.records.size());
  for (const auto& r : m.records) rows.emplace_back(r);
  write_jsonl(path, rows);
  auto summary = manifest_summary(m);
  summary["manifest_sha256"] = sha256_hex(read_file(path));
  write_json_file(summary_path(path), summary);
}

DatasetManifest read_manifest(const std::filesystem::path& path) {
  DatasetManifest m;
  std::size_t line = 0;
  for (const auto& j : read_jsonl(path)) {
    ++line;
    try {
      m.records.push_back(j.get<ManifestRecord>());
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + e.what());
    }
  }
  m.validate();
  return m;
}

}  // namespace mmcurate::dataset
