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

#include "mmcurate/dataset/export.hpp"

#include <algorithm>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate::dataset {

using synthesis::TemplateId;
using synthesis::Turn;

void to_json(nlohmann::json& j, const SftRecord& r) {
  j = nlohmann::json{{"id", r.id},
                     {"image", r.image},
                     {"kind", to_string(r.kind)},
                     {"subtype", r.subtype},
                     {"modality", backends::to_string(r.modality)},
                     {"system", r.system},
                     {"conversations", r.conversations}};
}

void from_json(const nlohmann::json& j, SftRecord& r) {
  r.id = j.at("id").get<std::string>();
  r.image = j.at("image").get<std::string>();
  r.kind = instance_kind_from_string(j.at("kind").get<std::string>());
  r.subtype = j.value("subtype", std::string());
  r.modality = backends::modality_from_string(j.at("modality").get<std::string>());
  r.system = j.at("system").get<std::string>();
  r.conversations = j.at("conversations").get<std::vector<Turn>>();
}

std::string_view system_prompt(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::kVqa: return synthesis::template_text(TemplateId::kTrainVqa);
    case InstanceKind::kConversation: return synthesis::template_text(TemplateId::kTrainConversation);
    case InstanceKind::kCot: return synthesis::template_text(TemplateId::kTrainCot);
  }
  throw ConfigError("unknown instance kind");
}

std::vector<Turn> instance_turns(const ManifestRecord& r) {
  const auto& p = r.payload;
  try {
    switch (r.kind) {
      case InstanceKind::kVqa:
        return {{"user", p.at("question").get<std::string>()}, {"assistant", p.at("answer").get<std::string>()}};
      case InstanceKind::kConversation: return p.at("turns").get<std::vector<Turn>>();
      case InstanceKind::kCot:
        return {{"user", p.at("user_text").get<std::string>()},
                {"assistant", p.at("assistant_text").get<std::string>()}};
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError("record " + r.instance_id + " has a malformed payload: " + e.what());
  }
  return {};
}

SftRecord to_sft(const ManifestRecord& r) {
  return {r.instance_id, r.image_path, r.kind, r.subtype, r.modality, std::string(system_prompt(r.kind)),
          instance_turns(r)};
}

nlohmann::json payload_from_turns(InstanceKind kind, const std::vector<Turn>& turns) {
  switch (kind) {
    case InstanceKind::kVqa:
    case InstanceKind::kCot: {
      if (turns.size() != 2) throw ValidationError("single-turn record must hold two turns");
      if (kind == InstanceKind::kVqa) return {{"question", turns[0].text}, {"answer", turns[1].text}};
      return {{"user_text", turns[0].text}, {"assistant_text", turns[1].text}};
    }
    case InstanceKind::kConversation: return {{"turns", turns}};
  }
  return {};
}

std::map<InstanceKind, std::vector<SftRecord>> export_sft(const DatasetManifest& manifest, const ExportOptions& opt) {
  std::map<InstanceKind, std::vector<SftRecord>> out;
  for (auto k : opt.kinds) out[k];
  for (const auto& r : manifest.records) {
    if (!out.count(r.kind)) continue;
    if (r.split == Split::kTest && !opt.include_test) continue;
    if (r.split == Split::kUnsplit && !opt.include_unsplit) continue;
    out[r.kind].push_back(to_sft(r));
  }
  return out;
}

nlohmann::json write_sft(const std::filesystem::path& dir, const DatasetManifest& manifest, const ExportOptions& opt) {
  std::filesystem::create_directories(dir);
  nlohmann::json index{{"format", "sft-conversations"}, {"files", nlohmann::json::object()}};
  for (const auto& [kind, records] : export_sft(manifest, opt)) {
    const std::string name(to_string(kind));
    std::vector<nlohmann::json> rows(records.begin(), records.end());
    write_jsonl(dir / (name + ".jsonl"), rows);
    index["files"][name] = {{"path", name + ".jsonl"}, {"records", records.size()}, {"system", system_prompt(kind)}};
  }
  index["include_test"] = opt.include_test;
  write_json_file(dir / "index.json", index);
  return index;
}

std::vector<SftRecord> read_sft(const std::filesystem::path& file) {
  std::vector<SftRecord> out;
  for (const auto& j : read_jsonl(file)) out.push_back(j.get<SftRecord>());
  return out;
}

}  // namespace mmcurate::dataset
