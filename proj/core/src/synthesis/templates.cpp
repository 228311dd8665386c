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

#include "mmcurate/synthesis/templates.hpp"

#include <cctype>

#include <nlohmann/json.hpp>

#include "mmcurate/common/assets.hpp"
#include "mmcurate/common/error.hpp"

namespace mmcurate::synthesis {

std::string_view template_name(TemplateId id) {
  switch (id) {
    case TemplateId::kRelevance: return "relevance.v1";
    case TemplateId::kSeparate: return "separate.v1";
    case TemplateId::kScore: return "score.v1";
    case TemplateId::kVqa: return "vqa.v1";
    case TemplateId::kConversation: return "conversation.v1";
    case TemplateId::kCot: return "cot.v1";
    case TemplateId::kVerifyVqa: return "verify_vqa.v1";
    case TemplateId::kVerifyConversation: return "verify_conversation.v1";
    case TemplateId::kVerifyCot: return "verify_cot.v1";
    case TemplateId::kJudge: return "judge.v1";
    case TemplateId::kExtract: return "extract.v1";
    case TemplateId::kTrainVqa: return "train_vqa.v1";
    case TemplateId::kTrainConversation: return "train_conversation.v1";
    case TemplateId::kTrainCot: return "train_cot.v1";
  }
  throw ConfigError("unknown template id");
}

std::string_view template_text(TemplateId id) {
  return asset("prompts/" + std::string(template_name(id)) + ".txt");
}

std::string fill_slots(std::string_view text, const Slots& slots) {
  std::string out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] == '{') {
      std::size_t j = i + 1;
      while (j < text.size() && (std::isupper(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
      if (j > i + 1 && j < text.size() && text[j] == '}') {
        auto key = text.substr(i + 1, j - i - 1);
        auto it = slots.find(key);
        if (it == slots.end()) throw ConfigError("missing template slot {" + std::string(key) + "}");
        out += it->second;
        i = j + 1;
        continue;
      }
    }
    out.push_back(text[i++]);
  }
  return out;
}

std::string render_blocks(const curation::SeparatedTranscript& sep) {
  std::string out = "[SUPPLEMENTAL CONTEXT]\n";
  for (const auto& c : sep.supplemental_context) out += "- " + c + "\n";
  out += "\n[SCENE]\n";
  for (const auto& s : sep.scenes) out += "Scene " + std::to_string(s.scene_id) + ": " + s.verbatim_scene_text + "\n";
  return out;
}

std::string render_payload(const curation::SeparatedTranscript& sep) {
  nlohmann::ordered_json j;
  j["supplemental_context"] = sep.supplemental_context;
  j["scenes"] = nlohmann::ordered_json::array();
  for (const auto& s : sep.scenes)
    j["scenes"].push_back({{"scene_id", s.scene_id}, {"verbatim_scene_text", s.verbatim_scene_text}});
  return j.dump(2);
}

std::string render_prompt(TemplateId id, const curation::SeparatedTranscript& sep, const Slots& slots) {
  return fill_slots(template_text(id), slots) + "\n\n" + render_blocks(sep);
}

std::vector<FewShot> load_fewshot(std::string_view name) {
  const auto doc = nlohmann::ordered_json::parse(asset("fewshot/" + std::string(name) + ".json"));
  auto as_text = [](const nlohmann::ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(2); };
  std::vector<FewShot> out;
  for (const auto& shot : doc) out.push_back({as_text(shot.at("input")), as_text(shot.at("output"))});
  return out;
}

}  // namespace mmcurate::synthesis
