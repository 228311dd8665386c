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

#include "mmcurate/curation/separated.hpp"

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/text.hpp"

namespace mmcurate::curation {

void SeparatedTranscript::validate() const {
  if (scene_count != static_cast<int>(scenes.size()))
    throw ValidationError("scene_count " + std::to_string(scene_count) + " does not match " +
                          std::to_string(scenes.size()) + " scenes");
  for (std::size_t i = 0; i < scenes.size(); ++i) {
    if (scenes[i].scene_id != static_cast<int>(i) + 1) throw ValidationError("scene ids must run 1..n");
    if (text::trim(scenes[i].verbatim_scene_text).empty()) throw ValidationError("empty scene text");
  }
}

void to_json(nlohmann::json& j, const Scene& s) {
  j = nlohmann::json{{"scene_id", s.scene_id}, {"verbatim_scene_text", s.verbatim_scene_text}};
}

void from_json(const nlohmann::json& j, Scene& s) {
  s.scene_id = j.at("scene_id").get<int>();
  s.verbatim_scene_text = j.at("verbatim_scene_text").get<std::string>();
}

void to_json(nlohmann::json& j, const SeparatedTranscript& s) {
  j = nlohmann::json{
      {"supplemental_context", s.supplemental_context}, {"scene_count", s.scene_count}, {"scenes", s.scenes}};
}

void from_json(const nlohmann::json& j, SeparatedTranscript& s) {
  s.supplemental_context = j.at("supplemental_context").get<std::vector<std::string>>();
  s.scenes = j.at("scenes").get<std::vector<Scene>>();
  s.scene_count = j.value("scene_count", static_cast<int>(s.scenes.size()));
}

bool is_verbatim(std::string_view scene_text, std::string_view raw_transcript) {
  const auto needle = text::normalize_verbatim(scene_text);
  if (needle.empty()) return false;
  return text::normalize_verbatim(raw_transcript).find(needle) != std::string::npos;
}

}  // namespace mmcurate::curation
