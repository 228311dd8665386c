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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmcurate::curation {

struct Scene {
  int scene_id = 0;
  std::string verbatim_scene_text;
  friend bool operator==(const Scene&, const Scene&) = default;
};

/// A transcript split into visual scenes and background context.
struct SeparatedTranscript {
  std::vector<std::string> supplemental_context;
  int scene_count = 0;
  std::vector<Scene> scenes;

  /// Throws ValidationError unless scene_count == scenes.size(), ids run
  /// 1..n in order, and no scene text is empty.
  void validate() const;
  friend bool operator==(const SeparatedTranscript&, const SeparatedTranscript&) = default;
};

void to_json(nlohmann::json& j, const Scene& s);
void from_json(const nlohmann::json& j, Scene& s);
void to_json(nlohmann::json& j, const SeparatedTranscript& s);
void from_json(const nlohmann::json& j, SeparatedTranscript& s);

/// True when normalize_verbatim(scene) occurs inside normalize_verbatim(raw).
bool is_verbatim(std::string_view scene_text, std::string_view raw_transcript);

}  // namespace mmcurate::curation
