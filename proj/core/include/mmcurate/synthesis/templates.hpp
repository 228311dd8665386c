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

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mmcurate/curation/separated.hpp"

namespace mmcurate::synthesis {

enum class TemplateId {
  kRelevance,
  kSeparate,
  kScore,
  kVqa,
  kConversation,
  kCot,
  kVerifyVqa,
  kVerifyConversation,
  kVerifyCot,
  kJudge,
  kExtract,
  kTrainVqa,
  kTrainConversation,
  kTrainCot,
};

using Slots = std::map<std::string, std::string, std::less<>>;

/// Versioned asset name, e.g. "vqa.v1".
std::string_view template_name(TemplateId id);
std::string_view template_text(TemplateId id);

/// Replaces every {UPPER_CASE} placeholder. Throws ConfigError when a
/// placeholder has no slot.
std::string fill_slots(std::string_view text, const Slots& slots);

/// "[SUPPLEMENTAL CONTEXT]" with "- " bullets, a blank line, then "[SCENE]"
/// with "Scene k: " lines.
std::string render_blocks(const curation::SeparatedTranscript& sep);

/// {"supplemental_context": [...], "scenes": [...]} pretty-printed.
std::string render_payload(const curation::SeparatedTranscript& sep);

/// Filled template followed by the transcript blocks.
std::string render_prompt(TemplateId id, const curation::SeparatedTranscript& sep, const Slots& slots = {});

struct FewShot {
  std::string input;
  std::string output;
};

/// Few-shot pairs from fewshot/<name>.json; structured values are
/// pretty-printed.
std::vector<FewShot> load_fewshot(std::string_view name);

}  // namespace mmcurate::synthesis
