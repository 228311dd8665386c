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

#include "mmcurate/curation/curation.hpp"

#include <cmath>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/synthesis/json_extract.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate::curation {

using backends::ChatRequest;
using synthesis::JsonShape;
using synthesis::TemplateId;

namespace {

ChatRequest with_fewshot(TemplateId id, std::string_view fewshot, std::string user, std::string tag,
                         const backends::GenerationConfig& gen) {
  ChatRequest req;
  req.system = std::string(synthesis::template_text(id));
  for (const auto& shot : synthesis::load_fewshot(fewshot)) {
    req.messages.push_back({"user", shot.input});
    req.messages.push_back({"assistant", shot.output});
  }
  req.messages.push_back({"user", std::move(user)});
  req.temperature = gen.temperature;
  req.max_tokens = gen.max_tokens;
  req.tag = std::move(tag);
  return req;
}

std::string canonical_key(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c != '_' && c != ' ') out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

const nlohmann::json& field(const nlohmann::json& obj, std::string_view key) {
  const auto want = canonical_key(key);
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (canonical_key(it.key()) == want) return it.value();
  }
  throw ParseError("score output lacks \"" + std::string(key) + "\"");
}

int metric(const nlohmann::json& obj, std::string_view key, int lo, int hi) {
  const auto& v = field(obj, key);
  double d = 0.0;
  if (v.is_number()) {
    d = v.get<double>();
  } else if (v.is_string()) {
    try {
      std::size_t used = 0;
      d = std::stod(v.get<std::string>(), &used);
      if (used != v.get<std::string>().size()) throw ParseError("");
    } catch (const std::exception&) {
      throw ParseError(std::string(key) + " is not numeric");
    }
  } else {
    throw ParseError(std::string(key) + " is not numeric");
  }
  if (d != std::floor(d)) throw ParseError(std::string(key) + " is not an integer");
  if (d < lo || d > hi)
    throw ParseError(std::string(key) + " out of range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(d);
}

}  // namespace

Separation parse_separation(std::string_view text, std::string_view raw_transcript) {
  const auto j = synthesis::parse_llm_json(text, JsonShape::kObject);
  if (!j.contains("scenes") || !j["scenes"].is_array()) throw ParseError("separation output lacks a scenes array");
  Separation out;
  if (j.contains("supplemental_context")) {
    const auto& ctx = j["supplemental_context"];
    if (ctx.is_string()) {
      out.transcript.supplemental_context.push_back(ctx.get<std::string>());
    } else if (ctx.is_array()) {
      for (const auto& c : ctx) {
        if (!c.is_string()) throw ParseError("supplemental_context entries must be strings");
        if (!text::trim(c.get<std::string>()).empty()) out.transcript.supplemental_context.push_back(c.get<std::string>());
      }
    } else if (!ctx.is_null()) {
      throw ParseError("supplemental_context must be a list of strings");
    }
  }
  const auto& scenes = j["scenes"];
  for (const auto& s : scenes) {
    std::string scene_text;
    if (s.is_string()) {
      scene_text = s.get<std::string>();
    } else if (s.is_object() && s.contains("verbatim_scene_text") && s["verbatim_scene_text"].is_string()) {
      scene_text = s["verbatim_scene_text"].get<std::string>();
    } else {
      throw ParseError("scene entry lacks verbatim_scene_text");
    }
    scene_text = text::trim(scene_text);
    if (is_verbatim(scene_text, raw_transcript)) {
      const int id = static_cast<int>(out.transcript.scenes.size()) + 1;
      out.transcript.scenes.push_back({id, scene_text});
    } else {
      out.rejected_scenes.push_back(scene_text);
    }
  }
  if (out.transcript.scenes.empty() && !out.rejected_scenes.empty())
    throw ParseError("no proposed scene is a verbatim substring of the transcript");
  out.transcript.scene_count = static_cast<int>(out.transcript.scenes.size());
  return out;
}

ChatRequest separation_request(std::string_view raw_transcript, const backends::GenerationConfig& gen) {
  if (text::trim(raw_transcript).empty()) throw ValidationError("raw transcript is empty");
  return with_fewshot(TemplateId::kSeparate, "separate", std::string(raw_transcript), "separate", gen);
}

Separation separate_cues(std::string_view raw_transcript, backends::ChatBackend& chat,
                         const backends::RetryPolicy& policy, const backends::GenerationConfig& gen, int* attempts) {
  std::function<Separation(const std::string&)> parse = [&](const std::string& text) {
    return parse_separation(text, raw_transcript);
  };
  return backends::call_structured(chat, separation_request(raw_transcript, gen), policy, parse, attempts);
}

void QualityScore::validate() const {
  auto check = [](int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi) throw ValidationError(std::string(name) + " out of range");
  };
  check(quality, 1, 10, "quality");
  check(difficulty, 1, 10, "difficulty");
  check(relevance2medicine, 1, 6, "relevance2medicine");
}

void to_json(nlohmann::json& j, const QualityScore& s) {
  j = nlohmann::json{{"reasoning", s.reasoning},
                     {"quality", s.quality},
                     {"difficulty", s.difficulty},
                     {"relevance2medicine", s.relevance2medicine},
                     {"mention_specific_details", s.mention_specific_details}};
}

void from_json(const nlohmann::json& j, QualityScore& s) {
  s.reasoning = j.value("reasoning", std::string());
  s.quality = j.at("quality").get<int>();
  s.difficulty = j.at("difficulty").get<int>();
  s.relevance2medicine = j.at("relevance2medicine").get<int>();
  s.mention_specific_details = j.at("mention_specific_details").get<bool>();
  s.validate();
}

QualityScore parse_quality_score(std::string_view text) {
  const auto j = synthesis::parse_llm_json(text, JsonShape::kObject);
  QualityScore s;
  if (j.contains("reasoning") && j["reasoning"].is_string()) s.reasoning = j["reasoning"].get<std::string>();
  s.quality = metric(j, "quality", 1, 10);
  s.difficulty = metric(j, "difficulty", 1, 10);
  s.relevance2medicine = metric(j, "Relevance2Medicine", 1, 6);
  const auto& details = field(j, "MentionSpecificDetails");
  if (details.is_boolean()) {
    s.mention_specific_details = details.get<bool>();
  } else if (details.is_string() && (text::to_lower_ascii(details.get<std::string>()) == "true" ||
                                     text::to_lower_ascii(details.get<std::string>()) == "false")) {
    s.mention_specific_details = text::to_lower_ascii(details.get<std::string>()) == "true";
  } else {
    throw ParseError("MentionSpecificDetails must be a boolean");
  }
  return s;
}

ChatRequest scoring_request(const SeparatedTranscript& sep, const backends::GenerationConfig& gen) {
  sep.validate();
  return with_fewshot(TemplateId::kScore, "score", synthesis::render_payload(sep), "score", gen);
}

QualityScore score_transcript(const SeparatedTranscript& sep, backends::ChatBackend& chat,
                              const backends::RetryPolicy& policy, const backends::GenerationConfig& gen,
                              int* attempts) {
  std::function<QualityScore(const std::string&)> parse = [](const std::string& text) {
    return parse_quality_score(text);
  };
  return backends::call_structured(chat, scoring_request(sep, gen), policy, parse, attempts);
}

void GateConfig::validate() const {
  auto check = [](int v, int lo, int hi, const char* name) {
    if (v < lo || v > hi) throw ConfigError(std::string("gates.") + name + " outside the metric range");
  };
  check(min_relevance, 1, 6, "min_relevance");
  check(cot_min_quality, 1, 10, "cot_min_quality");
  check(cot_min_difficulty, 1, 10, "cot_min_difficulty");
  check(cot_min_relevance, 1, 6, "cot_min_relevance");
}

void to_json(nlohmann::json& j, const GateConfig& g) {
  j = nlohmann::json{{"min_relevance", g.min_relevance},
                     {"require_details", g.require_details},
                     {"cot_min_quality", g.cot_min_quality},
                     {"cot_min_difficulty", g.cot_min_difficulty},
                     {"cot_min_relevance", g.cot_min_relevance}};
}

void from_json(const nlohmann::json& j, GateConfig& g) {
  GateConfig d;
  g.min_relevance = j.value("min_relevance", d.min_relevance);
  g.require_details = j.value("require_details", d.require_details);
  g.cot_min_quality = j.value("cot_min_quality", d.cot_min_quality);
  g.cot_min_difficulty = j.value("cot_min_difficulty", d.cot_min_difficulty);
  g.cot_min_relevance = j.value("cot_min_relevance", d.cot_min_relevance);
}

bool passes_gate(const QualityScore& score, const GateConfig& gate) {
  return score.relevance2medicine >= gate.min_relevance && (!gate.require_details || score.mention_specific_details);
}

bool cot_eligible(const QualityScore& score, const GateConfig& gate) {
  return score.quality >= gate.cot_min_quality && score.difficulty >= gate.cot_min_difficulty &&
         score.relevance2medicine >= gate.cot_min_relevance && score.mention_specific_details;
}

std::string gate_reason(const QualityScore& score, const GateConfig& gate) {
  if (score.relevance2medicine < gate.min_relevance) return "low_relevance";
  if (gate.require_details && !score.mention_specific_details) return "no_specific_details";
  return {};
}

}  // namespace mmcurate::curation
