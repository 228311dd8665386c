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

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/structured.hpp"
#include "mmcurate/curation/separated.hpp"

namespace mmcurate::curation {

struct Separation {
  SeparatedTranscript transcript;  // accepted scenes, renumbered 1..n
  std::vector<std::string> rejected_scenes;  // failed the verbatim check
};

/// Parses a separation response against `raw_transcript`. Scenes that are
/// not verbatim substrings are dropped. Throws ParseError when the output is
/// malformed or when scenes were proposed but none survived. Zero proposed
/// scenes is valid and yields an empty transcript.
Separation parse_separation(std::string_view text, std::string_view raw_transcript);

backends::ChatRequest separation_request(std::string_view raw_transcript, const backends::GenerationConfig& gen);
Separation separate_cues(std::string_view raw_transcript, backends::ChatBackend& chat,
                         const backends::RetryPolicy& policy, const backends::GenerationConfig& gen = {},
                         int* attempts = nullptr);

struct QualityScore {
  std::string reasoning;
  int quality = 1;  // 1-10
  int difficulty = 1;  // 1-10
  int relevance2medicine = 1;  // 1-6
  bool mention_specific_details = false;

  /// Throws ValidationError when a metric is out of range.
  void validate() const;
  friend bool operator==(const QualityScore&, const QualityScore&) = default;
};

void to_json(nlohmann::json& j, const QualityScore& s);
void from_json(const nlohmann::json& j, QualityScore& s);

/// Metric keys are matched ignoring case and underscores. Out-of-range or
/// non-integral values raise ParseError.
QualityScore parse_quality_score(std::string_view text);

backends::ChatRequest scoring_request(const SeparatedTranscript& sep, const backends::GenerationConfig& gen);
QualityScore score_transcript(const SeparatedTranscript& sep, backends::ChatBackend& chat,
                              const backends::RetryPolicy& policy, const backends::GenerationConfig& gen = {},
                              int* attempts = nullptr);

struct GateConfig {
  int min_relevance = 3;
  bool require_details = true;
  int cot_min_quality = 9;
  int cot_min_difficulty = 9;
  int cot_min_relevance = 5;

  /// Throws ConfigError when a threshold lies outside its metric range.
  void validate() const;
};

void to_json(nlohmann::json& j, const GateConfig& g);
void from_json(const nlohmann::json& j, GateConfig& g);

bool passes_gate(const QualityScore& score, const GateConfig& gate);
bool cot_eligible(const QualityScore& score, const GateConfig& gate);

/// Empty when the score passes; otherwise "low_relevance" or
/// "no_specific_details" (relevance is checked first).
std::string gate_reason(const QualityScore& score, const GateConfig& gate);

}  // namespace mmcurate::curation
