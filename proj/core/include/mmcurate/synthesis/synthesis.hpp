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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/structured.hpp"
#include "mmcurate/curation/separated.hpp"

namespace mmcurate::synthesis {

enum class QuestionType { kYesNo, kWhat, kWhere };

std::string_view to_string(QuestionType t);
/// Accepts "yes_no", "what", "where". Throws ParseError otherwise.
QuestionType question_type_from_string(std::string_view s);
std::vector<QuestionType> all_question_types();

struct VqaInstance {
  std::string image_ref;
  backends::Modality modality = backends::Modality::kCFP;
  QuestionType question_type = QuestionType::kYesNo;
  std::string question;
  std::string answer;
  std::string generator_reasoning;

  /// Throws ValidationError.
  void validate() const;
  friend bool operator==(const VqaInstance&, const VqaInstance&) = default;
};

struct Turn {
  std::string role;  // "user" | "assistant"
  std::string text;
  friend bool operator==(const Turn&, const Turn&) = default;
};

struct ConversationInstance {
  std::string image_ref;
  backends::Modality modality = backends::Modality::kCFP;
  std::vector<Turn> turns;

  /// Alternating roles starting with user, 3-4 pairs.
  void validate() const;
  friend bool operator==(const ConversationInstance&, const ConversationInstance&) = default;
};

struct CotInstance {
  std::string image_ref;
  backends::Modality modality = backends::Modality::kCFP;
  std::string user_text;
  std::string assistant_text;
  double temperature = 0.0;

  void validate() const;
  friend bool operator==(const CotInstance&, const CotInstance&) = default;
};

void to_json(nlohmann::json& j, const VqaInstance& v);
void from_json(const nlohmann::json& j, VqaInstance& v);
void to_json(nlohmann::json& j, const Turn& t);
void from_json(const nlohmann::json& j, Turn& t);
void to_json(nlohmann::json& j, const ConversationInstance& c);
void from_json(const nlohmann::json& j, ConversationInstance& c);
void to_json(nlohmann::json& j, const CotInstance& c);
void from_json(const nlohmann::json& j, CotInstance& c);

inline constexpr int kMinConversationPairs = 3;
inline constexpr int kMaxConversationPairs = 4;
inline constexpr double kCotTemperature = 0.4;

bool is_not_applicable(std::string_view s);

/// nullopt when question or answer is "N/A". Throws ParseError on schema
/// violations, a question_type other than `target`, or a yes/no answer
/// other than "Yes." / "No.".
std::optional<VqaInstance> parse_vqa(std::string_view text, QuestionType target);
std::vector<Turn> parse_conversation(std::string_view text);
/// Exactly [{"from":"user",...},{"from":"assistant",...}].
std::pair<std::string, std::string> parse_cot(std::string_view text);

backends::ChatRequest vqa_request(const curation::SeparatedTranscript& sep, QuestionType target,
                                  const backends::GenerationConfig& gen);
backends::ChatRequest conversation_request(const curation::SeparatedTranscript& sep,
                                           const backends::GenerationConfig& gen);
backends::ChatRequest cot_request(const curation::SeparatedTranscript& sep, const backends::GenerationConfig& gen);

struct ImageContext {
  std::string image_ref;
  backends::Modality modality = backends::Modality::kCFP;
};

std::optional<VqaInstance> synthesize_vqa(const curation::SeparatedTranscript& sep, QuestionType target,
                                          const ImageContext& image, backends::ChatBackend& chat,
                                          const backends::RetryPolicy& policy,
                                          const backends::GenerationConfig& gen = {});
ConversationInstance synthesize_conversation(const curation::SeparatedTranscript& sep, const ImageContext& image,
                                             backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                                             const backends::GenerationConfig& gen = {});
CotInstance synthesize_cot(const curation::SeparatedTranscript& sep, const ImageContext& image,
                           backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                           const backends::GenerationConfig& gen = {kCotTemperature, 2048});

}  // namespace mmcurate::synthesis
