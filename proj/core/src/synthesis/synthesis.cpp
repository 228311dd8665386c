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

#include "mmcurate/synthesis/synthesis.hpp"

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/synthesis/json_extract.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate::synthesis {

using backends::ChatRequest;

std::string_view to_string(QuestionType t) {
  switch (t) {
    case QuestionType::kYesNo: return "yes_no";
    case QuestionType::kWhat: return "what";
    case QuestionType::kWhere: return "where";
  }
  return "?";
}

QuestionType question_type_from_string(std::string_view s) {
  for (auto t : all_question_types()) {
    if (s == to_string(t)) return t;
  }
  throw ParseError("unknown question type \"" + std::string(s) + "\"");
}

std::vector<QuestionType> all_question_types() {
  return {QuestionType::kYesNo, QuestionType::kWhat, QuestionType::kWhere};
}

namespace {

bool blank(std::string_view s) { return text::trim(s).empty(); }

void check_turns(const std::vector<Turn>& turns) {
  if (turns.size() % 2 != 0) throw ValidationError("conversation must end on an assistant turn");
  const auto pairs = static_cast<int>(turns.size() / 2);
  if (pairs < kMinConversationPairs || pairs > kMaxConversationPairs)
    throw ValidationError("conversation has " + std::to_string(pairs) + " pairs, expected 3-4");
  for (std::size_t i = 0; i < turns.size(); ++i) {
    const char* want = i % 2 == 0 ? "user" : "assistant";
    if (turns[i].role != want) throw ValidationError("conversation roles must alternate starting with user");
    if (blank(turns[i].text)) throw ValidationError("empty conversation turn");
  }
}

std::string field_string(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw ParseError(std::string("missing string field \"") + key + "\"");
  return j[key].get<std::string>();
}

std::vector<Turn> parse_turn_array(std::string_view text) {
  const auto arr = parse_llm_json(text, JsonShape::kArray);
  std::vector<Turn> turns;
  for (const auto& t : arr) {
    if (!t.is_object()) throw ParseError("turn is not an object");
    auto role = text::to_lower_ascii(text::trim(field_string(t, "from")));
    if (role != "user" && role != "assistant") throw ParseError("turn role must be user or assistant");
    turns.push_back({role, text::trim(field_string(t, "value"))});
  }
  return turns;
}

ChatRequest base_request(std::string system, std::string tag, const backends::GenerationConfig& gen) {
  ChatRequest req;
  req.system = std::move(system);
  req.temperature = gen.temperature;
  req.max_tokens = gen.max_tokens;
  req.tag = std::move(tag);
  return req;
}

}  // namespace

void VqaInstance::validate() const {
  if (blank(question) || blank(answer)) throw ValidationError("VQA question and answer must be non-empty");
  if (is_not_applicable(question) || is_not_applicable(answer)) throw ValidationError("VQA instance holds N/A");
  if (question_type == QuestionType::kYesNo && answer != "Yes." && answer != "No.")
    throw ValidationError("yes/no answer must be exactly \"Yes.\" or \"No.\"");
}

void ConversationInstance::validate() const { check_turns(turns); }

void CotInstance::validate() const {
  if (blank(user_text) || blank(assistant_text)) throw ValidationError("CoT turns must be non-empty");
}

void to_json(nlohmann::json& j, const VqaInstance& v) {
  j = nlohmann::json{{"image_ref", v.image_ref},
                     {"modality", to_string(v.modality)},
                     {"question_type", to_string(v.question_type)},
                     {"question", v.question},
                     {"answer", v.answer},
                     {"generator_reasoning", v.generator_reasoning}};
}

void from_json(const nlohmann::json& j, VqaInstance& v) {
  v.image_ref = j.at("image_ref").get<std::string>();
  v.modality = backends::modality_from_string(j.at("modality").get<std::string>());
  v.question_type = question_type_from_string(j.at("question_type").get<std::string>());
  v.question = j.at("question").get<std::string>();
  v.answer = j.at("answer").get<std::string>();
  v.generator_reasoning = j.value("generator_reasoning", std::string());
}

void to_json(nlohmann::json& j, const Turn& t) { j = nlohmann::json{{"from", t.role}, {"value", t.text}}; }

void from_json(const nlohmann::json& j, Turn& t) {
  t.role = j.at("from").get<std::string>();
  t.text = j.at("value").get<std::string>();
}

void to_json(nlohmann::json& j, const ConversationInstance& c) {
  j = nlohmann::json{{"image_ref", c.image_ref}, {"modality", to_string(c.modality)}, {"turns", c.turns}};
}

void from_json(const nlohmann::json& j, ConversationInstance& c) {
  c.image_ref = j.at("image_ref").get<std::string>();
  c.modality = backends::modality_from_string(j.at("modality").get<std::string>());
  c.turns = j.at("turns").get<std::vector<Turn>>();
}

void to_json(nlohmann::json& j, const CotInstance& c) {
  j = nlohmann::json{{"image_ref", c.image_ref},
                     {"modality", to_string(c.modality)},
                     {"user_text", c.user_text},
                     {"assistant_text", c.assistant_text},
                     {"temperature", c.temperature}};
}

void from_json(const nlohmann::json& j, CotInstance& c) {
  c.image_ref = j.at("image_ref").get<std::string>();
  c.modality = backends::modality_from_string(j.at("modality").get<std::string>());
  c.user_text = j.at("user_text").get<std::string>();
  c.assistant_text = j.at("assistant_text").get<std::string>();
  c.temperature = j.value("temperature", 0.0);
}

bool is_not_applicable(std::string_view s) {
  auto t = text::to_lower_ascii(text::trim(s));
  while (!t.empty() && t.back() == '.') t.pop_back();
  return t == "n/a";
}

std::optional<VqaInstance> parse_vqa(std::string_view text, QuestionType target) {
  const auto j = parse_llm_json(text, JsonShape::kObject);
  VqaInstance v;
  v.question = text::trim(field_string(j, "question"));
  v.answer = text::trim(field_string(j, "answer"));
  if (j.contains("reasoning") && j["reasoning"].is_string()) v.generator_reasoning = j["reasoning"].get<std::string>();
  if (is_not_applicable(v.question) || is_not_applicable(v.answer)) return std::nullopt;
  if (j.contains("question_type")) {
    if (!j["question_type"].is_string() || j["question_type"].get<std::string>() != to_string(target))
      throw ParseError("question_type does not echo the requested type");
  }
  v.question_type = target;
  try {
    v.validate();
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return v;
}

std::vector<Turn> parse_conversation(std::string_view text) {
  auto turns = parse_turn_array(text);
  try {
    check_turns(turns);
  } catch (const ValidationError& e) {
    throw ParseError(e.what());
  }
  return turns;
}

std::pair<std::string, std::string> parse_cot(std::string_view text) {
  auto turns = parse_turn_array(text);
  if (turns.size() != 2) throw ParseError("CoT output must hold exactly two turns");
  if (turns[0].role != "user" || turns[1].role != "assistant")
    throw ParseError("CoT turns must be user then assistant");
  if (turns[0].text.empty() || turns[1].text.empty()) throw ParseError("CoT turns must be non-empty");
  return {turns[0].text, turns[1].text};
}

ChatRequest vqa_request(const curation::SeparatedTranscript& sep, QuestionType target,
                        const backends::GenerationConfig& gen) {
  const std::string type(to_string(target));
  auto req = base_request(fill_slots(template_text(TemplateId::kVqa), {{"TARGET_TYPE", type}}), "vqa." + type, gen);
  req.messages.push_back({"user", render_payload(sep)});
  return req;
}

namespace {

ChatRequest blocks_request(TemplateId id, std::string_view fewshot, const curation::SeparatedTranscript& sep,
                           std::string tag, const backends::GenerationConfig& gen) {
  auto req = base_request(std::string(template_text(id)), std::move(tag), gen);
  for (const auto& shot : load_fewshot(fewshot)) {
    req.messages.push_back({"user", shot.input});
    req.messages.push_back({"assistant", shot.output});
  }
  req.messages.push_back({"user", render_blocks(sep)});
  return req;
}

}  // namespace

ChatRequest conversation_request(const curation::SeparatedTranscript& sep, const backends::GenerationConfig& gen) {
  return blocks_request(TemplateId::kConversation, "conversation", sep, "conversation", gen);
}

ChatRequest cot_request(const curation::SeparatedTranscript& sep, const backends::GenerationConfig& gen) {
  return blocks_request(TemplateId::kCot, "cot", sep, "cot", gen);
}

std::optional<VqaInstance> synthesize_vqa(const curation::SeparatedTranscript& sep, QuestionType target,
                                          const ImageContext& image, backends::ChatBackend& chat,
                                          const backends::RetryPolicy& policy, const backends::GenerationConfig& gen) {
  std::function<std::optional<VqaInstance>(const std::string&)> parse = [&](const std::string& t) {
    return parse_vqa(t, target);
  };
  auto v = backends::call_structured(chat, vqa_request(sep, target, gen), policy, parse);
  if (v) {
    v->image_ref = image.image_ref;
    v->modality = image.modality;
  }
  return v;
}

ConversationInstance synthesize_conversation(const curation::SeparatedTranscript& sep, const ImageContext& image,
                                             backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                                             const backends::GenerationConfig& gen) {
  std::function<std::vector<Turn>(const std::string&)> parse = [](const std::string& t) {
    return parse_conversation(t);
  };
  return {image.image_ref, image.modality, backends::call_structured(chat, conversation_request(sep, gen), policy, parse)};
}

CotInstance synthesize_cot(const curation::SeparatedTranscript& sep, const ImageContext& image,
                           backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                           const backends::GenerationConfig& gen) {
  std::function<std::pair<std::string, std::string>(const std::string&)> parse = [](const std::string& t) {
    return parse_cot(t);
  };
  int attempts = 0;
  auto [user, assistant] = backends::call_structured(chat, cot_request(sep, gen), policy, parse, &attempts);
  return {image.image_ref, image.modality, std::move(user), std::move(assistant),
          policy.temperature_for(attempts - 1, gen.temperature)};
}

}  // namespace mmcurate::synthesis
