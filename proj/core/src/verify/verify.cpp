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

#include "mmcurate/verify/verify.hpp"

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/synthesis/json_extract.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate::verify {

using synthesis::TemplateId;

std::string_view to_string(Verdict v) { return v == Verdict::kKeep ? "keep" : "discard"; }

std::optional<Verdict> normalize_verdict(std::string_view s) {
  const auto t = text::to_lower_ascii(text::trim(s));
  if (t == "keep") return Verdict::kKeep;
  if (t == "discard") return Verdict::kDiscard;
  return std::nullopt;
}

void to_json(nlohmann::json& j, const VerificationDecision& d) {
  j = nlohmann::json{{"instance_ref", d.instance_ref},
                     {"kind", dataset::to_string(d.kind)},
                     {"reasoning", d.reasoning},
                     {"answer", to_string(d.answer)}};
}

void from_json(const nlohmann::json& j, VerificationDecision& d) {
  d.instance_ref = j.at("instance_ref").get<std::string>();
  d.kind = dataset::instance_kind_from_string(j.at("kind").get<std::string>());
  d.reasoning = j.value("reasoning", std::string());
  auto v = normalize_verdict(j.at("answer").get<std::string>());
  if (!v) throw ParseError("decision answer must be keep or discard");
  d.answer = *v;
}

std::pair<std::string, Verdict> parse_verification(std::string_view text) {
  const auto j = synthesis::parse_llm_json(text, synthesis::JsonShape::kObject);
  if (!j.contains("answer") || !j["answer"].is_string()) throw ParseError("verification output lacks \"answer\"");
  auto v = normalize_verdict(j["answer"].get<std::string>());
  if (!v) throw ParseError("verification answer \"" + j["answer"].get<std::string>() + "\" is not keep/discard");
  std::string reasoning;
  if (j.contains("reasoning") && j["reasoning"].is_string()) reasoning = j["reasoning"].get<std::string>();
  return {reasoning, *v};
}

std::string render_instance(const std::vector<synthesis::Turn>& turns) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& t : turns) arr.push_back({{"from", t.role}, {"value", t.text}});
  return arr.dump(2);
}

backends::ChatRequest verification_request(InstanceKind kind, const std::vector<synthesis::Turn>& turns,
                                           const curation::SeparatedTranscript& sep,
                                           const backends::GenerationConfig& gen) {
  TemplateId id = TemplateId::kVerifyVqa;
  std::string section = "[VQA CONTENT]";
  std::string tag = "verify.vqa";
  if (kind == InstanceKind::kConversation) {
    id = TemplateId::kVerifyConversation;
    section = "[CONVERSATION]";
    tag = "verify.conversation";
  } else if (kind == InstanceKind::kCot) {
    id = TemplateId::kVerifyCot;
    section = "[GPT CoT]";
    tag = "verify.cot";
  }
  backends::ChatRequest req;
  req.system = std::string(synthesis::template_text(id));
  req.messages.push_back({"user", synthesis::render_blocks(sep) + "\n" + section + "\n" + render_instance(turns)});
  req.temperature = gen.temperature;
  req.max_tokens = gen.max_tokens;
  req.tag = tag;
  return req;
}

VerificationDecision verify_instance(const std::string& instance_ref, InstanceKind kind,
                                     const std::vector<synthesis::Turn>& turns,
                                     const curation::SeparatedTranscript& sep, backends::ChatBackend& chat,
                                     const backends::RetryPolicy& policy, const backends::GenerationConfig& gen) {
  std::function<std::pair<std::string, Verdict>(const std::string&)> parse = [](const std::string& t) {
    return parse_verification(t);
  };
  auto [reasoning, verdict] =
      backends::call_structured(chat, verification_request(kind, turns, sep, gen), policy, parse);
  return {instance_ref, kind, std::move(reasoning), verdict};
}

std::vector<synthesis::Turn> turns_of(const synthesis::VqaInstance& v) {
  return {{"user", v.question}, {"assistant", v.answer}};
}

std::vector<synthesis::Turn> turns_of(const synthesis::CotInstance& c) {
  return {{"user", c.user_text}, {"assistant", c.assistant_text}};
}

}  // namespace mmcurate::verify
