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

#include "mmcurate/backends/types.hpp"

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"

namespace mmcurate::backends {

void ChatRequest::validate() const {
  if (max_tokens < 1) throw ValidationError("chat max_tokens must be >= 1");
  if (temperature < 0.0) throw ValidationError("chat temperature must be >= 0");
  if (messages.empty()) throw ValidationError("chat request has no messages");
  for (std::size_t i = 0; i < messages.size(); ++i) {
    const char* expected = (i % 2 == 0) ? "user" : "assistant";
    if (messages[i].role != expected)
      throw ValidationError("chat roles must alternate starting at user (message " + std::to_string(i) + ")");
  }
  if (messages.back().role != "user") throw ValidationError("chat request must end with a user message");
}

const std::string& ChatRequest::last_user_content() const {
  for (auto it = messages.rbegin(); it != messages.rend(); ++it) {
    if (it->role == "user") return it->content;
  }
  static const std::string kEmpty;
  return kEmpty;
}

Json to_wire(const ChatRequest& req, std::string_view model) {
  Json messages = Json::array();
  if (!req.system.empty()) messages.push_back({{"role", "system"}, {"content", req.system}});
  for (const auto& m : req.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  Json body{{"messages", std::move(messages)}, {"temperature", req.temperature}, {"max_tokens", req.max_tokens}};
  if (!model.empty()) body["model"] = model;
  if (req.seed) body["seed"] = *req.seed;
  return body;
}

ChatResponse chat_response_from_wire(const Json& body) {
  if (!body.is_object() || !body.contains("choices") || !body["choices"].is_array() || body["choices"].empty())
    throw ParseError("chat response has no choices");
  const auto& choice = body["choices"][0];
  if (!choice.contains("message") || !choice["message"].is_object())
    throw ParseError("chat response choice has no message");
  const auto& content = choice["message"].value("content", Json());
  ChatResponse resp;
  if (content.is_string()) {
    resp.content = content.get<std::string>();
  } else if (!content.is_null()) {
    throw ParseError("chat response content is not a string");
  }
  if (choice.contains("finish_reason") && choice["finish_reason"].is_string())
    resp.finish_reason = choice["finish_reason"].get<std::string>();
  return resp;
}

std::string request_digest(const ChatRequest& req) { return json_digest(to_wire(req, "")); }

std::string_view to_string(Modality m) {
  switch (m) {
    case Modality::kCFP: return "CFP";
    case Modality::kOCT: return "OCT";
    case Modality::kUWF: return "UWF";
  }
  return "CFP";
}

Modality modality_from_string(std::string_view s) {
  if (s == "CFP") return Modality::kCFP;
  if (s == "OCT") return Modality::kOCT;
  if (s == "UWF") return Modality::kUWF;
  throw ParseError("unknown modality: " + std::string(s));
}

std::string Transcript::text() const {
  std::string out;
  for (const auto& seg : segments) {
    if (seg.text.empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += seg.text;
  }
  return out;
}

}  // namespace mmcurate::backends
