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

#include "mmcurate/backends/protocols.hpp"

#include "mmcurate/common/error.hpp"

namespace mmcurate::backends {

std::string_view to_string(ChatRole role) {
  switch (role) {
    case ChatRole::kRelevance: return "relevance";
    case ChatRole::kSeparate: return "separate";
    case ChatRole::kScore: return "score";
    case ChatRole::kVqa: return "vqa";
    case ChatRole::kConversation: return "conversation";
    case ChatRole::kCot: return "cot";
    case ChatRole::kVerify: return "verify";
    case ChatRole::kVerifyCot: return "verify_cot";
    case ChatRole::kExtract: return "extract";
    case ChatRole::kJudge: return "judge";
  }
  return "chat";
}

std::vector<ChatRole> all_chat_roles() {
  return {ChatRole::kRelevance, ChatRole::kSeparate, ChatRole::kScore,     ChatRole::kVqa,     ChatRole::kConversation,
          ChatRole::kCot,       ChatRole::kVerify,   ChatRole::kVerifyCot, ChatRole::kExtract, ChatRole::kJudge};
}

ChatBackend& BackendSet::chat_for(ChatRole role) const {
  ChatBackend* chosen = chat.get();
  if ((role == ChatRole::kCot || role == ChatRole::kVerifyCot) && cot_chat) chosen = cot_chat.get();
  if ((role == ChatRole::kExtract || role == ChatRole::kJudge) && eval_chat) chosen = eval_chat.get();
  if (chosen == nullptr) throw ConfigError("no chat backend configured for role " + std::string(to_string(role)));
  return *chosen;
}

}  // namespace mmcurate::backends
