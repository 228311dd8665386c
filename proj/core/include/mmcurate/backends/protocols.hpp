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

#include <memory>
#include <string>
#include <vector>

#include "mmcurate/backends/types.hpp"

namespace mmcurate::backends {

// All implementations must be safe for concurrent calls.

class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  virtual ChatResponse chat(const ChatRequest& req) = 0;
};

class EmbeddingBackend {
 public:
  virtual ~EmbeddingBackend() = default;
  /// Unit-length vector of dimension() components.
  virtual EmbeddingResponse embed(const EmbeddingRequest& req) = 0;
  virtual int dimension() const = 0;
};

class TranscriptionBackend {
 public:
  virtual ~TranscriptionBackend() = default;
  virtual Transcript transcribe(const TranscribeRequest& req) = 0;
};

class VisionBackend {
 public:
  virtual ~VisionBackend() = default;
  virtual FrameClassification classify_frame(const ImagePayload& frame) = 0;
  virtual RegionProposal propose_regions(const ImagePayload& image) = 0;
  /// Exactly one score per prompt, in prompt order.
  virtual ImageTextSimilarity score_image_text(const ImageTextRequest& req) = 0;
  virtual DetectionResult detect_sensitive(const ImagePayload& image) = 0;
};

/// Chat call sites in the engine. Each maps onto a named endpoint.
enum class ChatRole { kRelevance, kSeparate, kScore, kVqa, kConversation, kCot, kVerify, kVerifyCot, kExtract, kJudge };

std::string_view to_string(ChatRole role);
std::vector<ChatRole> all_chat_roles();

struct BackendSet {
  std::shared_ptr<ChatBackend> chat;  // default for every role
  std::shared_ptr<ChatBackend> cot_chat;  // CoT generation and CoT verification; falls back to chat
  std::shared_ptr<ChatBackend> eval_chat;  // extractor and judge; falls back to chat
  std::shared_ptr<EmbeddingBackend> embedder;
  std::shared_ptr<EmbeddingBackend> token_embedder;  // evaluation similarity; falls back to embedder
  std::shared_ptr<TranscriptionBackend> transcriber;
  std::shared_ptr<VisionBackend> vision;

  ChatBackend& chat_for(ChatRole role) const;
};

}  // namespace mmcurate::backends
