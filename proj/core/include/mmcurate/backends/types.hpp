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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/image/image.hpp"

namespace mmcurate::backends {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Chat (chat-completions convention: system prompt + alternating messages)
// ---------------------------------------------------------------------------

struct ChatMessage {
  std::string role;  // "user" | "assistant"
  std::string content;
  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct ChatRequest {
  std::string system;
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int max_tokens = 2048;
  std::optional<std::int64_t> seed;
  /// Client-side routing label (e.g. "vqa.where"); never serialized.
  std::string tag;

  /// Throws ValidationError: roles must alternate starting at user and
  /// end on user, max_tokens >= 1, temperature >= 0.
  void validate() const;
  const std::string& last_user_content() const;
};

struct ChatResponse {
  std::string content;
  std::string finish_reason = "stop";
};

Json to_wire(const ChatRequest& req, std::string_view model);
ChatResponse chat_response_from_wire(const Json& body);
/// Digest over the wire-relevant fields (system, messages, temperature,
/// max_tokens, seed).
std::string request_digest(const ChatRequest& req);

// ---------------------------------------------------------------------------
// Vision / audio / embedding payloads
// ---------------------------------------------------------------------------

enum class Modality { kCFP, kOCT, kUWF };

std::string_view to_string(Modality m);
Modality modality_from_string(std::string_view s);

/// An image plus a stable reference string (used by scripted mocks and logs).
struct ImagePayload {
  std::string ref;
  Image image;
};

struct EmbeddingRequest {
  std::optional<std::string> text;
  std::optional<ImagePayload> image;
};

struct EmbeddingResponse {
  std::vector<double> vector;
};

struct FrameClassification {
  double retinal_probability = 0.0;
  Modality modality = Modality::kCFP;
  double modality_confidence = 0.0;
};

struct Region {
  Box box;
  std::optional<std::string> mask_ref;
};

struct RegionProposal {
  std::vector<Region> regions;
};

struct ImageTextRequest {
  ImagePayload image;
  Box region;
  std::vector<std::string> prompts;
};

struct ImageTextSimilarity {
  std::vector<double> scores;
};

struct Detection {
  Box box;
  double confidence = 0.0;
};

struct DetectionResult {
  std::vector<Detection> detections;
};

struct TranscribeRequest {
  std::string audio_ref;
  double start_s = 0.0;
  double end_s = 0.0;
};

struct TimedSegment {
  double start_s = 0.0;
  double end_s = 0.0;
  std::string text;
};

struct Transcript {
  std::vector<TimedSegment> segments;
  /// Segment texts joined by single spaces.
  std::string text() const;
};

}  // namespace mmcurate::backends
