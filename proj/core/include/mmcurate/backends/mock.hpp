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

// Deterministic mock backends. Every response is a pure function of the
// request (and the configured seed); scripted fixtures take precedence over
// the hash-derived fallbacks.

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "mmcurate/backends/protocols.hpp"

namespace mmcurate::backends {

/// Scripted chat fixtures.
///
///   {"rules": [{"tag": "vqa.*", "contains": "case-07", "temperature": 0.2,
///               "response": "..." | {...}}],
///    "responses": {"<request digest>": "..."},
///    "defaults": {"<tag>": "..." | {...}}}
///
/// Lookup order: exact request digest, first matching rule, tag default.
/// A rule's "tag" may end in '*' for prefix match; "contains" is matched
/// against the last user message; "temperature", when present, must equal
/// the request temperature. Non-string responses are serialized as JSON.
struct ChatFixtures {
  struct Rule {
    std::string tag;
    std::optional<std::string> contains;
    std::optional<double> temperature;
    std::string response;
  };
  std::vector<Rule> rules;
  std::map<std::string, std::string> by_digest;
  std::map<std::string, std::string> defaults;

  static ChatFixtures from_json(const Json& j);
  static ChatFixtures load(const std::filesystem::path& path);
  /// Merges `other` after this table's entries (this table wins).
  void merge(const ChatFixtures& other);
};

class ScriptedChat final : public ChatBackend {
 public:
  explicit ScriptedChat(ChatFixtures fixtures);

  /// Throws BackendError when no fixture matches.
  ChatResponse chat(const ChatRequest& req) override;

  std::size_t calls() const;
  std::size_t calls(std::string_view tag) const;

 private:
  ChatFixtures fixtures_;
  mutable std::mutex mutex_;
  std::map<std::string, std::size_t, std::less<>> per_tag_;
  std::size_t total_ = 0;
};

/// Hash-seeded Gaussian vectors normalized to unit length.
class MockEmbedder final : public EmbeddingBackend {
 public:
  MockEmbedder(int dimension, std::uint64_t seed);

  EmbeddingResponse embed(const EmbeddingRequest& req) override;
  int dimension() const override { return dimension_; }
  std::size_t calls() const { return calls_.load(); }

 private:
  int dimension_;
  std::uint64_t seed_;
  std::atomic<std::size_t> calls_{0};
};

/// Transcripts keyed by audio_ref; returns the segments overlapping the span.
class MockTranscriber final : public TranscriptionBackend {
 public:
  explicit MockTranscriber(std::map<std::string, std::vector<TimedSegment>> fixtures);
  /// {"<audio_ref>": [{"start_s", "end_s", "text"}]}
  static std::map<std::string, std::vector<TimedSegment>> fixtures_from_json(const Json& j);

  Transcript transcribe(const TranscribeRequest& req) override;
  std::size_t calls() const { return calls_.load(); }

 private:
  std::map<std::string, std::vector<TimedSegment>> fixtures_;
  std::atomic<std::size_t> calls_{0};
};

/// Vision fixtures keyed by image ref:
///
///   {"classify": {"<ref>": {"retinal_probability": p, "modality": "OCT",
///                           "modality_confidence": c}},
///    "regions": {"<ref>": [{"x":..,"y":..,"w":..,"h":..}]},
///    "clip_scores": {"<ref>": [{"box": {...}, "scores": {"<prompt>": s, "*": s}}]},
///    "detections": {"<ref>": [{"x":..,"y":..,"w":..,"h":..,"confidence": c}]}}
///
/// A clip entry without "box" matches any region; the ref "*" applies to
/// images without their own matching entry. Unscripted refs fall back to digest-derived classification and scores,
/// zero regions and zero detections.
struct VisionFixtures {
  struct ClipEntry {
    std::optional<Box> box;
    std::map<std::string, double> scores;
  };
  std::map<std::string, FrameClassification> classify;
  std::map<std::string, std::vector<Box>> regions;
  std::map<std::string, std::vector<ClipEntry>> clip_scores;
  std::map<std::string, std::vector<Detection>> detections;

  static VisionFixtures from_json(const Json& j);
};

class MockVision final : public VisionBackend {
 public:
  MockVision(VisionFixtures fixtures, std::uint64_t seed);

  FrameClassification classify_frame(const ImagePayload& frame) override;
  RegionProposal propose_regions(const ImagePayload& image) override;
  ImageTextSimilarity score_image_text(const ImageTextRequest& req) override;
  DetectionResult detect_sensitive(const ImagePayload& image) override;

  std::size_t classify_calls() const { return classify_calls_.load(); }
  std::size_t region_calls() const { return region_calls_.load(); }
  std::size_t score_calls() const { return score_calls_.load(); }
  std::size_t detect_calls() const { return detect_calls_.load(); }

 private:
  VisionFixtures fixtures_;
  std::uint64_t seed_;
  std::atomic<std::size_t> classify_calls_{0};
  std::atomic<std::size_t> region_calls_{0};
  std::atomic<std::size_t> score_calls_{0};
  std::atomic<std::size_t> detect_calls_{0};
};

}  // namespace mmcurate::backends
