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

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/structured.hpp"

namespace mmcurate::ingest {

struct VideoMeta {
  std::string video_id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  double duration_s = 0.0;
  bool has_captions = false;
  std::string license;
  std::string channel;
  bool corrupted = false;
};

/// Already-extracted media for one video. Paths are resolved against the
/// metadata file's directory when relative.
struct MediaRefs {
  std::filesystem::path embeddings;  // precomputed embedding file; empty => use the embedding backend
  std::filesystem::path frames_dir;  // frames/<frame_index:06>.png
  std::string audio_ref;  // handed to the transcription backend verbatim
};

struct VideoSource {
  VideoMeta meta;
  MediaRefs media;
};

void to_json(nlohmann::json& j, const VideoMeta& m);
void from_json(const nlohmann::json& j, VideoMeta& m);

/// Reads line-delimited metadata; each line is a VideoMeta object with an
/// optional "media" object {embeddings, frames_dir, audio}. Throws
/// ValidationError on negative durations or duplicate video ids.
std::vector<VideoSource> load_metadata(const std::filesystem::path& path);

struct Decision {
  bool keep = true;
  std::string reason;

  static Decision keep_item() { return {true, {}}; }
  static Decision discard(std::string why) { return {false, std::move(why)}; }
};

/// Lowercased, whitespace-collapsed phrase list without duplicates.
class KeywordDictionary {
 public:
  explicit KeywordDictionary(std::vector<std::string> terms);
  static KeywordDictionary load(const std::filesystem::path& path);
  static KeywordDictionary builtin();

  const std::vector<std::string>& terms() const { return terms_; }

 private:
  std::vector<std::string> terms_;
};

constexpr double kDefaultMinDurationS = 60.0;

/// discard(corrupted) | discard(too_short) | keep.
Decision prefilter(const VideoMeta& meta, double min_duration_s = kDefaultMinDurationS);

/// Dictionary terms found as whole phrases in the normalized title,
/// description or any tag, in dictionary order.
std::vector<std::string> keyword_match(const VideoMeta& meta, const KeywordDictionary& dict);

/// LLM relevance screen. Quarantines (QuarantineError) when the judge's
/// output stays unparseable after retries.
Decision llm_relevance(const VideoMeta& meta, backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                       const backends::GenerationConfig& gen = {});

/// Parses {"decision": "keep"|"discard", "reasoning": ...}; the literal is
/// case-insensitive. Throws ParseError otherwise.
Decision parse_relevance(const std::string& content);

}  // namespace mmcurate::ingest
