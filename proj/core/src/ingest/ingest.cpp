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

#include "mmcurate/ingest/ingest.hpp"

#include <algorithm>
#include <set>

#include "mmcurate/common/assets.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/synthesis/json_extract.hpp"

namespace mmcurate::ingest {

void to_json(nlohmann::json& j, const VideoMeta& m) {
  j = nlohmann::json{{"video_id", m.video_id},   {"title", m.title},
                     {"description", m.description}, {"tags", m.tags},
                     {"duration_s", m.duration_s}, {"has_captions", m.has_captions},
                     {"license", m.license},     {"channel", m.channel},
                     {"corrupted", m.corrupted}};
}

void from_json(const nlohmann::json& j, VideoMeta& m) {
  m.video_id = j.at("video_id").get<std::string>();
  m.title = j.value("title", "");
  m.description = j.value("description", "");
  m.tags = j.value("tags", std::vector<std::string>{});
  m.duration_s = j.value("duration_s", 0.0);
  m.has_captions = j.value("has_captions", false);
  m.license = j.value("license", "");
  m.channel = j.value("channel", "");
  m.corrupted = j.value("corrupted", false);
}

std::vector<VideoSource> load_metadata(const std::filesystem::path& path) {
  auto base = path.parent_path();
  auto resolve = [&base](const std::string& p) -> std::filesystem::path {
    if (p.empty()) return {};
    std::filesystem::path fp(p);
    return fp.is_absolute() ? fp : base / fp;
  };
  std::vector<VideoSource> out;
  std::set<std::string> seen;
  for (const auto& record : read_jsonl(path)) {
    VideoSource src;
    try {
      src.meta = record.get<VideoMeta>();
    } catch (const nlohmann::json::exception& e) {
      throw ValidationError(path.string() + ": bad metadata record: " + e.what());
    }
    if (src.meta.video_id.empty()) throw ValidationError(path.string() + ": empty video_id");
    if (src.meta.duration_s < 0) throw ValidationError("negative duration for " + src.meta.video_id);
    if (!seen.insert(src.meta.video_id).second) throw ValidationError("duplicate video_id " + src.meta.video_id);
    const auto media = record.value("media", nlohmann::json::object());
    src.media.embeddings = resolve(media.value("embeddings", ""));
    src.media.frames_dir = resolve(media.value("frames_dir", ""));
    src.media.audio_ref = media.value("audio", "");
    out.push_back(std::move(src));
  }
  return out;
}

KeywordDictionary::KeywordDictionary(std::vector<std::string> terms) {
  std::set<std::string> seen;
  for (auto& t : terms) {
    auto norm = text::normalize_for_matching(t);
    if (norm.empty()) continue;
    if (!seen.insert(norm).second) throw ValidationError("duplicate keyword term: " + norm);
    terms_.push_back(std::move(norm));
  }
  if (terms_.empty()) throw ValidationError("keyword dictionary is empty");
}

KeywordDictionary KeywordDictionary::load(const std::filesystem::path& path) {
  return KeywordDictionary(parse_term_lines(read_file(path)));
}

KeywordDictionary KeywordDictionary::builtin() { return KeywordDictionary(parse_term_lines(asset("vocab/keywords.txt"))); }

Decision prefilter(const VideoMeta& meta, double min_duration_s) {
  if (meta.corrupted) return Decision::discard("corrupted");
  if (meta.duration_s < min_duration_s) return Decision::discard("too_short");
  return Decision::keep_item();
}

std::vector<std::string> keyword_match(const VideoMeta& meta, const KeywordDictionary& dict) {
  std::vector<std::string> fields{text::normalize_for_matching(meta.title),
                                  text::normalize_for_matching(meta.description)};
  for (const auto& tag : meta.tags) fields.push_back(text::normalize_for_matching(tag));
  std::vector<std::string> matched;
  for (const auto& term : dict.terms()) {
    bool hit = std::any_of(fields.begin(), fields.end(),
                           [&term](const std::string& f) { return text::contains_phrase(f, term); });
    if (hit) matched.push_back(term);
  }
  return matched;
}

Decision parse_relevance(const std::string& content) {
  auto j = synthesis::parse_llm_json(content, synthesis::JsonShape::kObject);
  auto it = j.find("decision");
  if (it == j.end() || !it->is_string()) throw ParseError("relevance output lacks a string 'decision'");
  auto literal = text::to_lower_ascii(text::trim(it->get<std::string>()));
  if (literal == "keep") return Decision::keep_item();
  if (literal == "discard") return Decision::discard("relevance");
  throw ParseError("relevance decision must be keep or discard, got '" + it->get<std::string>() + "'");
}

Decision llm_relevance(const VideoMeta& meta, backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                       const backends::GenerationConfig& gen) {
  nlohmann::json payload{{"video_id", meta.video_id},
                         {"title", meta.title},
                         {"description", meta.description},
                         {"tags", meta.tags},
                         {"channel", meta.channel}};
  backends::ChatRequest req;
  req.system = std::string(asset("prompts/relevance.v1.txt"));
  req.messages.push_back({"user", payload.dump(2)});
  req.temperature = gen.temperature;
  req.max_tokens = gen.max_tokens;
  req.tag = "relevance";
  return backends::call_structured<Decision>(chat, std::move(req), policy, parse_relevance);
}

}  // namespace mmcurate::ingest
