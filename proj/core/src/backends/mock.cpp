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

#include "mmcurate/backends/mock.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate::backends {

namespace {

const Json& section(const Json& j, const char* key) {
  static const Json empty = Json::object();
  auto it = j.find(key);
  return it == j.end() ? empty : *it;
}

std::string response_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

bool tag_matches(std::string_view pattern, std::string_view tag) {
  if (!pattern.empty() && pattern.back() == '*') return tag.substr(0, pattern.size() - 1) == pattern.substr(0, pattern.size() - 1);
  return pattern == tag;
}

// mt19937_64 is fully specified by the standard; the distributions are not,
// so uniform and normal draws are derived by hand for cross-platform output.
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double standard_normal(std::mt19937_64& rng) {
  double u1 = uniform01(rng);
  double u2 = uniform01(rng);
  if (u1 < 1e-300) u1 = 1e-300;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::mt19937_64 rng_for(std::string_view key, std::uint64_t seed) {
  return std::mt19937_64(digest_seed(key) ^ seed);
}

std::string image_key(const ImagePayload& p) { return "image:" + image_digest(p.image); }

}  // namespace

// ---------------------------------------------------------------------------

ChatFixtures ChatFixtures::from_json(const Json& j) {
  ChatFixtures f;
  if (!j.is_object()) throw ConfigError("chat fixtures must be a JSON object");
  for (const auto& r : j.value("rules", Json::array())) {
    Rule rule;
    rule.tag = r.at("tag").get<std::string>();
    if (r.contains("contains")) rule.contains = r["contains"].get<std::string>();
    if (r.contains("temperature")) rule.temperature = r["temperature"].get<double>();
    rule.response = response_text(r.at("response"));
    f.rules.push_back(std::move(rule));
  }
  for (const auto& [digest, resp] : section(j, "responses").items()) f.by_digest[digest] = response_text(resp);
  for (const auto& [tag, resp] : section(j, "defaults").items()) f.defaults[tag] = response_text(resp);
  return f;
}

ChatFixtures ChatFixtures::load(const std::filesystem::path& path) { return from_json(read_json_file(path)); }

void ChatFixtures::merge(const ChatFixtures& other) {
  rules.insert(rules.end(), other.rules.begin(), other.rules.end());
  by_digest.insert(other.by_digest.begin(), other.by_digest.end());
  defaults.insert(other.defaults.begin(), other.defaults.end());
}

ScriptedChat::ScriptedChat(ChatFixtures fixtures) : fixtures_(std::move(fixtures)) {}

ChatResponse ScriptedChat::chat(const ChatRequest& req) {
  req.validate();
  {
    std::lock_guard lock(mutex_);
    ++total_;
    ++per_tag_[req.tag];
  }
  if (!fixtures_.by_digest.empty()) {
    auto it = fixtures_.by_digest.find(request_digest(req));
    if (it != fixtures_.by_digest.end()) return ChatResponse{it->second, "stop"};
  }
  const auto& user = req.last_user_content();
  for (const auto& rule : fixtures_.rules) {
    if (!tag_matches(rule.tag, req.tag)) continue;
    if (rule.contains && user.find(*rule.contains) == std::string::npos) continue;
    if (rule.temperature && std::abs(*rule.temperature - req.temperature) > 1e-9) continue;
    return ChatResponse{rule.response, "stop"};
  }
  if (auto it = fixtures_.defaults.find(req.tag); it != fixtures_.defaults.end()) return ChatResponse{it->second, "stop"};
  for (const auto& [pattern, resp] : fixtures_.defaults) {
    if (pattern.ends_with('*') && tag_matches(pattern, req.tag)) return ChatResponse{resp, "stop"};
  }
  throw BackendError("scripted chat has no fixture for tag '" + req.tag + "'");
}

std::size_t ScriptedChat::calls() const {
  std::lock_guard lock(mutex_);
  return total_;
}

std::size_t ScriptedChat::calls(std::string_view tag) const {
  std::lock_guard lock(mutex_);
  auto it = per_tag_.find(tag);
  return it == per_tag_.end() ? 0 : it->second;
}

// ---------------------------------------------------------------------------

MockEmbedder::MockEmbedder(int dimension, std::uint64_t seed) : dimension_(dimension), seed_(seed) {
  if (dimension <= 0) throw ConfigError("embedding dimension must be positive");
}

EmbeddingResponse MockEmbedder::embed(const EmbeddingRequest& req) {
  ++calls_;
  if (req.text.has_value() == req.image.has_value())
    throw ValidationError("embedding request needs exactly one of text or image");
  std::string key = req.text ? "text:" + *req.text : image_key(*req.image);
  auto rng = rng_for(key, seed_);
  std::vector<double> v(static_cast<std::size_t>(dimension_));
  double norm2 = 0.0;
  do {
    norm2 = 0.0;
    for (auto& x : v) {
      x = standard_normal(rng);
      norm2 += x * x;
    }
  } while (norm2 == 0.0);
  double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return EmbeddingResponse{std::move(v)};
}

// ---------------------------------------------------------------------------

MockTranscriber::MockTranscriber(std::map<std::string, std::vector<TimedSegment>> fixtures)
    : fixtures_(std::move(fixtures)) {}

std::map<std::string, std::vector<TimedSegment>> MockTranscriber::fixtures_from_json(const Json& j) {
  std::map<std::string, std::vector<TimedSegment>> table;
  for (const auto& [ref, segs] : j.items()) {
    auto& out = table[ref];
    for (const auto& s : segs)
      out.push_back({s.at("start_s").get<double>(), s.at("end_s").get<double>(), s.at("text").get<std::string>()});
  }
  return table;
}

Transcript MockTranscriber::transcribe(const TranscribeRequest& req) {
  ++calls_;
  Transcript out;
  auto it = fixtures_.find(req.audio_ref);
  if (it == fixtures_.end()) return out;
  for (const auto& seg : it->second) {
    if (seg.end_s > req.start_s && seg.start_s < req.end_s) out.segments.push_back(seg);
  }
  return out;
}

// ---------------------------------------------------------------------------

VisionFixtures VisionFixtures::from_json(const Json& j) {
  VisionFixtures f;
  for (const auto& [ref, c] : section(j, "classify").items()) {
    f.classify[ref] = FrameClassification{c.at("retinal_probability").get<double>(),
                                          modality_from_string(c.value("modality", "CFP")),
                                          c.value("modality_confidence", 1.0)};
  }
  for (const auto& [ref, boxes] : section(j, "regions").items()) f.regions[ref] = boxes.get<std::vector<Box>>();
  for (const auto& [ref, entries] : section(j, "clip_scores").items()) {
    auto& out = f.clip_scores[ref];
    for (const auto& e : entries) {
      std::optional<Box> box;
      if (e.contains("box")) box = e["box"].get<Box>();
      out.push_back({box, e.at("scores").get<std::map<std::string, double>>()});
    }
  }
  for (const auto& [ref, dets] : section(j, "detections").items()) {
    auto& out = f.detections[ref];
    for (const auto& d : dets) out.push_back({d.get<Box>(), d.value("confidence", 1.0)});
  }
  return f;
}

namespace {
const std::string kAnyRef = "*";
}  // namespace

MockVision::MockVision(VisionFixtures fixtures, std::uint64_t seed) : fixtures_(std::move(fixtures)), seed_(seed) {}

FrameClassification MockVision::classify_frame(const ImagePayload& frame) {
  ++classify_calls_;
  if (auto it = fixtures_.classify.find(frame.ref); it != fixtures_.classify.end()) return it->second;
  auto rng = rng_for("classify:" + image_key(frame), seed_);
  FrameClassification out;
  out.retinal_probability = uniform01(rng);
  out.modality = static_cast<Modality>(rng() % 3);
  out.modality_confidence = uniform01(rng);
  return out;
}

RegionProposal MockVision::propose_regions(const ImagePayload& image) {
  ++region_calls_;
  RegionProposal out;
  if (auto it = fixtures_.regions.find(image.ref); it != fixtures_.regions.end()) {
    for (const auto& b : it->second) out.regions.push_back({b, std::nullopt});
  }
  return out;
}

ImageTextSimilarity MockVision::score_image_text(const ImageTextRequest& req) {
  ++score_calls_;
  ImageTextSimilarity out;
  const std::map<std::string, double>* scripted = nullptr;
  for (const auto* ref : {&req.image.ref, &kAnyRef}) {
    auto it = fixtures_.clip_scores.find(*ref);
    if (it == fixtures_.clip_scores.end()) continue;
    for (const auto& entry : it->second) {
      if (!entry.box || *entry.box == req.region) {
        scripted = &entry.scores;
        break;
      }
    }
    if (scripted != nullptr) break;
  }
  for (const auto& prompt : req.prompts) {
    if (scripted != nullptr) {
      if (auto s = scripted->find(prompt); s != scripted->end()) {
        out.scores.push_back(s->second);
        continue;
      }
      if (auto s = scripted->find("*"); s != scripted->end()) {
        out.scores.push_back(s->second);
        continue;
      }
    }
    Json key{{"image", image_key(req.image)}, {"region", req.region}, {"prompt", prompt}};
    auto rng = rng_for(key.dump(), seed_);
    out.scores.push_back(uniform01(rng) - 0.5);
  }
  return out;
}

DetectionResult MockVision::detect_sensitive(const ImagePayload& image) {
  ++detect_calls_;
  DetectionResult out;
  if (auto it = fixtures_.detections.find(image.ref); it != fixtures_.detections.end()) out.detections = it->second;
  return out;
}

}  // namespace mmcurate::backends
