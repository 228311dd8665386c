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

#include "mmcurate/backends/schema.hpp"

#include <cmath>

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"

namespace mmcurate::backends::schema {

namespace {

[[noreturn]] void fail(std::string_view where, std::string_view what) {
  throw ParseError(std::string(where) + ": " + std::string(what));
}

void require_object(std::string_view where, const Json& j) {
  if (!j.is_object()) fail(where, "expected a JSON object");
}

const Json& field(std::string_view where, const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

const std::string& string_field(std::string_view where, const Json& j, const char* key) {
  const auto& v = field(where, j, key);
  if (!v.is_string()) fail(where, std::string("field '") + key + "' must be a string");
  return v.get_ref<const std::string&>();
}

double number_field(std::string_view where, const Json& j, const char* key) {
  const auto& v = field(where, j, key);
  if (!v.is_number()) fail(where, std::string("field '") + key + "' must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) fail(where, std::string("field '") + key + "' must be finite");
  return d;
}

double unit_field(std::string_view where, const Json& j, const char* key) {
  double d = number_field(where, j, key);
  if (d < 0.0 || d > 1.0) fail(where, std::string("field '") + key + "' must lie in [0, 1]");
  return d;
}

const Json& array_field(std::string_view where, const Json& j, const char* key) {
  const auto& v = field(where, j, key);
  if (!v.is_array()) fail(where, std::string("field '") + key + "' must be an array");
  return v;
}

void validate_box(std::string_view where, const Json& j) {
  require_object(where, j);
  for (const char* k : {"x", "y", "w", "h"}) {
    const auto& v = field(where, j, k);
    if (!v.is_number_integer()) fail(where, std::string("box field '") + k + "' must be an integer");
  }
  if (j["w"].get<long long>() <= 0 || j["h"].get<long long>() <= 0) fail(where, "box w and h must be positive");
  if (j["x"].get<long long>() < 0 || j["y"].get<long long>() < 0) fail(where, "box origin must be non-negative");
}

void validate_image_request(std::string_view where, const Json& j) {
  require_object(where, j);
  const auto& data = string_field(where, j, "image_png_b64");
  if (data.empty()) fail(where, "image_png_b64 is empty");
  if (j.contains("ref") && !j["ref"].is_string()) fail(where, "ref must be a string");
}

}  // namespace

std::string_view path(Endpoint e) {
  switch (e) {
    case Endpoint::kEmbed: return "/embed";
    case Endpoint::kClassifyFrame: return "/classify_frame";
    case Endpoint::kTranscribe: return "/transcribe";
    case Endpoint::kRegions: return "/regions";
    case Endpoint::kClipScore: return "/clip_score";
    case Endpoint::kDetect: return "/detect";
    case Endpoint::kHealthz: return "/healthz";
  }
  return "/";
}

std::vector<Endpoint> all_endpoints() {
  return {Endpoint::kEmbed,    Endpoint::kClassifyFrame, Endpoint::kTranscribe, Endpoint::kRegions,
          Endpoint::kClipScore, Endpoint::kDetect,       Endpoint::kHealthz};
}

Endpoint endpoint_from_name(std::string_view name) {
  for (auto e : all_endpoints()) {
    if (path(e).substr(1) == name) return e;
  }
  throw ValidationError("unknown endpoint: " + std::string(name));
}

void validate_request(Endpoint e, const Json& body) {
  std::string where = std::string(path(e)) + " request";
  switch (e) {
    case Endpoint::kEmbed: {
      require_object(where, body);
      bool has_text = body.contains("text");
      bool has_image = body.contains("image_png_b64");
      if (has_text == has_image) fail(where, "exactly one of 'text' or 'image_png_b64' is required");
      if (has_text && !body["text"].is_string()) fail(where, "text must be a string");
      if (has_image) validate_image_request(where, body);
      return;
    }
    case Endpoint::kClassifyFrame:
    case Endpoint::kRegions:
    case Endpoint::kDetect:
      validate_image_request(where, body);
      return;
    case Endpoint::kTranscribe: {
      require_object(where, body);
      if (string_field(where, body, "audio_ref").empty()) fail(where, "audio_ref is empty");
      double start = number_field(where, body, "start_s");
      double end = number_field(where, body, "end_s");
      if (start < 0.0 || end < start) fail(where, "span must satisfy 0 <= start_s <= end_s");
      return;
    }
    case Endpoint::kClipScore: {
      validate_image_request(where, body);
      validate_box(where, field(where, body, "region"));
      const auto& prompts = array_field(where, body, "prompts");
      if (prompts.empty()) fail(where, "prompts must be non-empty");
      for (const auto& p : prompts) {
        if (!p.is_string()) fail(where, "prompts must be strings");
      }
      return;
    }
    case Endpoint::kHealthz:
      if (!body.is_null() && !(body.is_object() && body.empty())) fail(where, "healthz takes no body");
      return;
  }
}

void validate_response(Endpoint e, const Json& body) {
  std::string where = std::string(path(e)) + " response";
  require_object(where, body);
  switch (e) {
    case Endpoint::kEmbed: {
      const auto& v = array_field(where, body, "vector");
      if (v.empty()) fail(where, "vector is empty");
      double norm2 = 0.0;
      for (const auto& x : v) {
        if (!x.is_number()) fail(where, "vector components must be numbers");
        norm2 += x.get<double>() * x.get<double>();
      }
      if (std::abs(std::sqrt(norm2) - 1.0) > 1e-6) fail(where, "vector must be unit-length (1e-6)");
      if (body.contains("dim") && (!body["dim"].is_number_integer() || body["dim"].get<std::size_t>() != v.size()))
        fail(where, "dim does not match vector length");
      return;
    }
    case Endpoint::kClassifyFrame:
      unit_field(where, body, "retinal_probability");
      unit_field(where, body, "modality_confidence");
      try {
        modality_from_string(string_field(where, body, "modality"));
      } catch (const ParseError&) {
        fail(where, "modality must be one of CFP, OCT, UWF");
      }
      return;
    case Endpoint::kTranscribe: {
      for (const auto& seg : array_field(where, body, "segments")) {
        require_object(where, seg);
        double s = number_field(where, seg, "start_s");
        double t = number_field(where, seg, "end_s");
        if (s < 0.0 || t < s) fail(where, "segment span must satisfy 0 <= start_s <= end_s");
        string_field(where, seg, "text");
      }
      return;
    }
    case Endpoint::kRegions:
      for (const auto& r : array_field(where, body, "regions")) {
        validate_box(where, r);
        if (r.contains("mask_ref") && !r["mask_ref"].is_string()) fail(where, "mask_ref must be a string");
      }
      return;
    case Endpoint::kClipScore:
      for (const auto& s : array_field(where, body, "scores")) {
        if (!s.is_number()) fail(where, "scores must be numbers");
        double d = s.get<double>();
        if (!(d >= -1.0 && d <= 1.0)) fail(where, "scores must lie in [-1, 1]");
      }
      return;
    case Endpoint::kDetect:
      for (const auto& d : array_field(where, body, "detections")) {
        validate_box(where, d);
        unit_field(where, d, "confidence");
      }
      return;
    case Endpoint::kHealthz: {
      if (string_field(where, body, "status").empty()) fail(where, "status is empty");
      for (const auto& a : array_field(where, body, "adapters")) {
        if (!a.is_string()) fail(where, "adapters must be strings");
      }
      return;
    }
  }
}

Json encode_image(const ImagePayload& payload) {
  auto png = encode_png(payload.image);
  Json j{{"image_png_b64", base64_encode(std::span<const std::uint8_t>(png))}};
  if (!payload.ref.empty()) j["ref"] = payload.ref;
  return j;
}

ImagePayload decode_image(const Json& body) {
  ImagePayload out;
  auto bytes = base64_decode(body.at("image_png_b64").get<std::string>());
  out.image = decode_png(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
  out.ref = body.value("ref", "");
  return out;
}

Json encode(const EmbeddingRequest& req) {
  if (req.text.has_value() == req.image.has_value())
    throw ValidationError("embedding request needs exactly one of text or image");
  if (req.text) return Json{{"text", *req.text}};
  return encode_image(*req.image);
}

EmbeddingRequest decode_embedding_request(const Json& body) {
  validate_request(Endpoint::kEmbed, body);
  EmbeddingRequest req;
  if (body.contains("text")) {
    req.text = body["text"].get<std::string>();
  } else {
    req.image = decode_image(body);
  }
  return req;
}

Json encode(const EmbeddingResponse& resp) { return Json{{"vector", resp.vector}, {"dim", resp.vector.size()}}; }

EmbeddingResponse decode_embedding_response(const Json& body) {
  validate_response(Endpoint::kEmbed, body);
  return EmbeddingResponse{body["vector"].get<std::vector<double>>()};
}

Json encode(const FrameClassification& resp) {
  return Json{{"retinal_probability", resp.retinal_probability},
              {"modality", to_string(resp.modality)},
              {"modality_confidence", resp.modality_confidence}};
}

FrameClassification decode_classification(const Json& body) {
  validate_response(Endpoint::kClassifyFrame, body);
  return FrameClassification{body["retinal_probability"].get<double>(),
                             modality_from_string(body["modality"].get<std::string>()),
                             body["modality_confidence"].get<double>()};
}

Json encode(const TranscribeRequest& req) {
  return Json{{"audio_ref", req.audio_ref}, {"start_s", req.start_s}, {"end_s", req.end_s}};
}

TranscribeRequest decode_transcribe_request(const Json& body) {
  validate_request(Endpoint::kTranscribe, body);
  return TranscribeRequest{body["audio_ref"].get<std::string>(), body["start_s"].get<double>(),
                           body["end_s"].get<double>()};
}

Json encode(const Transcript& resp) {
  Json segs = Json::array();
  for (const auto& s : resp.segments) segs.push_back({{"start_s", s.start_s}, {"end_s", s.end_s}, {"text", s.text}});
  return Json{{"segments", std::move(segs)}};
}

Transcript decode_transcript(const Json& body) {
  validate_response(Endpoint::kTranscribe, body);
  Transcript t;
  for (const auto& s : body["segments"])
    t.segments.push_back({s["start_s"].get<double>(), s["end_s"].get<double>(), s["text"].get<std::string>()});
  return t;
}

Json encode(const RegionProposal& resp) {
  Json regions = Json::array();
  for (const auto& r : resp.regions) {
    Json j = r.box;
    if (r.mask_ref) j["mask_ref"] = *r.mask_ref;
    regions.push_back(std::move(j));
  }
  return Json{{"regions", std::move(regions)}};
}

RegionProposal decode_regions(const Json& body) {
  validate_response(Endpoint::kRegions, body);
  RegionProposal out;
  for (const auto& r : body["regions"]) {
    Region region{r.get<Box>(), std::nullopt};
    if (r.contains("mask_ref")) region.mask_ref = r["mask_ref"].get<std::string>();
    out.regions.push_back(std::move(region));
  }
  return out;
}

Json encode(const ImageTextRequest& req) {
  Json j = encode_image(req.image);
  j["region"] = req.region;
  j["prompts"] = req.prompts;
  return j;
}

ImageTextRequest decode_clip_request(const Json& body) {
  validate_request(Endpoint::kClipScore, body);
  return ImageTextRequest{decode_image(body), body["region"].get<Box>(), body["prompts"].get<std::vector<std::string>>()};
}

Json encode(const ImageTextSimilarity& resp) { return Json{{"scores", resp.scores}}; }

ImageTextSimilarity decode_clip_scores(const Json& body) {
  validate_response(Endpoint::kClipScore, body);
  return ImageTextSimilarity{body["scores"].get<std::vector<double>>()};
}

Json encode(const DetectionResult& resp) {
  Json dets = Json::array();
  for (const auto& d : resp.detections) {
    Json j = d.box;
    j["confidence"] = d.confidence;
    dets.push_back(std::move(j));
  }
  return Json{{"detections", std::move(dets)}};
}

DetectionResult decode_detections(const Json& body) {
  validate_response(Endpoint::kDetect, body);
  DetectionResult out;
  for (const auto& d : body["detections"]) out.detections.push_back({d.get<Box>(), d["confidence"].get<double>()});
  return out;
}

}  // namespace mmcurate::backends::schema
