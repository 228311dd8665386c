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

// Wire schemas shared with the inference sidecar. Each endpoint has a
// request and a response validator; validators throw ParseError naming the
// offending field. Encoders always produce schema-valid JSON.

#include <string_view>
#include <vector>

#include "mmcurate/backends/types.hpp"

namespace mmcurate::backends::schema {

enum class Endpoint { kEmbed, kClassifyFrame, kTranscribe, kRegions, kClipScore, kDetect, kHealthz };

std::string_view path(Endpoint e);
std::vector<Endpoint> all_endpoints();
Endpoint endpoint_from_name(std::string_view name);

void validate_request(Endpoint e, const Json& body);
void validate_response(Endpoint e, const Json& body);

Json encode_image(const ImagePayload& payload);
ImagePayload decode_image(const Json& body);

Json encode(const EmbeddingRequest& req);
EmbeddingRequest decode_embedding_request(const Json& body);
Json encode(const EmbeddingResponse& resp);
EmbeddingResponse decode_embedding_response(const Json& body);

Json encode(const FrameClassification& resp);
FrameClassification decode_classification(const Json& body);

Json encode(const TranscribeRequest& req);
TranscribeRequest decode_transcribe_request(const Json& body);
Json encode(const Transcript& resp);
Transcript decode_transcript(const Json& body);

Json encode(const RegionProposal& resp);
RegionProposal decode_regions(const Json& body);

Json encode(const ImageTextRequest& req);
ImageTextRequest decode_clip_request(const Json& body);
Json encode(const ImageTextSimilarity& resp);
ImageTextSimilarity decode_clip_scores(const Json& body);

Json encode(const DetectionResult& resp);
DetectionResult decode_detections(const Json& body);

}  // namespace mmcurate::backends::schema
