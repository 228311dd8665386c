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

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"

namespace mmcurate::segmenter {

struct FrameSample {
  int frame_index = 0;
  double timestamp_s = 0.0;
  std::vector<double> embedding;  // unit length
};

struct SegmenterConfig {
  double delta_c = 0.95;  // boundary when consecutive cosine similarity < delta_c
  double sample_rate_fps = 1.0;
  double delta_t_s = 3.0;  // transcript buffer on each side
  int min_episode_frames = 2;
  double keyframe_min_prob = 0.5;

  /// Throws ConfigError when a field is out of range.
  void validate() const;
};

void to_json(nlohmann::json& j, const SegmenterConfig& c);
void from_json(const nlohmann::json& j, SegmenterConfig& c);

struct TimeSpan {
  double start_s = 0.0;
  double end_s = 0.0;
  friend bool operator==(const TimeSpan&, const TimeSpan&) = default;
};

/// Inclusive positions into the frame list handed to segment_episodes.
struct EpisodeBounds {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const { return last - first + 1; }
  friend bool operator==(const EpisodeBounds&, const EpisodeBounds&) = default;
};

/// a.b / (|a||b|), clamped to [-1, 1]. Throws ValidationError on a
/// dimension mismatch or a zero-norm vector.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

/// Positions i such that a boundary falls between frames i and i+1.
std::vector<std::size_t> boundary_positions(std::span<const FrameSample> frames, double delta_c);

/// Splits at every boundary and drops episodes shorter than
/// min_episode_frames. Empty input yields no episodes. Throws
/// ValidationError unless frame indices and timestamps strictly increase.
std::vector<EpisodeBounds> segment_episodes(std::span<const FrameSample> frames, const SegmenterConfig& config);

struct KeyframeChoice {
  std::size_t offset = 0;  // position within the episode
  backends::FrameClassification classification;
};

/// Argmax of retinal_probability, earliest on ties. nullopt when the
/// maximum is below min_prob or the list is empty.
std::optional<KeyframeChoice> select_keyframe(std::span<const backends::FrameClassification> scores, double min_prob);

/// [start - delta_t, end + delta_t] clamped to [0, duration].
TimeSpan transcript_span(TimeSpan episode, double delta_t_s, double video_duration_s);

/// Frame timestamps for a uniformly sampled stream.
std::vector<FrameSample> frames_from_embeddings(std::vector<std::vector<double>> embeddings, double fps);

}  // namespace mmcurate::segmenter
