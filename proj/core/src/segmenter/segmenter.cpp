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

#include "mmcurate/segmenter/segmenter.hpp"

#include <algorithm>
#include <cmath>

#include "mmcurate/common/error.hpp"

namespace mmcurate::segmenter {

void SegmenterConfig::validate() const {
  if (!(delta_c > 0.0 && delta_c <= 1.0)) throw ConfigError("segmenter.delta_c must lie in (0, 1]");
  if (!(sample_rate_fps > 0.0)) throw ConfigError("segmenter.sample_rate_fps must be positive");
  if (!(delta_t_s >= 0.0)) throw ConfigError("segmenter.delta_t_s must be >= 0");
  if (min_episode_frames < 1) throw ConfigError("segmenter.min_episode_frames must be >= 1");
  if (!(keyframe_min_prob >= 0.0 && keyframe_min_prob <= 1.0))
    throw ConfigError("segmenter.keyframe_min_prob must lie in [0, 1]");
}

void to_json(nlohmann::json& j, const SegmenterConfig& c) {
  j = nlohmann::json{{"delta_c", c.delta_c},
                     {"sample_rate_fps", c.sample_rate_fps},
                     {"delta_t_s", c.delta_t_s},
                     {"min_episode_frames", c.min_episode_frames},
                     {"keyframe_min_prob", c.keyframe_min_prob}};
}

void from_json(const nlohmann::json& j, SegmenterConfig& c) {
  SegmenterConfig d;
  c.delta_c = j.value("delta_c", d.delta_c);
  c.sample_rate_fps = j.value("sample_rate_fps", d.sample_rate_fps);
  c.delta_t_s = j.value("delta_t_s", d.delta_t_s);
  c.min_episode_frames = j.value("min_episode_frames", d.min_episode_frames);
  c.keyframe_min_prob = j.value("keyframe_min_prob", d.keyframe_min_prob);
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("cosine_similarity: dimension mismatch");
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) throw ValidationError("cosine_similarity: degenerate (zero-norm) embedding");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

std::vector<std::size_t> boundary_positions(std::span<const FrameSample> frames, double delta_c) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i + 1 < frames.size(); ++i) {
    if (cosine_similarity(frames[i].embedding, frames[i + 1].embedding) < delta_c) out.push_back(i);
  }
  return out;
}

std::vector<EpisodeBounds> segment_episodes(std::span<const FrameSample> frames, const SegmenterConfig& config) {
  for (std::size_t i = 1; i < frames.size(); ++i) {
    if (frames[i].frame_index <= frames[i - 1].frame_index || frames[i].timestamp_s <= frames[i - 1].timestamp_s)
      throw ValidationError("frames must have strictly increasing indices and timestamps");
  }
  std::vector<EpisodeBounds> episodes;
  if (frames.empty()) return episodes;
  const auto min_frames = static_cast<std::size_t>(config.min_episode_frames);
  std::size_t first = 0;
  auto close = [&](std::size_t last) {
    if (last - first + 1 >= min_frames) episodes.push_back({first, last});
  };
  for (auto pos : boundary_positions(frames, config.delta_c)) {
    close(pos);
    first = pos + 1;
  }
  close(frames.size() - 1);
  return episodes;
}

std::optional<KeyframeChoice> select_keyframe(std::span<const backends::FrameClassification> scores, double min_prob) {
  if (scores.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].retinal_probability > scores[best].retinal_probability) best = i;
  }
  if (scores[best].retinal_probability < min_prob) return std::nullopt;
  return KeyframeChoice{best, scores[best]};
}

TimeSpan transcript_span(TimeSpan episode, double delta_t_s, double video_duration_s) {
  double start = std::max(0.0, episode.start_s - delta_t_s);
  double end = std::min(video_duration_s, episode.end_s + delta_t_s);
  if (end < start) end = start;
  return {start, end};
}

std::vector<FrameSample> frames_from_embeddings(std::vector<std::vector<double>> embeddings, double fps) {
  if (!(fps > 0.0)) throw ConfigError("frame sample rate must be positive");
  std::vector<FrameSample> frames;
  frames.reserve(embeddings.size());
  for (std::size_t i = 0; i < embeddings.size(); ++i) {
    frames.push_back({static_cast<int>(i), static_cast<double>(i) / fps, std::move(embeddings[i])});
  }
  return frames;
}

}  // namespace mmcurate::segmenter
