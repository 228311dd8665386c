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
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/image/image.hpp"

namespace mmcurate::refiner {

struct PromptDictionaries {
  std::vector<std::string> positive;
  std::vector<std::string> negative;
  double tau_pos = 0.30;
  double tau_neg = 0.30;

  /// Throws ConfigError.
  void validate() const;
  /// Dictionaries shipped with the library.
  static PromptDictionaries builtin();
};

void to_json(nlohmann::json& j, const PromptDictionaries& d);
void from_json(const nlohmann::json& j, PromptDictionaries& d);

struct RegionDecision {
  Box box;
  bool kept = false;
  double max_positive_score = 0.0;
  double max_negative_score = 0.0;
};

void to_json(nlohmann::json& j, const RegionDecision& d);
void from_json(const nlohmann::json& j, RegionDecision& d);

bool decide(double max_positive, double max_negative, const PromptDictionaries& dicts);

/// Scores every proposed region against both dictionaries in one request
/// (positive prompts first). Falls back to the whole frame when nothing is
/// proposed. Out-of-frame proposals raise ValidationError.
std::vector<RegionDecision> filter_regions(const backends::ImagePayload& image, backends::VisionBackend& vision,
                                           const PromptDictionaries& dicts);

struct Layout {
  int source_width = 0;
  int source_height = 0;
  Box hull;
  std::vector<Box> regions;  // original coordinates
  std::uint8_t mask_value = 0;
};

void to_json(nlohmann::json& j, const Layout& l);
void from_json(const nlohmann::json& j, Layout& l);

struct Composition {
  Image image;
  Layout layout;
};

/// Canvas the size of the kept regions' bounding hull, filled with
/// mask_value, with each kept region copied at its offset from the hull.
/// Throws ValidationError if `kept` is empty or a box leaves the frame.
Composition compose_refined_image(const Image& image, const std::vector<Box>& kept, std::uint8_t mask_value = 0);

struct Deidentified {
  Image image;
  std::vector<backends::Detection> detections;
};

/// Sets every pixel inside a detection box (clipped to the frame) to
/// mask_value in all channels.
Image mask_boxes(const Image& image, const std::vector<Box>& boxes, std::uint8_t mask_value = 0);
Deidentified deidentify(const backends::ImagePayload& image, backends::VisionBackend& detector,
                        std::uint8_t mask_value = 0);

}  // namespace mmcurate::refiner
