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

#include "mmcurate/refiner/refiner.hpp"

#include <algorithm>
#include <limits>

#include "mmcurate/common/assets.hpp"
#include "mmcurate/common/error.hpp"

namespace mmcurate::refiner {

void PromptDictionaries::validate() const {
  if (positive.empty() || negative.empty()) throw ConfigError("prompt dictionaries must both be non-empty");
  auto in_range = [](double t) { return t >= -1.0 && t <= 1.0; };
  if (!in_range(tau_pos) || !in_range(tau_neg)) throw ConfigError("dictionary thresholds must lie in [-1, 1]");
}

PromptDictionaries PromptDictionaries::builtin() {
  PromptDictionaries d;
  d.positive = parse_term_lines(asset("vocab/positive_prompts.txt"));
  d.negative = parse_term_lines(asset("vocab/negative_prompts.txt"));
  return d;
}

void to_json(nlohmann::json& j, const PromptDictionaries& d) {
  j = nlohmann::json{{"positive", d.positive}, {"negative", d.negative}, {"tau_pos", d.tau_pos}, {"tau_neg", d.tau_neg}};
}

void from_json(const nlohmann::json& j, PromptDictionaries& d) {
  PromptDictionaries base = PromptDictionaries::builtin();
  d.positive = j.value("positive", base.positive);
  d.negative = j.value("negative", base.negative);
  d.tau_pos = j.value("tau_pos", base.tau_pos);
  d.tau_neg = j.value("tau_neg", base.tau_neg);
}

void to_json(nlohmann::json& j, const RegionDecision& d) {
  j = nlohmann::json{{"box", d.box},
                     {"kept", d.kept},
                     {"max_positive_score", d.max_positive_score},
                     {"max_negative_score", d.max_negative_score}};
}

void from_json(const nlohmann::json& j, RegionDecision& d) {
  d.box = j.at("box").get<Box>();
  d.kept = j.at("kept").get<bool>();
  d.max_positive_score = j.at("max_positive_score").get<double>();
  d.max_negative_score = j.at("max_negative_score").get<double>();
}

bool decide(double max_positive, double max_negative, const PromptDictionaries& dicts) {
  return max_positive >= dicts.tau_pos && max_negative < dicts.tau_neg;
}

std::vector<RegionDecision> filter_regions(const backends::ImagePayload& image, backends::VisionBackend& vision,
                                           const PromptDictionaries& dicts) {
  dicts.validate();
  std::vector<Box> boxes;
  for (const auto& r : vision.propose_regions(image).regions) {
    if (!r.box.inside(image.image.width(), image.image.height()))
      throw ValidationError("region proposal outside the frame for " + image.ref);
    boxes.push_back(r.box);
  }
  if (boxes.empty()) boxes.push_back(image.image.full_frame());

  std::vector<std::string> prompts = dicts.positive;
  prompts.insert(prompts.end(), dicts.negative.begin(), dicts.negative.end());
  const auto npos = dicts.positive.size();

  std::vector<RegionDecision> out;
  out.reserve(boxes.size());
  for (const auto& box : boxes) {
    auto sim = vision.score_image_text({image, box, prompts});
    if (sim.scores.size() != prompts.size())
      throw ValidationError("similarity backend returned " + std::to_string(sim.scores.size()) + " scores for " +
                            std::to_string(prompts.size()) + " prompts");
    RegionDecision d;
    d.box = box;
    d.max_positive_score = *std::max_element(sim.scores.begin(), sim.scores.begin() + static_cast<long>(npos));
    d.max_negative_score = *std::max_element(sim.scores.begin() + static_cast<long>(npos), sim.scores.end());
    d.kept = decide(d.max_positive_score, d.max_negative_score, dicts);
    out.push_back(d);
  }
  return out;
}

void to_json(nlohmann::json& j, const Layout& l) {
  j = nlohmann::json{{"source_width", l.source_width},
                     {"source_height", l.source_height},
                     {"hull", l.hull},
                     {"regions", l.regions},
                     {"mask_value", l.mask_value}};
}

void from_json(const nlohmann::json& j, Layout& l) {
  l.source_width = j.at("source_width").get<int>();
  l.source_height = j.at("source_height").get<int>();
  l.hull = j.at("hull").get<Box>();
  l.regions = j.at("regions").get<std::vector<Box>>();
  l.mask_value = j.value("mask_value", std::uint8_t{0});
}

Composition compose_refined_image(const Image& image, const std::vector<Box>& kept, std::uint8_t mask_value) {
  if (kept.empty()) throw ValidationError("no_clinical_region");
  for (const auto& b : kept) {
    if (!b.inside(image.width(), image.height())) throw ValidationError("kept region outside the frame");
  }
  Composition out;
  out.layout.source_width = image.width();
  out.layout.source_height = image.height();
  out.layout.hull = bounding_hull(kept);
  out.layout.regions = kept;
  out.layout.mask_value = mask_value;
  const Box& hull = out.layout.hull;
  out.image = Image(hull.w, hull.h, image.channels(), mask_value);
  for (const auto& b : kept) out.image.blit(image.crop(b), b.x - hull.x, b.y - hull.y);
  return out;
}

Image mask_boxes(const Image& image, const std::vector<Box>& boxes, std::uint8_t mask_value) {
  Image out = image;
  for (const auto& b : boxes) out.fill(b, mask_value);
  return out;
}

Deidentified deidentify(const backends::ImagePayload& image, backends::VisionBackend& detector,
                        std::uint8_t mask_value) {
  Deidentified out;
  out.detections = detector.detect_sensitive(image).detections;
  std::vector<Box> boxes;
  boxes.reserve(out.detections.size());
  for (const auto& d : out.detections) boxes.push_back(d.box);
  out.image = mask_boxes(image.image, boxes, mask_value);
  return out;
}

}  // namespace mmcurate::refiner
