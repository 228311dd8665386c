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
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::dataset {

struct SplitSpec {
  std::map<std::string, int> targets{{"yes_no", 450}, {"what", 451}, {"where", 333}};
  std::uint64_t seed = 0;
  std::vector<std::string> strata{"modality", "condition"};

  void validate() const;
};

void to_json(nlohmann::json& j, const SplitSpec& s);
void from_json(const nlohmann::json& j, SplitSpec& s);

/// Vocabulary terms occurring as whole phrases in `text`, in vocabulary
/// order.
std::vector<std::string> extract_condition_tags(std::string_view text, const std::vector<std::string>& vocabulary);
const std::vector<std::string>& builtin_condition_vocabulary();

/// Labels exactly targets[subtype] VQA instances as test and everything else
/// as train. A test image carries only test VQA instances, so candidates
/// are images whose instances are all VQA; the mix of subtype combinations
/// is solved first, then images are drawn per combination by stratified
/// proportional allocation (largest remainder) with a seeded shuffle inside
/// each stratum. Throws ValidationError naming the deficient subtype when
/// the targets cannot be met.
DatasetManifest split_eval(DatasetManifest manifest, const SplitSpec& spec);

/// Largest-remainder apportionment of `total` over `weights`; ties go to the
/// lower index.
std::vector<std::size_t> largest_remainder(const std::vector<std::size_t>& weights, std::size_t total);

}  // namespace mmcurate::dataset
