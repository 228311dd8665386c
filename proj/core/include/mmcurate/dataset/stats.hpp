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
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::dataset {

struct StatsRow {
  std::string key;  // e.g. "vqa/yes_no"; "total" for the last row
  std::size_t instances = 0;
  std::size_t train = 0;
  std::size_t test = 0;
  std::size_t unsplit = 0;
  std::size_t images = 0;  // unique images
  std::map<std::string, std::size_t> images_by_modality;  // CFP / OCT / UWF
};

struct DatasetStats {
  std::vector<StatsRow> rows;  // standard rows, then any others, then total
  const StatsRow& row(std::string_view key) const;
  const StatsRow& total() const { return rows.back(); }
};

/// Per row instances, split counts, and unique images by modality. Rows
/// without instances are kept so the layout is stable.
DatasetStats compute_stats(const DatasetManifest& manifest);

nlohmann::json to_json(const DatasetStats& stats);
/// Aligned table: Data type, Subtype, Instances, Train, Test, Images, CFP,
/// OCT, UWF.
std::string format_table(const DatasetStats& stats);

}  // namespace mmcurate::dataset
