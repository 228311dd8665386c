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

#include "mmcurate/dataset/stats.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "mmcurate/common/error.hpp"

namespace mmcurate::dataset {

namespace {

std::string with_commas(std::size_t n) {
  auto digits = std::to_string(n);
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

const std::vector<std::string>& modalities() {
  static const std::vector<std::string> m{"CFP", "OCT", "UWF"};
  return m;
}

}  // namespace

const StatsRow& DatasetStats::row(std::string_view key) const {
  for (const auto& r : rows) {
    if (r.key == key) return r;
  }
  throw ValidationError("no stats row \"" + std::string(key) + "\"");
}

DatasetStats compute_stats(const DatasetManifest& manifest) {
  std::vector<std::string> order = standard_rows();
  std::map<std::string, StatsRow> rows;
  std::map<std::string, std::set<std::string_view>> row_images;
  std::map<std::string, std::map<std::string, std::set<std::string_view>>> row_modal;
  StatsRow total;
  total.key = "total";
  std::set<std::string_view> all_images;
  std::map<std::string, std::set<std::string_view>> all_modal;

  for (const auto& r : manifest.records) {
    const auto key = row_key(r);
    if (std::find(order.begin(), order.end(), key) == order.end()) order.push_back(key);
    auto& row = rows[key];
    row.key = key;
    const std::string modality(backends::to_string(r.modality));
    for (auto* s : {&row, &total}) {
      ++s->instances;
      if (r.split == Split::kTrain) ++s->train;
      else if (r.split == Split::kTest) ++s->test;
      else ++s->unsplit;
    }
    row_images[key].insert(r.image_id);
    row_modal[key][modality].insert(r.image_id);
    all_images.insert(r.image_id);
    all_modal[modality].insert(r.image_id);
  }

  DatasetStats stats;
  for (const auto& key : order) {
    StatsRow row = rows.count(key) ? rows[key] : StatsRow{};
    row.key = key;
    row.images = row_images[key].size();
    for (const auto& m : modalities()) row.images_by_modality[m] = row_modal[key][m].size();
    stats.rows.push_back(std::move(row));
  }
  total.images = all_images.size();
  for (const auto& m : modalities()) total.images_by_modality[m] = all_modal[m].size();
  stats.rows.push_back(std::move(total));
  return stats;
}

nlohmann::json to_json(const DatasetStats& stats) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : stats.rows) {
    rows.push_back({{"key", r.key},
                    {"instances", r.instances},
                    {"train", r.train},
                    {"test", r.test},
                    {"unsplit", r.unsplit},
                    {"images", r.images},
                    {"images_by_modality", r.images_by_modality}});
  }
  return nlohmann::json{{"rows", rows}};
}

std::string format_table(const DatasetStats& stats) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"Data type", "Subtype", "Instances", "Train", "Test", "Images", "CFP", "OCT", "UWF"});
  for (const auto& r : stats.rows) {
    std::string kind = r.key, subtype = "N/A";
    if (auto slash = r.key.find('/'); slash != std::string::npos) {
      kind = r.key.substr(0, slash);
      subtype = r.key.substr(slash + 1);
    }
    if (kind == "vqa") kind = "VQA";
    else if (kind == "conversation") kind = "Conversation";
    else if (kind == "cot") kind = "CoT";
    else if (kind == "total") kind = "Total";
    if (subtype == "yes_no") subtype = "Yes/No";
    else if (subtype == "what") subtype = "What";
    else if (subtype == "where") subtype = "Where";
    const bool has_test = r.test > 0 || r.key == "total" || kind == "VQA";
    cells.push_back({kind, subtype, with_commas(r.instances), with_commas(r.train),
                     has_test ? with_commas(r.test) : "--", with_commas(r.images),
                     with_commas(r.images_by_modality.at("CFP")), with_commas(r.images_by_modality.at("OCT")),
                     with_commas(r.images_by_modality.at("UWF"))});
  }
  std::vector<std::size_t> width(cells.front().size(), 0);
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : cells) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) os << "  ";
      if (c < 2) os << std::left << std::setw(static_cast<int>(width[c])) << row[c];
      else os << std::right << std::setw(static_cast<int>(width[c])) << row[c];
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace mmcurate::dataset
