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

#include "fixtures.hpp"

#include <cstdio>
#include <cstdlib>

#include "mmcurate/common/error.hpp"

namespace mmcurate::testing {

namespace fs = std::filesystem;
using backends::Modality;
using dataset::InstanceKind;

fs::path source_dir() { return MMCURATE_SOURCE_DIR; }
fs::path corpus_dir() { return source_dir() / "data" / "synthetic"; }
fs::path schema_dir() { return source_dir() / "core" / "schemas"; }

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  std::random_device rd;
  path_ = fs::temp_directory_path() /
          ("mmcurate-" + tag + "-" + std::to_string(rd()) + "-" + std::to_string(counter.fetch_add(1)));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ec;
  fs::remove_all(path_, ec);
}

backends::ChatResponse RecordingChat::chat(const backends::ChatRequest& req) {
  int call = 0;
  {
    std::lock_guard lock(mutex_);
    call = static_cast<int>(requests_.size());
    requests_.push_back(req);
  }
  return {reply_(req, call), "stop"};
}

std::vector<backends::ChatRequest> RecordingChat::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::size_t RecordingChat::calls() const {
  std::lock_guard lock(mutex_);
  return requests_.size();
}

backends::EmbeddingResponse OneHotEmbedder::embed(const backends::EmbeddingRequest& req) {
  if (!req.text) throw ValidationError("one-hot embedder takes text");
  std::lock_guard lock(mutex_);
  auto [it, inserted] = index_.emplace(*req.text, static_cast<int>(index_.size()));
  if (it->second >= dimension_) throw BackendError("one-hot vocabulary exhausted");
  std::vector<double> v(static_cast<std::size_t>(dimension_), 0.0);
  v[static_cast<std::size_t>(it->second)] = 1.0;
  return {std::move(v)};
}

const std::vector<RowCounts>& release_rows() {
  static const std::vector<RowCounts> rows{
      {"vqa/yes_no", {37738, 76207, 31307}},       {"vqa/what", {37202, 74914, 30855}},
      {"vqa/where", {28817, 58221, 23860}},        {"conversation", {32006, 65412, 27023}},
      {"cot", {2745, 6883, 2942}},
  };
  return rows;
}

const std::array<std::size_t, 3>& release_images() {
  static const std::array<std::size_t, 3> images{38943, 80139, 32348};
  return images;
}

dataset::ManifestRecord record(const std::string& image, InstanceKind kind, const std::string& subtype,
                               Modality modality, dataset::Split split) {
  dataset::ManifestRecord r;
  r.instance_id = image + "/" + (kind == InstanceKind::kVqa ? "vqa." + subtype : std::string(dataset::to_string(kind)));
  r.image_id = image;
  r.image_path = "images/" + image + ".png";
  r.kind = kind;
  r.subtype = subtype;
  r.modality = modality;
  r.split = split;
  r.provenance = {image.substr(0, image.find('#')), image, "fixture"};
  return r;
}

dataset::DatasetManifest release_manifest() {
  // Within a modality with n images, conversation holds [0, C) and CoT
  // [0, T). The VQA-only tail [C, n) opens with kSingles images per subtype
  // carrying only that subtype; the rest of the tail carries all three. Each
  // subtype's remaining instances sit at the front of [0, C).
  constexpr std::size_t kSingles = 200;
  std::vector<dataset::ManifestRecord> records;
  records.reserve(540000);
  const auto& rows = release_rows();
  const Modality modalities[] = {Modality::kCFP, Modality::kOCT, Modality::kUWF};
  const char* subtypes[] = {"yes_no", "what", "where"};
  for (std::size_t m = 0; m < 3; ++m) {
    const std::size_t n = release_images()[m];
    const std::size_t c = rows[3].by_modality[m], t = rows[4].by_modality[m];
    if (c > n || t > c || n - c < 3 * kSingles) throw ValidationError("release layout does not fit");
    const std::size_t shared = n - c - 3 * kSingles;
    std::array<std::size_t, 3> front{};
    for (std::size_t k = 0; k < 3; ++k) {
      const std::size_t tail = shared + kSingles;
      if (rows[k].by_modality[m] < tail || rows[k].by_modality[m] - tail > c)
        throw ValidationError("release layout does not fit");
      front[k] = rows[k].by_modality[m] - tail;
    }
    const std::string prefix = std::string(backends::to_string(modalities[m])) + "-";
    for (std::size_t i = 0; i < n; ++i) {
      char id[32];
      std::snprintf(id, sizeof(id), "%s%06zu", prefix.c_str(), i);
      const std::string image = id;
      for (std::size_t k = 0; k < 3; ++k) {
        bool has = false;
        if (i < c) has = i < front[k];
        else if (i < c + 3 * kSingles) has = (i - c) / kSingles == k;
        else has = true;
        if (has) records.push_back(record(image, InstanceKind::kVqa, subtypes[k], modalities[m]));
      }
      if (i < c) records.push_back(record(image, InstanceKind::kConversation, "", modalities[m]));
      if (i < t) records.push_back(record(image, InstanceKind::kCot, "", modalities[m]));
    }
  }
  return dataset::assemble_manifest(std::move(records));
}

std::string random_string(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len, const std::string& alphabet) {
  const std::size_t len = min_len + static_cast<std::size_t>(rng() % (max_len - min_len + 1));
  std::string s;
  for (std::size_t i = 0; i < len; ++i) s.push_back(alphabet[rng() % alphabet.size()]);
  return s;
}

}  // namespace mmcurate::testing
