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

#include <array>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::testing {

std::filesystem::path source_dir();
std::filesystem::path corpus_dir();
std::filesystem::path schema_dir();

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag = "t");
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

/// Chat backend answering from a callback and recording every request.
class RecordingChat final : public backends::ChatBackend {
 public:
  using Reply = std::function<std::string(const backends::ChatRequest&, int call)>;
  explicit RecordingChat(Reply reply) : reply_(std::move(reply)) {}

  backends::ChatResponse chat(const backends::ChatRequest& req) override;

  std::vector<backends::ChatRequest> requests() const;
  std::size_t calls() const;

 private:
  Reply reply_;
  mutable std::mutex mutex_;
  std::vector<backends::ChatRequest> requests_;
};

/// One-hot token embeddings over a growing vocabulary: distinct tokens are
/// orthogonal, equal tokens identical.
class OneHotEmbedder final : public backends::EmbeddingBackend {
 public:
  explicit OneHotEmbedder(int dimension = 4096) : dimension_(dimension) {}
  backends::EmbeddingResponse embed(const backends::EmbeddingRequest& req) override;
  int dimension() const override { return dimension_; }

 private:
  int dimension_;
  std::mutex mutex_;
  std::map<std::string, int> index_;
};

/// Per-modality image counts for each table row, in CFP/OCT/UWF order.
struct RowCounts {
  std::string key;
  std::array<std::size_t, 3> by_modality;
  std::size_t total() const { return by_modality[0] + by_modality[1] + by_modality[2]; }
};

/// Image counts of the released dataset per row and modality, plus the
/// number of distinct images per modality.
const std::vector<RowCounts>& release_rows();
const std::array<std::size_t, 3>& release_images();

/// Unsplit manifest with exactly one instance per image per row and the
/// release's per-modality image counts. Within each modality a block of
/// VQA-only images precedes the images that also carry non-VQA instances.
dataset::DatasetManifest release_manifest();

/// Small manifest record builder.
dataset::ManifestRecord record(const std::string& image, dataset::InstanceKind kind, const std::string& subtype,
                               backends::Modality modality = backends::Modality::kCFP,
                               dataset::Split split = dataset::Split::kUnsplit);

std::string random_string(std::mt19937_64& rng, std::size_t min_len, std::size_t max_len,
                          const std::string& alphabet = "abcdefghijklmnopqrstuvwxyz ");

}  // namespace mmcurate::testing
