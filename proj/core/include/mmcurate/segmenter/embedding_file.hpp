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

#include <filesystem>
#include <vector>

namespace mmcurate::segmenter {

/// Precomputed frame embeddings.
///
/// Layout: one line of JSON header terminated by '\n', e.g.
///   {"count": 120, "dim": 768, "fps": 1.0}
/// followed by count*dim little-endian IEEE-754 float32 values, row-major.
/// "fps" is optional.
struct EmbeddingFile {
  int dim = 0;
  double fps = 0.0;  // 0 when absent from the header
  std::vector<std::vector<double>> rows;  // renormalized to unit length
};

/// Throws ValidationError on a malformed header, short payload, or a
/// zero-norm row.
EmbeddingFile read_embedding_file(const std::filesystem::path& path);
void write_embedding_file(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows, double fps);

}  // namespace mmcurate::segmenter
