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

#include "mmcurate/segmenter/embedding_file.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>

#include <nlohmann/json.hpp>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate::segmenter {

namespace {

float load_le_float(const char* p) {
  std::uint32_t bits = 0;
  for (int i = 3; i >= 0; --i) bits = (bits << 8) | static_cast<unsigned char>(p[i]);
  return std::bit_cast<float>(bits);
}

void store_le_float(std::string& out, float v) {
  auto bits = std::bit_cast<std::uint32_t>(v);
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
}

}  // namespace

EmbeddingFile read_embedding_file(const std::filesystem::path& path) {
  const std::string raw = read_file(path);
  auto eol = raw.find('\n');
  if (eol == std::string::npos) throw ValidationError(path.string() + ": missing embedding header line");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(raw.substr(0, eol));
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError(path.string() + ": bad embedding header: " + e.what());
  }
  if (!header.is_object() || !header.contains("count") || !header.contains("dim"))
    throw ValidationError(path.string() + ": header needs count and dim");
  const auto count = header["count"].get<long long>();
  const auto dim = header["dim"].get<long long>();
  if (count < 0 || dim <= 0) throw ValidationError(path.string() + ": invalid count/dim");
  const auto expected = static_cast<std::size_t>(count) * static_cast<std::size_t>(dim) * 4;
  if (raw.size() - eol - 1 != expected)
    throw ValidationError(path.string() + ": payload is " + std::to_string(raw.size() - eol - 1) + " bytes, expected " +
                          std::to_string(expected));
  EmbeddingFile out;
  out.dim = static_cast<int>(dim);
  out.fps = header.value("fps", 0.0);
  const char* p = raw.data() + eol + 1;
  out.rows.reserve(static_cast<std::size_t>(count));
  for (long long r = 0; r < count; ++r) {
    std::vector<double> row(static_cast<std::size_t>(dim));
    double norm2 = 0.0;
    for (auto& x : row) {
      x = load_le_float(p);
      p += 4;
      if (!std::isfinite(x)) throw ValidationError(path.string() + ": non-finite embedding value");
      norm2 += x * x;
    }
    if (norm2 == 0.0) throw ValidationError(path.string() + ": zero-norm embedding at row " + std::to_string(r));
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& x : row) x *= inv;
    out.rows.push_back(std::move(row));
  }
  return out;
}

void write_embedding_file(const std::filesystem::path& path, const std::vector<std::vector<double>>& rows, double fps) {
  const std::size_t dim = rows.empty() ? 1 : rows.front().size();
  nlohmann::json header{{"count", rows.size()}, {"dim", dim}};
  if (fps > 0.0) header["fps"] = fps;
  std::string out = header.dump() + "\n";
  for (const auto& row : rows) {
    if (row.size() != dim) throw ValidationError("embedding rows must share one dimension");
    for (double x : row) store_le_float(out, static_cast<float>(x));
  }
  write_file_atomic(path, out);
}

}  // namespace mmcurate::segmenter
