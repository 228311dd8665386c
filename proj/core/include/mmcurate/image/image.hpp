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
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace mmcurate {

/// Axis-aligned pixel box; (x, y) is the top-left corner.
struct Box {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool contains(int px, int py) const { return px >= x && px < right() && py >= y && py < bottom(); }
  bool inside(int width, int height) const {
    return w > 0 && h > 0 && x >= 0 && y >= 0 && right() <= width && bottom() <= height;
  }
  friend bool operator==(const Box&, const Box&) = default;
};

void to_json(nlohmann::json& j, const Box& b);
void from_json(const nlohmann::json& j, Box& b);

/// Smallest box covering every input box. Requires a non-empty list.
Box bounding_hull(std::span<const Box> boxes);

/// Interleaved 8-bit image, row-major, `channels` in {1, 3, 4}.
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, std::uint8_t fill = 0);

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return pixels_.empty(); }

  std::uint8_t& at(int x, int y, int c) { return pixels_[index(x, y, c)]; }
  std::uint8_t at(int x, int y, int c) const { return pixels_[index(x, y, c)]; }

  std::span<std::uint8_t> pixels() { return pixels_; }
  std::span<const std::uint8_t> pixels() const { return pixels_; }

  /// Copy of the box region; the box must lie inside the image.
  Image crop(const Box& box) const;
  void fill(const Box& box, std::uint8_t value);
  /// Copies `src` with its top-left corner placed at (x, y).
  void blit(const Image& src, int x, int y);

  Box full_frame() const { return Box{0, 0, width_, height_}; }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t index(int x, int y, int c) const {
    return (static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x)) *
               static_cast<std::size_t>(channels_) +
           static_cast<std::size_t>(c);
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  std::vector<std::uint8_t> pixels_;
};

Image read_png(const std::filesystem::path& path);
Image decode_png(std::span<const std::uint8_t> data);
std::vector<std::uint8_t> encode_png(const Image& image);
void write_png(const std::filesystem::path& path, const Image& image);

/// SHA-256 over dimensions and pixel bytes.
std::string image_digest(const Image& image);

}  // namespace mmcurate
