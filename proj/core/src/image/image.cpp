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

#include "mmcurate/image/image.hpp"

#include <algorithm>
#include <cstring>

#include <png.h>

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate {

void to_json(nlohmann::json& j, const Box& b) { j = nlohmann::json{{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}}; }

void from_json(const nlohmann::json& j, Box& b) {
  b.x = j.at("x").get<int>();
  b.y = j.at("y").get<int>();
  b.w = j.at("w").get<int>();
  b.h = j.at("h").get<int>();
}

Box bounding_hull(std::span<const Box> boxes) {
  if (boxes.empty()) throw ValidationError("bounding hull of zero boxes");
  int x0 = boxes[0].x, y0 = boxes[0].y, x1 = boxes[0].right(), y1 = boxes[0].bottom();
  for (const auto& b : boxes.subspan(1)) {
    x0 = std::min(x0, b.x);
    y0 = std::min(y0, b.y);
    x1 = std::max(x1, b.right());
    y1 = std::max(y1, b.bottom());
  }
  return Box{x0, y0, x1 - x0, y1 - y0};
}

Image::Image(int width, int height, int channels, std::uint8_t fill)
    : width_(width), height_(height), channels_(channels) {
  if (width <= 0 || height <= 0) throw ValidationError("image dimensions must be positive");
  if (channels != 1 && channels != 3 && channels != 4) throw ValidationError("unsupported channel count");
  pixels_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                     static_cast<std::size_t>(channels),
                 fill);
}

Image Image::crop(const Box& box) const {
  if (!box.inside(width_, height_)) throw ValidationError("crop box outside image bounds");
  Image out(box.w, box.h, channels_);
  auto row_bytes = static_cast<std::size_t>(box.w) * static_cast<std::size_t>(channels_);
  for (int row = 0; row < box.h; ++row) {
    std::memcpy(&out.pixels_[out.index(0, row, 0)], &pixels_[index(box.x, box.y + row, 0)], row_bytes);
  }
  return out;
}

void Image::fill(const Box& box, std::uint8_t value) {
  int x0 = std::max(box.x, 0), y0 = std::max(box.y, 0);
  int x1 = std::min(box.right(), width_), y1 = std::min(box.bottom(), height_);
  for (int y = y0; y < y1; ++y) {
    if (x1 <= x0) break;
    std::memset(&pixels_[index(x0, y, 0)], value,
                static_cast<std::size_t>(x1 - x0) * static_cast<std::size_t>(channels_));
  }
}

void Image::blit(const Image& src, int x, int y) {
  if (src.channels_ != channels_) throw ValidationError("blit channel mismatch");
  if (!Box{x, y, src.width_, src.height_}.inside(width_, height_))
    throw ValidationError("blit target outside canvas");
  auto row_bytes = static_cast<std::size_t>(src.width_) * static_cast<std::size_t>(channels_);
  for (int row = 0; row < src.height_; ++row) {
    std::memcpy(&pixels_[index(x, y + row, 0)], &src.pixels_[src.index(0, row, 0)], row_bytes);
  }
}

namespace {

png_uint_32 format_for(int channels) {
  switch (channels) {
    case 1: return PNG_FORMAT_GRAY;
    case 3: return PNG_FORMAT_RGB;
    case 4: return PNG_FORMAT_RGBA;
    default: throw ValidationError("unsupported channel count");
  }
}

Image finish_read(png_image& img) {
  int channels = (img.format & PNG_FORMAT_FLAG_ALPHA) ? 4 : ((img.format & PNG_FORMAT_FLAG_COLOR) ? 3 : 1);
  img.format = format_for(channels);
  Image out(static_cast<int>(img.width), static_cast<int>(img.height), channels);
  if (!png_image_finish_read(&img, nullptr, out.pixels().data(), 0, nullptr)) {
    std::string msg = img.message;
    png_image_free(&img);
    throw ValidationError("png decode failed: " + msg);
  }
  return out;
}

}  // namespace

Image decode_png(std::span<const std::uint8_t> data) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&img, data.data(), data.size()))
    throw ValidationError(std::string("png decode failed: ") + img.message);
  return finish_read(img);
}

Image read_png(const std::filesystem::path& path) {
  auto bytes = read_file(path);
  return decode_png(std::span(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

std::vector<std::uint8_t> encode_png(const Image& image) {
  png_image img;
  std::memset(&img, 0, sizeof(img));
  img.version = PNG_IMAGE_VERSION;
  img.width = static_cast<png_uint_32>(image.width());
  img.height = static_cast<png_uint_32>(image.height());
  img.format = format_for(image.channels());
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&img, nullptr, &size, 0, image.pixels().data(), 0, nullptr))
    throw Error(std::string("png encode failed: ") + img.message);
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&img, out.data(), &size, 0, image.pixels().data(), 0, nullptr))
    throw Error(std::string("png encode failed: ") + img.message);
  out.resize(size);
  return out;
}

void write_png(const std::filesystem::path& path, const Image& image) {
  auto bytes = encode_png(image);
  write_file_atomic(path, std::string_view(reinterpret_cast<const char*>(bytes.data()), bytes.size()));
}

std::string image_digest(const Image& image) {
  std::string header = std::to_string(image.width()) + "x" + std::to_string(image.height()) + "x" +
                       std::to_string(image.channels()) + ":";
  std::string buf = header;
  buf.append(reinterpret_cast<const char*>(image.pixels().data()), image.pixels().size());
  return sha256_hex(buf);
}

}  // namespace mmcurate
