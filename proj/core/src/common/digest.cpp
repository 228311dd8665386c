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

#include "mmcurate/common/digest.hpp"

#include <array>

#include <openssl/evp.h>
#include <openssl/sha.h>

#include "mmcurate/common/error.hpp"

namespace mmcurate {

namespace {

std::string to_hex(const unsigned char* data, std::size_t n) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(n * 2, '0');
  for (std::size_t i = 0; i < n; ++i) {
    out[2 * i] = kHex[data[i] >> 4];
    out[2 * i + 1] = kHex[data[i] & 0xF];
  }
  return out;
}

std::array<unsigned char, SHA256_DIGEST_LENGTH> sha256_raw(const void* data, std::size_t n) {
  std::array<unsigned char, SHA256_DIGEST_LENGTH> md{};
  SHA256(static_cast<const unsigned char*>(data), n, md.data());
  return md;
}

}  // namespace

std::string sha256_hex(std::string_view data) {
  auto md = sha256_raw(data.data(), data.size());
  return to_hex(md.data(), md.size());
}

std::string sha256_hex(std::span<const std::uint8_t> data) {
  auto md = sha256_raw(data.data(), data.size());
  return to_hex(md.data(), md.size());
}

std::string json_digest(const nlohmann::json& value) {
  // nlohmann::json objects are std::map backed, so dump() is key-sorted.
  return sha256_hex(value.dump());
}

std::uint64_t digest_seed(std::string_view data) {
  auto md = sha256_raw(data.data(), data.size());
  std::uint64_t seed = 0;
  for (int i = 0; i < 8; ++i) seed = (seed << 8) | md[i];
  return seed;
}

std::string base64_encode(std::span<const std::uint8_t> data) {
  std::string out(4 * ((data.size() + 2) / 3), '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), data.data(),
                          static_cast<int>(data.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::string base64_encode(std::string_view data) {
  return base64_encode(std::span(reinterpret_cast<const std::uint8_t*>(data.data()), data.size()));
}

std::string base64_decode(std::string_view text) {
  if (text.size() % 4 != 0) throw ValidationError("base64 length is not a multiple of 4");
  std::string out(3 * text.size() / 4, '\0');
  int n = EVP_DecodeBlock(reinterpret_cast<unsigned char*>(out.data()),
                          reinterpret_cast<const unsigned char*>(text.data()),
                          static_cast<int>(text.size()));
  if (n < 0) throw ValidationError("invalid base64 payload");
  // EVP_DecodeBlock does not account for padding.
  std::size_t pad = 0;
  if (!text.empty() && text.back() == '=') ++pad;
  if (text.size() > 1 && text[text.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  return out;
}

}  // namespace mmcurate
