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
#include <span>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mmcurate {

std::string sha256_hex(std::string_view data);
std::string sha256_hex(std::span<const std::uint8_t> data);

/// Digest of the canonical (sorted-key, compact) serialization.
std::string json_digest(const nlohmann::json& value);

/// First 8 bytes of the SHA-256 as an integer; used to seed mock generators.
std::uint64_t digest_seed(std::string_view data);

std::string base64_encode(std::span<const std::uint8_t> data);
std::string base64_encode(std::string_view data);
std::string base64_decode(std::string_view text);

}  // namespace mmcurate
