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

#include <string_view>

#include <nlohmann/json.hpp>

namespace mmcurate::synthesis {

enum class JsonShape { kObject, kArray };

/// Tolerant extraction of a structured value from model output. Code fences
/// and any leading or trailing prose are ignored; the first balanced JSON
/// value of the requested shape that parses is returned. Throws ParseError
/// when none exists.
nlohmann::json parse_llm_json(std::string_view text, JsonShape shape);

}  // namespace mmcurate::synthesis
