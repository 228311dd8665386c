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

#include <ostream>
#include <string_view>

#include <nlohmann/json.hpp>

namespace mmcurate::log {

enum class Level { kDebug = 0, kInfo = 1, kWarn = 2, kError = 3, kOff = 4 };

/// Structured events go to this stream as one JSON object per line.
/// Defaults to std::cerr at kInfo.
void set_sink(std::ostream* sink);
void set_level(Level level);
Level level();

void event(Level level, std::string_view message, nlohmann::json fields = nlohmann::json::object());

/// Pipeline decision event: {stage, item_id, decision, reason}.
void decision(std::string_view stage, std::string_view item_id, std::string_view decision,
              std::string_view reason = {});

inline void info(std::string_view message, nlohmann::json fields = nlohmann::json::object()) {
  event(Level::kInfo, message, std::move(fields));
}
inline void warn(std::string_view message, nlohmann::json fields = nlohmann::json::object()) {
  event(Level::kWarn, message, std::move(fields));
}
inline void error(std::string_view message, nlohmann::json fields = nlohmann::json::object()) {
  event(Level::kError, message, std::move(fields));
}

}  // namespace mmcurate::log
