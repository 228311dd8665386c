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

#include "mmcurate/common/log.hpp"

#include <atomic>
#include <chrono>
#include <iostream>
#include <mutex>

namespace mmcurate::log {

namespace {

std::mutex g_mutex;
std::ostream* g_sink = &std::cerr;
std::atomic<Level> g_level{Level::kInfo};

constexpr std::string_view level_name(Level level) {
  switch (level) {
    case Level::kDebug: return "debug";
    case Level::kInfo: return "info";
    case Level::kWarn: return "warn";
    case Level::kError: return "error";
    case Level::kOff: return "off";
  }
  return "info";
}

}  // namespace

void set_sink(std::ostream* sink) {
  std::lock_guard lock(g_mutex);
  g_sink = sink;
}

void set_level(Level level) { g_level = level; }

Level level() { return g_level; }

void event(Level lvl, std::string_view message, nlohmann::json fields) {
  if (lvl < g_level.load() || g_level.load() == Level::kOff) return;
  if (!fields.is_object()) fields = nlohmann::json{{"data", std::move(fields)}};
  auto now = std::chrono::system_clock::now().time_since_epoch();
  fields["ts_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(now).count();
  fields["level"] = level_name(lvl);
  fields["msg"] = message;
  std::lock_guard lock(g_mutex);
  if (g_sink != nullptr) *g_sink << fields.dump() << '\n';
}

void decision(std::string_view stage, std::string_view item_id, std::string_view decision,
              std::string_view reason) {
  nlohmann::json fields{{"stage", stage}, {"item_id", item_id}, {"decision", decision}};
  if (!reason.empty()) fields["reason"] = reason;
  event(Level::kInfo, "decision", std::move(fields));
}

}  // namespace mmcurate::log
