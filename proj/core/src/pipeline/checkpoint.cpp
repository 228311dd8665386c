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

#include "mmcurate/pipeline/checkpoint.hpp"

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate::pipeline {

namespace fs = std::filesystem;

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::kIngested: return "ingested";
    case Stage::kSegmented: return "segmented";
    case Stage::kRefined: return "refined";
    case Stage::kSeparated: return "separated";
    case Stage::kScored: return "scored";
    case Stage::kSynthesized: return "synthesized";
    case Stage::kVerified: return "verified";
    case Stage::kAssembled: return "assembled";
  }
  return "?";
}

std::vector<Stage> all_stages() {
  return {Stage::kIngested,  Stage::kSegmented,    Stage::kRefined,  Stage::kSeparated,
          Stage::kScored,    Stage::kSynthesized,  Stage::kVerified, Stage::kAssembled};
}

Stage stage_from_string(std::string_view s) {
  for (auto st : all_stages()) {
    if (to_string(st) == s) return st;
  }
  throw ParseError("unknown stage \"" + std::string(s) + "\"");
}

std::string_view to_string(Status s) {
  switch (s) {
    case Status::kOk: return "ok";
    case Status::kExpanded: return "expanded";
    case Status::kDiscarded: return "discarded";
    case Status::kQuarantined: return "quarantined";
  }
  return "?";
}

Status status_from_string(std::string_view s) {
  for (auto st : {Status::kOk, Status::kExpanded, Status::kDiscarded, Status::kQuarantined}) {
    if (to_string(st) == s) return st;
  }
  throw ParseError("unknown status \"" + std::string(s) + "\"");
}

void to_json(nlohmann::json& j, const CheckpointEntry& e) {
  j = nlohmann::json{{"item_id", e.item_id}, {"stage", to_string(e.stage)}, {"status", to_string(e.status)},
                     {"state", e.state}};
  if (!e.reason.empty()) j["reason"] = e.reason;
  if (e.attempts > 0) j["attempts"] = e.attempts;
  if (!e.children.empty()) j["children"] = e.children;
}

void from_json(const nlohmann::json& j, CheckpointEntry& e) {
  e.item_id = j.at("item_id").get<std::string>();
  e.stage = stage_from_string(j.at("stage").get<std::string>());
  e.status = status_from_string(j.at("status").get<std::string>());
  e.state = j.value("state", std::string());
  e.reason = j.value("reason", std::string());
  e.attempts = j.value("attempts", 0);
  e.children = j.value("children", std::vector<std::string>{});
}

RunStore::RunStore(fs::path dir) : dir_(std::move(dir)) {}
RunStore::~RunStore() = default;

bool RunStore::exists() const { return fs::exists(dir_ / "run.json"); }

void RunStore::open(const std::string& run_id, const std::string& config_digest) {
  fs::create_directories(dir_ / "artifacts");
  const auto header = dir_ / "run.json";
  if (fs::exists(header)) {
    const auto prior = read_json_file(header);
    const auto prior_digest = prior.value("config_digest", std::string());
    if (prior_digest != config_digest)
      throw ResumeError("run " + dir_.string() + " was created with config digest " + prior_digest +
                        " but the current config digests to " + config_digest + "; refusing to resume");
  } else {
    write_json_file(header, {{"run_id", run_id}, {"config_digest", config_digest}});
  }
  // A killed process can leave a partial last line; drop it before appending.
  const auto log_path = dir_ / "checkpoint.jsonl";
  if (fs::exists(log_path)) {
    auto text = read_file(log_path);
    if (!text.empty() && text.back() != '\n') {
      text.erase(text.rfind('\n') == std::string::npos ? 0 : text.rfind('\n') + 1);
      write_file_atomic(log_path, text);
    }
  }
  log_ = std::make_unique<JsonlAppender>(log_path);
}

std::string RunStore::put(const nlohmann::json& state) {
  const auto text = state.dump();
  const auto digest = sha256_hex(text);
  const auto path = dir_ / "artifacts" / digest.substr(0, 2) / (digest + ".json");
  if (!fs::exists(path)) {
    fs::create_directories(path.parent_path());
    write_file_atomic(path, text);
  }
  return digest;
}

nlohmann::json RunStore::get(const std::string& digest) const {
  const auto path = dir_ / "artifacts" / digest.substr(0, 2) / (digest + ".json");
  const auto text = read_file(path);
  if (sha256_hex(text) != digest) throw ResumeError("artifact " + digest + " is corrupted");
  return nlohmann::json::parse(text);
}

void RunStore::commit(const CheckpointEntry& entry) {
  if (!log_) throw ResumeError("run store is not open");
  log_->append(entry);
}

std::vector<CheckpointEntry> RunStore::entries() const {
  std::vector<CheckpointEntry> out;
  const auto path = dir_ / "checkpoint.jsonl";
  if (!fs::exists(path)) return out;
  const auto text = read_file(path);
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto eol = text.find('\n', pos);
    if (eol == std::string::npos) break;  // torn tail
    const auto line = std::string_view(text).substr(pos, eol - pos);
    pos = eol + 1;
    if (line.empty()) continue;
    try {
      out.push_back(nlohmann::json::parse(line).get<CheckpointEntry>());
    } catch (const nlohmann::json::exception& e) {
      throw ResumeError("corrupted checkpoint line in " + path.string() + ": " + e.what());
    }
  }
  return out;
}

std::map<std::string, CheckpointEntry> RunStore::latest() const {
  std::map<std::string, CheckpointEntry> out;
  for (auto& e : entries()) out[e.item_id] = std::move(e);
  return out;
}

}  // namespace mmcurate::pipeline
