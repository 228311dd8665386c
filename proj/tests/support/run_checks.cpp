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

#include "run_checks.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::testing {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fold(const std::string& s) {
  static const std::pair<std::string, std::string> quotes[] = {
      {"\xE2\x80\x9C", "\""}, {"\xE2\x80\x9D", "\""}, {"\xE2\x80\x98", "'"}, {"\xE2\x80\x99", "'"}};
  std::string t = s;
  for (const auto& [from, to] : quotes) {
    for (auto pos = t.find(from); pos != std::string::npos; pos = t.find(from, pos)) t.replace(pos, from.size(), to);
  }
  std::string out;
  bool space = false;
  for (char c : t) {
    if (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
      space = true;
      continue;
    }
    if (space && !out.empty()) out += ' ';
    space = false;
    out += c;
  }
  return out;
}

json load_state(const fs::path& run_dir, const std::string& digest) {
  return read_json_file(run_dir / "artifacts" / digest.substr(0, 2) / (digest + ".json"));
}

}  // namespace

bool loose_substring(const std::string& needle, const std::string& haystack) {
  const auto n = fold(needle);
  return !n.empty() && fold(haystack).find(n) != std::string::npos;
}

std::vector<std::string> check_run_invariants(const fs::path& run_dir) {
  std::vector<std::string> bad;
  // Parsed without the library's own validation so violations surface here.
  dataset::DatasetManifest manifest;
  for (const auto& j : read_jsonl(run_dir / "manifest.jsonl")) manifest.records.push_back(j.get<dataset::ManifestRecord>());

  std::map<std::string, std::string> raw;
  for (const auto& s : read_jsonl(run_dir / "sources.jsonl"))
    raw[s.at("episode_id").get<std::string>()] = s.at("raw_transcript").get<std::string>();

  // Keep verdicts per instance from the verified artifacts of assembled episodes.
  std::map<std::string, std::string> verified_state, last_stage;
  for (const auto& e : read_jsonl(run_dir / "checkpoint.jsonl")) {
    const auto id = e.at("item_id").get<std::string>();
    last_stage[id] = e.at("stage").get<std::string>() + ":" + e.at("status").get<std::string>();
    if (e.at("stage") == "verified" && e.at("status") == "ok") verified_state[id] = e.at("state").get<std::string>();
  }
  std::set<std::string> kept;
  for (const auto& [id, stage] : last_stage) {
    if (stage != "assembled:ok") continue;
    auto it = verified_state.find(id);
    if (it == verified_state.end()) {
      bad.push_back(id + ": assembled without a verified state");
      continue;
    }
    const auto state = load_state(run_dir, it->second);
    for (const auto& d : state.at("verification")) {
      if (d.at("answer") == "keep") kept.insert(d.at("instance_ref").get<std::string>());
    }
  }

  std::set<std::string> ids, test_images, train_images;
  for (const auto& r : manifest.records) {
    ids.insert(r.instance_id);
    if (!kept.count(r.instance_id)) bad.push_back(r.instance_id + ": in the manifest without a keep verdict");
    if (!fs::is_regular_file(run_dir / r.image_path)) bad.push_back(r.instance_id + ": missing image " + r.image_path);

    auto src = raw.find(r.provenance.episode_id);
    if (src == raw.end()) {
      bad.push_back(r.instance_id + ": no source transcript");
    } else {
      for (const auto& s : r.context.scenes) {
        if (!loose_substring(s.verbatim_scene_text, src->second))
          bad.push_back(r.instance_id + ": scene " + std::to_string(s.scene_id) + " is not verbatim");
      }
    }
    if (r.context.scenes.empty()) bad.push_back(r.instance_id + ": no scenes in context");

    const auto& p = r.payload;
    switch (r.kind) {
      case dataset::InstanceKind::kVqa: {
        const auto q = p.value("question", ""), a = p.value("answer", "");
        if (q.empty() || a.empty() || q == "N/A" || a == "N/A") bad.push_back(r.instance_id + ": empty or N/A VQA");
        if (r.subtype == "yes_no" && a.rfind("Yes", 0) != 0 && a.rfind("No", 0) != 0)
          bad.push_back(r.instance_id + ": yes/no answer does not start with Yes or No");
        break;
      }
      case dataset::InstanceKind::kConversation: {
        const auto& turns = p.at("turns");
        if (turns.size() != 6 && turns.size() != 8)
          bad.push_back(r.instance_id + ": conversation has " + std::to_string(turns.size()) + " turns");
        for (std::size_t i = 0; i < turns.size(); ++i) {
          if (turns[i].at("from") != (i % 2 == 0 ? "user" : "assistant"))
            bad.push_back(r.instance_id + ": turn " + std::to_string(i) + " breaks alternation");
          if (turns[i].at("value").get<std::string>().empty()) bad.push_back(r.instance_id + ": empty turn");
        }
        break;
      }
      case dataset::InstanceKind::kCot:
        if (p.value("user_text", "").empty() || p.value("assistant_text", "").empty())
          bad.push_back(r.instance_id + ": CoT must hold one user and one assistant turn");
        break;
    }

    if (r.split == dataset::Split::kTest) {
      test_images.insert(r.image_id);
      if (r.kind != dataset::InstanceKind::kVqa) bad.push_back(r.instance_id + ": non-VQA instance in test");
    } else {
      train_images.insert(r.image_id);
    }
  }
  for (const auto& i : test_images) {
    if (train_images.count(i)) bad.push_back(i + ": image in both splits");
  }
  for (const auto& k : kept) {
    if (!ids.count(k)) bad.push_back(k + ": kept but missing from the manifest");
  }
  return bad;
}

std::vector<std::string> check_expected_outcomes(const fs::path& run_dir, const fs::path& expected_json) {
  std::vector<std::string> bad;
  const auto expected = read_json_file(expected_json);
  std::map<std::string, std::string> got;
  for (const auto& r : read_jsonl(run_dir / "report.jsonl")) {
    const auto id = r.at("item_id").get<std::string>();
    auto status = r.at("status").get<std::string>();
    if (status == "discarded") status += ":" + r.value("reason", "");
    else if (status == "quarantined") status += ":" + r.value("stage", "");
    got[id] = status;
  }
  std::size_t wanted = 0;
  for (const char* level : {"videos", "episodes"}) {
    for (const auto& [id, want] : expected.at(level).items()) {
      ++wanted;
      auto it = got.find(id);
      if (it == got.end()) bad.push_back(id + ": missing from report");
      else if (it->second != want.get<std::string>()) bad.push_back(id + ": expected " + want.get<std::string>() + ", got " + it->second);
    }
  }
  if (got.size() != wanted) bad.push_back("report has " + std::to_string(got.size()) + " items, expected " + std::to_string(wanted));

  std::map<std::string, std::vector<std::string>> instances;
  for (const auto& r : dataset::read_manifest(run_dir / "manifest.jsonl").records) {
    const auto& ep = r.provenance.episode_id;
    instances[ep].push_back(r.instance_id.substr(ep.size() + 1));
  }
  for (const auto& [ep, want] : expected.at("instances").items()) {
    auto w = want.get<std::vector<std::string>>();
    auto g = instances[ep];
    std::sort(w.begin(), w.end());
    std::sort(g.begin(), g.end());
    if (w != g) bad.push_back(ep + ": kept instances differ from expected");
    instances.erase(ep);
  }
  for (const auto& [ep, g] : instances) {
    if (!g.empty()) bad.push_back(ep + ": unexpected instances in manifest");
  }
  return bad;
}

std::string tree_digest(const fs::path& dir, const std::vector<std::string>& ignore) {
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), dir);
    if (std::find(ignore.begin(), ignore.end(), rel.generic_string()) != ignore.end()) continue;
    files.push_back(rel);
  }
  std::sort(files.begin(), files.end());
  std::string acc;
  for (const auto& f : files) acc += f.generic_string() + "\n" + sha256_hex(read_file(dir / f)) + "\n";
  return sha256_hex(acc);
}

}  // namespace mmcurate::testing
