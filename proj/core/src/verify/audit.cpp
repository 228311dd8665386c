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

#include "mmcurate/verify/audit.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/dataset/split.hpp"
#include "mmcurate/verify/verify.hpp"

namespace mmcurate::verify {

std::string audit_stratum(const dataset::ManifestRecord& r, const std::vector<std::string>& fields) {
  std::string key;
  for (const auto& f : fields) {
    if (!key.empty()) key += "|";
    if (f == "kind") key += dataset::to_string(r.kind);
    else if (f == "subtype") key += r.subtype.empty() ? "-" : r.subtype;
    else if (f == "modality") key += backends::to_string(r.modality);
    else if (f == "split") key += dataset::to_string(r.split);
    else if (f == "condition") key += r.condition_tags.empty() ? "none" : r.condition_tags.front();
    else throw ConfigError("unknown audit stratum field \"" + f + "\"");
  }
  return key;
}

AuditBundle sample_for_audit(const dataset::DatasetManifest& manifest, std::size_t n, std::uint64_t seed,
                             const std::vector<std::string>& fields,
                             const std::map<std::string, nlohmann::json>& sources) {
  if (manifest.records.empty()) throw ValidationError("cannot sample an audit from an empty manifest");
  if (n == 0) throw ValidationError("audit sample size must be positive");
  AuditBundle bundle;
  bundle.seed = seed;
  bundle.strata_fields = fields;

  std::map<std::string, std::vector<std::size_t>> strata;
  for (std::size_t i = 0; i < manifest.records.size(); ++i)
    strata[audit_stratum(manifest.records[i], fields)].push_back(i);
  std::vector<std::size_t> sizes;
  for (const auto& [key, idx] : strata) {
    sizes.push_back(idx.size());
    bundle.strata_sizes[key] = idx.size();
  }
  const auto alloc = dataset::largest_remainder(sizes, std::min(n, manifest.records.size()));

  std::vector<std::size_t> chosen;
  std::size_t s = 0;
  for (auto& [key, idx] : strata) {
    std::mt19937_64 rng(digest_seed("audit/" + std::to_string(seed) + "/" + key));
    for (std::size_t k = idx.size(); k > 1; --k) std::swap(idx[k - 1], idx[rng() % k]);
    chosen.insert(chosen.end(), idx.begin(), idx.begin() + static_cast<long>(alloc[s]));
    bundle.strata_sampled[key] = alloc[s];
    ++s;
  }
  std::sort(chosen.begin(), chosen.end());
  for (auto i : chosen) {
    const auto& r = manifest.records[i];
    AuditEntry e;
    e.record = r;
    e.stratum = audit_stratum(r, fields);
    if (auto it = sources.find(r.provenance.episode_id); it != sources.end()) e.source = it->second;
    bundle.entries.push_back(std::move(e));
  }
  return bundle;
}

void write_audit_bundle(const std::filesystem::path& path, const AuditBundle& bundle) {
  std::vector<nlohmann::json> rows;
  rows.push_back({{"audit_header",
                   {{"seed", bundle.seed},
                    {"strata_fields", bundle.strata_fields},
                    {"strata_sizes", bundle.strata_sizes},
                    {"strata_sampled", bundle.strata_sampled},
                    {"entries", bundle.entries.size()}}}});
  for (const auto& e : bundle.entries) {
    rows.push_back({{"instance_id", e.record.instance_id},
                    {"stratum", e.stratum},
                    {"record", e.record},
                    {"source", e.source},
                    {"decision", nullptr},
                    {"note", ""}});
  }
  write_jsonl(path, rows);
}

std::vector<AuditDecision> read_audit_decisions(const std::filesystem::path& path) {
  std::vector<AuditDecision> out;
  for (const auto& j : read_jsonl(path)) {
    if (j.contains("audit_header")) continue;
    if (!j.contains("instance_id")) throw ValidationError(path.string() + ": decision lacks instance_id");
    if (!j.contains("decision") || j["decision"].is_null()) continue;  // not reviewed yet
    out.push_back({j["instance_id"].get<std::string>(), j["decision"].get<std::string>(), j.value("note", "")});
  }
  return out;
}

AuditOutcome apply_audit(const dataset::DatasetManifest& manifest, const std::vector<AuditDecision>& decisions) {
  std::set<std::string> known;
  for (const auto& r : manifest.records) known.insert(r.instance_id);
  std::set<std::string> drop;
  AuditOutcome out;
  for (const auto& d : decisions) {
    if (!known.count(d.instance_id)) throw ValidationError("audit decision for unknown instance " + d.instance_id);
    auto v = normalize_verdict(d.decision);
    if (!v) throw ValidationError("audit decision for " + d.instance_id + " is neither keep nor discard");
    if (*v == Verdict::kDiscard) drop.insert(d.instance_id);
    out.trail.push_back({{"instance_id", d.instance_id}, {"decision", to_string(*v)}, {"note", d.note}});
  }
  for (const auto& r : manifest.records) {
    if (!drop.count(r.instance_id)) out.manifest.records.push_back(r);
  }
  return out;
}

}  // namespace mmcurate::verify
