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
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::verify {

struct AuditEntry {
  dataset::ManifestRecord record;
  nlohmann::json source;  // raw transcript, separation, scores when known
  std::string stratum;
  std::optional<std::string> reviewer_decision;  // "keep" | "discard", filled by experts
  std::string reviewer_note;
};

struct AuditBundle {
  std::uint64_t seed = 0;
  std::vector<std::string> strata_fields;
  std::map<std::string, std::size_t> strata_sizes;  // population per stratum
  std::map<std::string, std::size_t> strata_sampled;
  std::vector<AuditEntry> entries;
};

/// Stratum key of a record over fields from {"kind", "subtype", "modality",
/// "split", "condition"}.
std::string audit_stratum(const dataset::ManifestRecord& r, const std::vector<std::string>& fields);

/// n records (all when n >= size) stratified over `fields`, proportional
/// with largest-remainder rounding, drawn by a seeded shuffle per stratum.
/// `sources` maps episode ids to provenance blobs copied into the entries.
AuditBundle sample_for_audit(const dataset::DatasetManifest& manifest, std::size_t n, std::uint64_t seed,
                             const std::vector<std::string>& fields = {"kind", "modality"},
                             const std::map<std::string, nlohmann::json>& sources = {});

/// First line: header (seed, strata); then one entry per line.
void write_audit_bundle(const std::filesystem::path& path, const AuditBundle& bundle);

struct AuditDecision {
  std::string instance_id;
  std::string decision;  // keep | discard
  std::string note;
};

std::vector<AuditDecision> read_audit_decisions(const std::filesystem::path& path);

struct AuditOutcome {
  dataset::DatasetManifest manifest;
  std::vector<nlohmann::json> trail;
};

/// Removes expert-discarded instances. Throws ValidationError (leaving
/// nothing modified) when a decision names an unknown instance or carries a
/// verdict other than keep/discard.
AuditOutcome apply_audit(const dataset::DatasetManifest& manifest, const std::vector<AuditDecision>& decisions);

}  // namespace mmcurate::verify
