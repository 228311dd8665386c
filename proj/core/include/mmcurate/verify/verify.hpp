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

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/structured.hpp"
#include "mmcurate/curation/separated.hpp"
#include "mmcurate/dataset/manifest.hpp"
#include "mmcurate/synthesis/synthesis.hpp"

namespace mmcurate::verify {

using dataset::InstanceKind;

enum class Verdict { kKeep, kDiscard };

std::string_view to_string(Verdict v);
/// Case-insensitive "keep" / "discard" after trimming; nullopt otherwise.
std::optional<Verdict> normalize_verdict(std::string_view s);

struct VerificationDecision {
  std::string instance_ref;
  InstanceKind kind = InstanceKind::kVqa;
  std::string reasoning;
  Verdict answer = Verdict::kDiscard;
};

void to_json(nlohmann::json& j, const VerificationDecision& d);
void from_json(const nlohmann::json& j, VerificationDecision& d);

/// Reads {"reasoning", "answer"}. Throws ParseError.
std::pair<std::string, Verdict> parse_verification(std::string_view text);

/// Instance turns rendered as the JSON conversation array the checking
/// prompts expect.
std::string render_instance(const std::vector<synthesis::Turn>& turns);

backends::ChatRequest verification_request(InstanceKind kind, const std::vector<synthesis::Turn>& turns,
                                           const curation::SeparatedTranscript& sep,
                                           const backends::GenerationConfig& gen);

VerificationDecision verify_instance(const std::string& instance_ref, InstanceKind kind,
                                     const std::vector<synthesis::Turn>& turns,
                                     const curation::SeparatedTranscript& sep, backends::ChatBackend& chat,
                                     const backends::RetryPolicy& policy, const backends::GenerationConfig& gen = {});

std::vector<synthesis::Turn> turns_of(const synthesis::VqaInstance& v);
std::vector<synthesis::Turn> turns_of(const synthesis::CotInstance& c);

}  // namespace mmcurate::verify
