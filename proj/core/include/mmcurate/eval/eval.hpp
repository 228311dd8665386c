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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/backends/protocols.hpp"
#include "mmcurate/backends/structured.hpp"
#include "mmcurate/curation/separated.hpp"
#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::eval {

inline constexpr std::string_view kRefusal = "Refusal";

/// Text between the first "<answer>" and the following "</answer>"; the
/// whole response when the markers are absent.
std::string answer_span(std::string_view response);

/// Cleans extractor output: trims, strips wrapping quotes, and maps empty
/// text or any casing of "refusal" to kRefusal.
std::string normalize_extracted(std::string_view text);

backends::ChatRequest extraction_request(std::string_view question, std::string_view response,
                                         const backends::GenerationConfig& gen);
/// Blank responses map to kRefusal without a backend call.
std::string extract_answer(std::string_view question, std::string_view response, backends::ChatBackend& chat,
                           const backends::RetryPolicy& policy, const backends::GenerationConfig& gen = {});

struct JudgeVerdict {
  std::string reasoning;
  double score = 0.0;
};

/// The rubric value equal to `score`, or nullopt when off-rubric.
std::optional<double> rubric_score(double score);
/// Throws ParseError on malformed output or an off-rubric score.
JudgeVerdict parse_judge(std::string_view text);

struct JudgeInput {
  std::string question;
  std::string label;
  curation::SeparatedTranscript context;
  std::string answer;  // extracted model answer
};

backends::ChatRequest judge_request(const JudgeInput& in, const backends::GenerationConfig& gen);
/// A kRefusal answer scores 0.0 without a backend call.
JudgeVerdict judge(const JudgeInput& in, backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                   const backends::GenerationConfig& gen = {});

struct Similarity {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool degenerate = false;  // a side tokenized to nothing
};

/// Greedy matching over token embeddings (rows need not be normalized).
Similarity greedy_match(const std::vector<std::vector<double>>& prediction,
                        const std::vector<std::vector<double>>& reference);
Similarity semantic_similarity(std::string_view prediction, std::string_view reference,
                               backends::EmbeddingBackend& token_embedder);

struct EvalItem {
  std::string question_id;
  std::string subtype;
  std::string question;
  std::string label;
  curation::SeparatedTranscript context;
};

/// Test-labeled VQA records as evaluation items.
std::vector<EvalItem> eval_items(const dataset::DatasetManifest& manifest);

struct EvalRecord {
  EvalItem item;
  std::string response;
  std::string extracted;
  std::optional<JudgeVerdict> verdict;  // empty when quarantined
  Similarity similarity;
  bool refusal = false;
  std::string error;  // quarantine reason
};

void to_json(nlohmann::json& j, const EvalRecord& r);

struct EvalOptions {
  bool answer_delimiters = false;
  backends::RetryPolicy policy;
  backends::GenerationConfig gen;
};

/// Scores every item that has a prediction. Items without a prediction are
/// treated as empty responses.
std::vector<EvalRecord> evaluate(const std::vector<EvalItem>& items,
                                 const std::map<std::string, std::string>& predictions,
                                 const backends::BackendSet& backends, const EvalOptions& opt = {});

struct ReportRow {
  std::string subtype;
  std::size_t count = 0;  // judged records
  double llm = 0.0;  // mean verdict x100, two decimals
  double bscore = 0.0;  // mean similarity F1 x100, two decimals
  std::size_t refusals = 0;
  std::size_t quarantined = 0;
};

struct EvalReport {
  std::vector<ReportRow> rows;  // subtypes with records, then "average"
  std::vector<std::string> warnings;
};

/// Per-subtype means; "average" is the mean of the subtype means.
EvalReport aggregate_report(const std::vector<EvalRecord>& records);
nlohmann::json to_json(const EvalReport& report);
std::string format_report(const EvalReport& report);

/// Half-away-from-zero rounding to two decimals.
double round2(double v);

}  // namespace mmcurate::eval
