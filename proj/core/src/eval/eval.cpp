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

#include "mmcurate/eval/eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/log.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/synthesis/json_extract.hpp"
#include "mmcurate/synthesis/templates.hpp"

namespace mmcurate::eval {

using backends::ChatRequest;
using synthesis::TemplateId;

namespace {

constexpr std::array<double, 5> kRubric{0.0, 0.25, 0.5, 0.75, 1.0};

double norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

ChatRequest single_turn(TemplateId id, std::string user, std::string tag, const backends::GenerationConfig& gen) {
  ChatRequest req;
  req.system = std::string(synthesis::template_text(id));
  req.messages.push_back({"user", std::move(user)});
  req.temperature = gen.temperature;
  req.max_tokens = gen.max_tokens;
  req.tag = std::move(tag);
  return req;
}

}  // namespace

std::string answer_span(std::string_view response) {
  constexpr std::string_view open = "<answer>", close = "</answer>";
  auto a = response.find(open);
  if (a == std::string_view::npos) return std::string(response);
  a += open.size();
  auto b = response.find(close, a);
  return std::string(response.substr(a, b == std::string_view::npos ? std::string_view::npos : b - a));
}

std::string normalize_extracted(std::string_view text) {
  auto t = text::trim(text);
  while (t.size() >= 2 && ((t.front() == '"' && t.back() == '"') || (t.front() == '\'' && t.back() == '\''))) {
    t = text::trim(std::string_view(t).substr(1, t.size() - 2));
  }
  auto bare = text::to_lower_ascii(t);
  while (!bare.empty() && (bare.back() == '.' || bare.back() == '!')) bare.pop_back();
  if (bare.empty() || bare == "refusal") return std::string(kRefusal);
  return t;
}

ChatRequest extraction_request(std::string_view question, std::string_view response,
                               const backends::GenerationConfig& gen) {
  return single_turn(TemplateId::kExtract,
                     "Question: " + std::string(question) + "\nModel response: " + std::string(response), "extract",
                     gen);
}

std::string extract_answer(std::string_view question, std::string_view response, backends::ChatBackend& chat,
                           const backends::RetryPolicy& policy, const backends::GenerationConfig& gen) {
  if (text::trim(response).empty()) return std::string(kRefusal);
  std::function<std::string(const std::string&)> parse = [](const std::string& t) { return normalize_extracted(t); };
  return backends::call_structured(chat, extraction_request(question, response, gen), policy, parse);
}

std::optional<double> rubric_score(double score) {
  for (double r : kRubric) {
    if (score == r) return r;
  }
  return std::nullopt;
}

JudgeVerdict parse_judge(std::string_view text) {
  const auto j = synthesis::parse_llm_json(text, synthesis::JsonShape::kObject);
  if (!j.contains("score")) throw ParseError("judge output lacks \"score\"");
  const auto& s = j["score"];
  double value = 0.0;
  if (s.is_number()) {
    value = s.get<double>();
  } else if (s.is_string()) {
    const auto str = text::trim(s.get<std::string>());
    std::size_t used = 0;
    try {
      value = std::stod(str, &used);
    } catch (const std::exception&) {
      throw ParseError("judge score is not numeric");
    }
    if (used != str.size()) throw ParseError("judge score is not numeric");
  } else {
    throw ParseError("judge score is not numeric");
  }
  auto r = rubric_score(value);
  if (!r) throw ParseError("judge score " + s.dump() + " is off the rubric");
  JudgeVerdict v;
  v.score = *r;
  if (j.contains("reasoning") && j["reasoning"].is_string()) v.reasoning = j["reasoning"].get<std::string>();
  return v;
}

ChatRequest judge_request(const JudgeInput& in, const backends::GenerationConfig& gen) {
  if (text::trim(in.label).empty()) throw ValidationError("judge label is empty");
  std::string user = synthesis::render_blocks(in.context);
  user += "\n[Question]\n" + in.question + "\n\n[LABEL]\n" + in.label + "\n\n[RESPONSE]\n" + in.answer + "\n";
  return single_turn(TemplateId::kJudge, std::move(user), "judge", gen);
}

JudgeVerdict judge(const JudgeInput& in, backends::ChatBackend& chat, const backends::RetryPolicy& policy,
                   const backends::GenerationConfig& gen) {
  auto req = judge_request(in, gen);
  if (in.answer == kRefusal) return {"refusal", 0.0};
  std::function<JudgeVerdict(const std::string&)> parse = [](const std::string& t) { return parse_judge(t); };
  return backends::call_structured(chat, std::move(req), policy, parse);
}

Similarity greedy_match(const std::vector<std::vector<double>>& prediction,
                        const std::vector<std::vector<double>>& reference) {
  Similarity s;
  if (prediction.empty() || reference.empty()) {
    s.degenerate = true;
    return s;
  }
  std::vector<double> pn, rn;
  for (const auto& v : prediction) pn.push_back(norm(v));
  for (const auto& v : reference) rn.push_back(norm(v));
  std::vector<double> row_max(prediction.size(), -1.0), col_max(reference.size(), -1.0);
  for (std::size_t i = 0; i < prediction.size(); ++i) {
    for (std::size_t j = 0; j < reference.size(); ++j) {
      if (prediction[i].size() != reference[j].size()) throw ValidationError("token embedding dimension mismatch");
      double dot = 0.0;
      for (std::size_t k = 0; k < prediction[i].size(); ++k) dot += prediction[i][k] * reference[j][k];
      const double denom = pn[i] * rn[j];
      const double c = denom > 0.0 ? std::clamp(dot / denom, -1.0, 1.0) : 0.0;
      row_max[i] = std::max(row_max[i], c);
      col_max[j] = std::max(col_max[j], c);
    }
  }
  for (double v : row_max) s.precision += v;
  for (double v : col_max) s.recall += v;
  s.precision /= static_cast<double>(prediction.size());
  s.recall /= static_cast<double>(reference.size());
  const double sum = s.precision + s.recall;
  s.f1 = sum > 0.0 ? std::clamp(2.0 * s.precision * s.recall / sum, 0.0, 1.0) : 0.0;
  return s;
}

Similarity semantic_similarity(std::string_view prediction, std::string_view reference,
                               backends::EmbeddingBackend& token_embedder) {
  const auto pt = text::tokenize_words(prediction);
  const auto rt = text::tokenize_words(reference);
  if (pt.empty() || rt.empty()) return greedy_match({}, {});
  if (pt == rt) return {1.0, 1.0, 1.0, false};
  std::map<std::string, std::vector<double>> cache;
  auto embed = [&](const std::vector<std::string>& tokens) {
    std::vector<std::vector<double>> out;
    for (const auto& t : tokens) {
      auto it = cache.find(t);
      if (it == cache.end()) {
        backends::EmbeddingRequest req;
        req.text = t;
        it = cache.emplace(t, token_embedder.embed(req).vector).first;
      }
      out.push_back(it->second);
    }
    return out;
  };
  return greedy_match(embed(pt), embed(rt));
}

std::vector<EvalItem> eval_items(const dataset::DatasetManifest& manifest) {
  std::vector<EvalItem> items;
  for (const auto& r : manifest.records) {
    if (r.split != dataset::Split::kTest || r.kind != dataset::InstanceKind::kVqa) continue;
    items.push_back({r.instance_id, r.subtype, r.payload.at("question").get<std::string>(),
                     r.payload.at("answer").get<std::string>(), r.context});
  }
  return items;
}

void to_json(nlohmann::json& j, const EvalRecord& r) {
  j = nlohmann::json{{"question_id", r.item.question_id},
                     {"subtype", r.item.subtype},
                     {"question", r.item.question},
                     {"label", r.item.label},
                     {"response", r.response},
                     {"extracted", r.extracted},
                     {"refusal", r.refusal},
                     {"similarity", {{"precision", r.similarity.precision},
                                     {"recall", r.similarity.recall},
                                     {"f1", r.similarity.f1},
                                     {"degenerate", r.similarity.degenerate}}}};
  if (r.verdict) j["verdict"] = {{"score", r.verdict->score}, {"reasoning", r.verdict->reasoning}};
  else j["verdict"] = nullptr;
  if (!r.error.empty()) j["error"] = r.error;
}

std::vector<EvalRecord> evaluate(const std::vector<EvalItem>& items,
                                 const std::map<std::string, std::string>& predictions,
                                 const backends::BackendSet& backends, const EvalOptions& opt) {
  auto& chat = backends.chat_for(backends::ChatRole::kJudge);
  auto& extractor = backends.chat_for(backends::ChatRole::kExtract);
  backends::EmbeddingBackend* tokens = backends.token_embedder ? backends.token_embedder.get() : backends.embedder.get();
  if (!tokens) throw ConfigError("evaluation needs a token embedding backend");
  std::vector<EvalRecord> out;
  for (const auto& item : items) {
    EvalRecord rec;
    rec.item = item;
    if (auto it = predictions.find(item.question_id); it != predictions.end()) rec.response = it->second;
    const auto span = opt.answer_delimiters ? answer_span(rec.response) : rec.response;
    try {
      rec.extracted = extract_answer(item.question, span, extractor, opt.policy, opt.gen);
      rec.refusal = rec.extracted == kRefusal;
      rec.verdict = judge({item.question, item.label, item.context, rec.extracted}, chat, opt.policy, opt.gen);
      rec.similarity = rec.refusal ? Similarity{} : semantic_similarity(rec.extracted, item.label, *tokens);
    } catch (const QuarantineError& e) {
      rec.verdict.reset();
      rec.error = e.what();
      log::decision("eval", item.question_id, "quarantined", e.what());
    }
    out.push_back(std::move(rec));
  }
  return out;
}

double round2(double v) { return std::round(v * 100.0) / 100.0; }

EvalReport aggregate_report(const std::vector<EvalRecord>& records) {
  struct Acc {
    std::size_t n = 0, refusals = 0, quarantined = 0;
    double llm = 0.0, bscore = 0.0;
  };
  std::map<std::string, Acc> acc;
  for (const auto& r : records) {
    auto& a = acc[r.item.subtype];
    if (!r.verdict) {
      ++a.quarantined;
      continue;
    }
    ++a.n;
    a.refusals += r.refusal;
    a.llm += r.verdict->score;
    a.bscore += r.similarity.f1;
  }
  EvalReport report;
  std::vector<std::string> order{"yes_no", "what", "where"};
  for (const auto& [k, a] : acc) {
    if (std::find(order.begin(), order.end(), k) == order.end()) order.push_back(k);
  }
  double llm_sum = 0.0, b_sum = 0.0;
  std::size_t rows = 0;
  ReportRow avg{"average"};
  for (const auto& k : order) {
    auto it = acc.find(k);
    if (it == acc.end() || it->second.n == 0) {
      report.warnings.push_back("no judged records for subtype " + k);
      if (it != acc.end()) avg.quarantined += it->second.quarantined;
      continue;
    }
    const auto& a = it->second;
    const double llm = a.llm / static_cast<double>(a.n) * 100.0;
    const double b = a.bscore / static_cast<double>(a.n) * 100.0;
    report.rows.push_back({k, a.n, round2(llm), round2(b), a.refusals, a.quarantined});
    llm_sum += llm;
    b_sum += b;
    ++rows;
    avg.count += a.n;
    avg.refusals += a.refusals;
    avg.quarantined += a.quarantined;
  }
  if (rows > 0) {
    avg.llm = round2(llm_sum / static_cast<double>(rows));
    avg.bscore = round2(b_sum / static_cast<double>(rows));
    report.rows.push_back(avg);
  }
  return report;
}

nlohmann::json to_json(const EvalReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"subtype", r.subtype},
                    {"count", r.count},
                    {"llm", r.llm},
                    {"bscore", r.bscore},
                    {"refusals", r.refusals},
                    {"quarantined", r.quarantined}});
  }
  return nlohmann::json{{"rows", rows}, {"warnings", report.warnings}};
}

std::string format_report(const EvalReport& report) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "Subtype" << std::right << std::setw(8) << "N" << std::setw(10) << "LLM"
     << std::setw(10) << "B-score" << std::setw(10) << "Refusals" << std::setw(13) << "Quarantined" << "\n";
  os << std::fixed << std::setprecision(2);
  for (const auto& r : report.rows) {
    os << std::left << std::setw(10) << r.subtype << std::right << std::setw(8) << r.count << std::setw(10) << r.llm
       << std::setw(10) << r.bscore << std::setw(10) << r.refusals << std::setw(13) << r.quarantined << "\n";
  }
  for (const auto& w : report.warnings) os << "warning: " << w << "\n";
  return os.str();
}

}  // namespace mmcurate::eval
