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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "mmcurate/backends/mock.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/common/log.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/curation/curation.hpp"
#include "mmcurate/dataset/split.hpp"
#include "mmcurate/dataset/stats.hpp"
#include "mmcurate/eval/eval.hpp"
#include "mmcurate/pipeline/pipeline.hpp"
#include "mmcurate/refiner/refiner.hpp"
#include "mmcurate/segmenter/segmenter.hpp"
#include "run_checks.hpp"

namespace {

namespace fs = std::filesystem;
using namespace mmcurate;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), f, v);
  return buf;
}

void require(Outcome& o, bool ok, const std::string& what) {
  if (!ok) {
    o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + what;
  }
}

// --- 1. segmentation --------------------------------------------------------

std::vector<segmenter::EpisodeBounds> oracle_episodes(const std::vector<std::vector<double>>& rows, long double delta,
                                                      std::size_t min_frames) {
  std::vector<segmenter::EpisodeBounds> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    bool cut = i + 1 == rows.size();
    if (!cut) {
      long double dot = 0, na = 0, nb = 0;
      for (std::size_t k = 0; k < rows[i].size(); ++k) {
        dot += static_cast<long double>(rows[i][k]) * rows[i + 1][k];
        na += static_cast<long double>(rows[i][k]) * rows[i][k];
        nb += static_cast<long double>(rows[i + 1][k]) * rows[i + 1][k];
      }
      cut = dot / std::sqrt(na * nb) < delta;
    }
    if (cut) {
      if (i - start + 1 >= min_frames) out.push_back({start, i});
      start = i + 1;
    }
  }
  return out;
}

Outcome segmentation() {
  constexpr int kSequences = 1000;
  constexpr double kLimitS = 5.0;
  const std::size_t dims[] = {2, 3, 8, 16, 64, 256, 512, 768};
  std::mt19937_64 rng(20260101);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  segmenter::SegmenterConfig cfg;  // delta_c 0.95
  int mismatches = 0;
  std::size_t boundaries = 0;
  double seg_time = 0.0;
  const auto t0 = Clock::now();
  for (int s = 0; s < kSequences; ++s) {
    const std::size_t n = 1 + rng() % 300;
    const std::size_t dim = dims[rng() % std::size(dims)];
    // Random walk with occasional scene cuts; step sizes straddle the threshold.
    std::vector<std::vector<double>> rows;
    std::vector<double> cur(dim);
    for (auto& x : cur) x = g(rng);
    for (std::size_t i = 0; i < n; ++i) {
      if (u(rng) < 0.08) {
        for (auto& x : cur) x = g(rng);
      } else {
        const double step = u(rng) * 0.7;
        for (auto& x : cur) x += step * g(rng) / std::sqrt(static_cast<double>(dim));
      }
      double norm = 0;
      for (double x : cur) norm += x * x;
      norm = std::sqrt(norm);
      std::vector<double> unit(dim);
      for (std::size_t k = 0; k < dim; ++k) unit[k] = cur[k] / norm;
      rows.push_back(unit);
    }
    std::vector<segmenter::FrameSample> frames;
    for (std::size_t i = 0; i < n; ++i) frames.push_back({static_cast<int>(i), static_cast<double>(i), rows[i]});
    cfg.min_episode_frames = 1 + static_cast<int>(rng() % 3);
    const auto ts = Clock::now();
    const auto got = segmenter::segment_episodes(frames, cfg);
    boundaries += segmenter::boundary_positions(frames, cfg.delta_c).size();
    seg_time += seconds_since(ts);
    if (got != oracle_episodes(rows, cfg.delta_c, static_cast<std::size_t>(cfg.min_episode_frames))) ++mismatches;
  }
  const double total = seconds_since(t0);
  Outcome o;
  o.detail = std::to_string(kSequences) + " sequences, " + std::to_string(boundaries) + " boundaries, " +
             std::to_string(mismatches) + " mismatches, segmenter " + fmt("%.3f", seg_time) + " s, total " +
             fmt("%.3f", total) + " s (limit 5 s)";
  if (mismatches != 0 || total >= kLimitS) o.pass = false;
  return o;
}

// --- 2 and 5. release arithmetic and split ----------------------------------

struct ReleaseSplit {
  dataset::DatasetManifest pool;
  dataset::DatasetManifest split;
  dataset::DatasetStats stats;
};

const ReleaseSplit& release_split() {
  static const ReleaseSplit rs = [] {
    ReleaseSplit r;
    r.pool = testing::release_manifest();
    dataset::SplitSpec spec;  // targets yes_no 450, what 451, where 333
    r.split = dataset::split_eval(r.pool, spec);
    r.stats = dataset::compute_stats(r.split);
    return r;
  }();
  return rs;
}

Outcome manifest_arithmetic() {
  const auto& s = release_split().stats;
  Outcome o;
  const std::pair<const char*, std::size_t> instances[] = {{"vqa/yes_no", 145252}, {"vqa/what", 142971},
                                                          {"vqa/where", 110898}, {"conversation", 124441},
                                                          {"cot", 12570}};
  std::size_t sum = 0;
  for (const auto& [key, want] : instances) {
    require(o, s.row(key).instances == want, std::string(key) + " instances " + std::to_string(s.row(key).instances));
    sum += s.row(key).instances;
  }
  require(o, sum == 536132 && s.total().instances == 536132, "total " + std::to_string(s.total().instances));
  const std::tuple<const char*, std::size_t, std::size_t> split_rows[] = {
      {"vqa/yes_no", 144802, 450}, {"vqa/what", 142520, 451}, {"vqa/where", 110565, 333}};
  for (const auto& [key, train, test] : split_rows) {
    const auto& r = s.row(key);
    require(o, r.train == train && r.test == test,
            std::string(key) + " " + std::to_string(r.train) + "+" + std::to_string(r.test));
    require(o, r.train + r.test == r.instances, std::string(key) + " train+test != instances");
  }
  require(o, s.row("conversation").test == 0 && s.row("cot").test == 0, "non-VQA test instances");
  require(o, s.total().train == 534898, "train total " + std::to_string(s.total().train));
  require(o, s.total().test == 1234, "test total " + std::to_string(s.total().test));
  require(o, s.total().images == 38943 + 80139 + 32348, "images " + std::to_string(s.total().images));
  if (o.pass)
    o.detail = "5 rows sum to 536,132; VQA train+test 144,802+450, 142,520+451, 110,565+333; train 534,898, test 1,234";
  return o;
}

Outcome split_criterion() {
  const auto& rs = release_split();
  Outcome o;
  std::map<std::string, std::size_t> pool;
  for (const auto& r : rs.pool.records) {
    if (r.kind == dataset::InstanceKind::kVqa) ++pool[r.subtype];
  }
  for (const char* sub : {"yes_no", "what", "where"})
    require(o, pool[sub] >= 2000, std::string(sub) + " pool " + std::to_string(pool[sub]));

  std::map<std::string, std::size_t> test;
  std::set<std::string> test_images, train_images;
  for (const auto& r : rs.split.records) {
    if (r.split == dataset::Split::kTest) {
      ++test[r.subtype];
      test_images.insert(r.image_id);
    } else if (r.split == dataset::Split::kTrain) {
      train_images.insert(r.image_id);
    } else {
      require(o, false, r.instance_id + " left unsplit");
    }
  }
  std::size_t shared = 0;
  for (const auto& i : test_images) shared += train_images.count(i);
  const std::size_t total = test["yes_no"] + test["what"] + test["where"];
  require(o, test["yes_no"] == 450 && test["what"] == 451 && test["where"] == 333, "per-subtype test counts");
  require(o, total == 1234, "test instances " + std::to_string(total));
  require(o, shared == 0, std::to_string(shared) + " images in both splits");

  dataset::SplitSpec spec;
  const auto again = dataset::split_eval(rs.pool, spec);
  require(o, again.records == rs.split.records, "same seed gave a different split");
  spec.seed = 1;
  const auto other = dataset::split_eval(rs.pool, spec);
  std::size_t moved = 0;
  for (std::size_t i = 0; i < other.records.size(); ++i) moved += other.records[i].split != rs.split.records[i].split;
  require(o, moved > 0, "seed has no effect");
  if (o.pass)
    o.detail = "pool >= 2,000 per subtype; 450/451/333 -> 1,234 test instances on " + std::to_string(test_images.size()) +
               " images, 0 shared; seed 0 reproduced, seed 1 moved " + std::to_string(moved);
  return o;
}

// --- 3. end-to-end mock run ---------------------------------------------------

nlohmann::json load_state(const fs::path& run_dir, const std::string& digest) {
  return read_json_file(run_dir / "artifacts" / digest.substr(0, 2) / (digest + ".json"));
}

Outcome end_to_end() {
  constexpr double kLimitS = 60.0;
  testing::TempDir a, b;
  auto config_for = [](const fs::path& root) {
    auto c = pipeline::load_config(testing::corpus_dir() / "config.json");
    c.run_root = root;
    c.run_id = "acceptance";
    return c;
  };
  const auto ca = config_for(a.path()), cb = config_for(b.path());
  const auto t0 = Clock::now();
  const auto report = pipeline::run_pipeline(ca, pipeline::make_backends(ca));
  const double first = seconds_since(t0);
  pipeline::run_pipeline(cb, pipeline::make_backends(cb));
  const fs::path run = ca.run_dir();

  Outcome o;
  require(o, report.videos.input >= 20, std::to_string(report.videos.input) + " videos");
  require(o, report.videos.conserved() && report.episodes.conserved(), "item accounting not conserved");
  require(o, first < kLimitS, "run took " + fmt("%.2f", first) + " s");
  for (const auto& m : testing::check_expected_outcomes(run, testing::corpus_dir() / "expected.json")) require(o, false, m);
  const auto violations = testing::check_run_invariants(run);
  for (const auto& m : violations) require(o, false, m);
  const auto da = testing::tree_digest(run), db = testing::tree_digest(cb.run_dir());
  require(o, da == db, "run directories differ between identical runs");

  // Scenario coverage, read back from the run's own artifacts.
  const auto& reasons = report.discard_reasons;
  require(o, reasons.count("not_relevant"), "no relevance failure");
  require(o, reasons.count("gate:low_relevance"), "no low-relevance gate failure");
  require(o, reasons.count("gate:no_specific_details"), "no details gate failure");
  std::map<std::string, std::string> scored, verified;
  for (const auto& e : read_jsonl(run / "checkpoint.jsonl")) {
    if (e.at("status") != "ok") continue;
    if (e.at("stage") == "scored") scored[e.at("item_id")] = e.at("state");
    if (e.at("stage") == "verified") verified[e.at("item_id")] = e.at("state");
  }
  int not_applicable = 0, persona_breaks = 0, boundary_eligible = 0, near_misses = 0, cot_mismatch = 0;
  for (const auto& [id, digest] : verified) {
    const auto st = load_state(run, digest);
    not_applicable += static_cast<int>(st.at("not_applicable").size());
    bool has_cot = false;
    for (const auto& d : st.at("verification")) {
      if (d.at("kind") == "conversation" && d.at("answer") == "discard") ++persona_breaks;
      if (d.at("kind") == "cot") has_cot = true;
    }
    const auto& sc = st.at("score");
    const int q = sc.at("quality"), dd = sc.at("difficulty"), r = sc.at("relevance2medicine");
    const bool det = sc.at("mention_specific_details");
    const bool eligible = q >= 9 && dd >= 9 && r >= 5 && det;
    if (eligible != has_cot) ++cot_mismatch;
    if (q == 9 && dd == 9 && r == 5 && has_cot) ++boundary_eligible;
    if (!has_cot && ((q == 8 && dd >= 9 && r >= 5) || (q >= 9 && dd == 8 && r >= 5) || (q >= 9 && dd >= 9 && r == 4)))
      ++near_misses;
  }
  require(o, not_applicable > 0, "no N/A escape exercised");
  require(o, persona_breaks > 0, "no persona-break discard");
  require(o, boundary_eligible > 0 && near_misses >= 3, "CoT boundary not covered");
  require(o, cot_mismatch == 0, std::to_string(cot_mismatch) + " episodes with CoT generation off the gate");
  if (o.pass) {
    o.detail = std::to_string(report.videos.input) + " videos / " + std::to_string(report.episodes.input) +
               " episodes in " + fmt("%.2f", first) + " s (limit 60 s); " + std::to_string(not_applicable) + " N/A, " +
               std::to_string(persona_breaks) + " conversations discarded by the verifier, CoT boundary 9/9/5 kept and " +
               std::to_string(near_misses) + " near misses skipped; invariants hold; run digest " + da.substr(0, 12) +
               " identical twice";
  }
  return o;
}

// --- 4. gate grid -------------------------------------------------------------

Outcome gate_grid() {
  const curation::GateConfig gates;
  int points = 0, mismatches = 0;
  for (int q = 1; q <= 10; ++q) {
    for (int d = 1; d <= 10; ++d) {
      for (int r = 1; r <= 6; ++r) {
        for (bool det : {false, true}) {
          ++points;
          const curation::QualityScore s{"", q, d, r, det};
          const bool pass = r >= 3 && det;
          const bool cot = q >= 9 && d >= 9 && r >= 5 && det;
          if (curation::passes_gate(s, gates) != pass || curation::cot_eligible(s, gates) != cot) ++mismatches;
        }
      }
    }
  }
  Outcome o;
  o.pass = points == 1200 && mismatches == 0;
  o.detail = std::to_string(points) + " points, " + std::to_string(mismatches) + " mismatches";
  return o;
}

// --- 6. evaluation ------------------------------------------------------------

Outcome evaluation() {
  Outcome o;
  // Rubric: the five values pass, anything else is rejected.
  for (double v : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    try {
      require(o, eval::parse_judge("{\"score\": " + nlohmann::json(v).dump() + "}").score == v, "rubric value altered");
      require(o, eval::parse_judge("{\"score\": \"" + nlohmann::json(v).dump() + "\"}").score == v,
              "rubric value as string altered");
    } catch (const ParseError&) {
      require(o, false, "rubric value " + nlohmann::json(v).dump() + " rejected");
    }
  }
  std::mt19937_64 rng(606);
  std::vector<nlohmann::json> fuzz;
  std::uniform_real_distribution<double> wide(-5.0, 5.0);
  for (int i = 0; i < 2000; ++i) fuzz.push_back(wide(rng));
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double eps : {1e-12, 1e-9, 1e-6, 1e-3, 0.01, 0.1}) {
      fuzz.push_back(r + eps);
      fuzz.push_back(r - eps);
    }
  }
  for (auto extra : {nlohmann::json(2), nlohmann::json(-1), nlohmann::json(0.3), nlohmann::json(0.125),
                     nlohmann::json("1/2"), nlohmann::json("high"), nlohmann::json(nullptr), nlohmann::json(true),
                     nlohmann::json::array({1}), nlohmann::json("0.55"), nlohmann::json(""), nlohmann::json("NaN"),
                     nlohmann::json("inf"), nlohmann::json(75), nlohmann::json(100)})
    fuzz.push_back(extra);
  std::size_t off_rubric = 0, rejected = 0;
  for (const auto& v : fuzz) {
    if (v.is_number() && eval::rubric_score(v.get<double>())) continue;
    ++off_rubric;
    try {
      eval::parse_judge(nlohmann::json{{"score", v}}.dump());
    } catch (const ParseError&) {
      ++rejected;
    }
  }
  require(o, rejected == off_rubric, std::to_string(off_rubric - rejected) + " off-rubric values accepted");

  // Self-similarity over dense embeddings, through the public entry point and the matcher itself.
  backends::MockEmbedder dense(384, 9);
  auto embed_tokens = [&](const std::string& s) {
    std::vector<std::vector<double>> out;
    for (const auto& t : text::tokenize_words(s)) {
      backends::EmbeddingRequest req;
      req.text = t;
      out.push_back(dense.embed(req).vector);
    }
    return out;
  };
  double worst_self = 0.0;
  int self_cases = 0;
  while (self_cases < 100) {
    const auto s = testing::random_string(rng, 3, 80, "abcdefghij klmnop qrstuvwxyz");
    if (text::tokenize_words(s).empty()) continue;
    ++self_cases;
    const auto e = embed_tokens(s);
    worst_self = std::max(worst_self, std::abs(eval::semantic_similarity(s, s, dense).f1 - 1.0));
    worst_self = std::max(worst_self, std::abs(eval::greedy_match(e, e).f1 - 1.0));
  }
  require(o, worst_self <= 1e-6, "self similarity off by " + fmt("%.3g", worst_self));

  // Subset F1 under one-hot token embeddings.
  double worst_subset = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    testing::OneHotEmbedder onehot;
    const std::size_t n = 1 + rng() % 20;
    std::vector<std::string> tokens;
    for (std::size_t i = 0; i < n; ++i) tokens.push_back("tok" + std::to_string(i) + "x" + std::to_string(trial));
    std::shuffle(tokens.begin(), tokens.end(), rng);
    const std::size_t k = 1 + rng() % n;
    std::string ref, pred;
    for (std::size_t i = 0; i < n; ++i) ref += tokens[i] + " ";
    auto picked = tokens;
    std::shuffle(picked.begin(), picked.end(), rng);
    for (std::size_t i = 0; i < k; ++i) pred += picked[i] + " ";
    const double recall = static_cast<double>(k) / static_cast<double>(n);
    const double f1 = eval::semantic_similarity(pred, ref, onehot).f1;
    worst_subset = std::max(worst_subset, std::abs(f1 - 2.0 * recall / (1.0 + recall)));
  }
  require(o, worst_subset <= 1e-9, "subset F1 off by " + fmt("%.3g", worst_subset));

  // A refusal scores zero and never reaches the judge.
  auto chat = std::make_shared<testing::RecordingChat>([](const backends::ChatRequest& req, int) -> std::string {
    if (req.tag == "extract") {
      return req.last_user_content().find("cannot") != std::string::npos ? "Refusal" : "Drusen";
    }
    return R"({"reasoning": "matches", "score": 1})";
  });
  backends::BackendSet set;
  set.chat = chat;
  set.token_embedder = std::make_shared<testing::OneHotEmbedder>();
  const std::vector<eval::EvalItem> items{{"q1", "what", "What is seen?", "Drusen", {}},
                                          {"q2", "what", "What is seen?", "Drusen", {}},
                                          {"q3", "what", "What is seen?", "Drusen", {}}};
  const auto records = eval::evaluate(items, {{"q1", "I cannot answer that."}, {"q2", ""}, {"q3", "Drusen."}}, set);
  std::size_t judge_calls = 0;
  for (const auto& r : chat->requests()) judge_calls += r.tag == "judge";
  require(o, records[0].refusal && records[0].verdict && records[0].verdict->score == 0.0, "explicit refusal not zero");
  require(o, records[1].refusal && records[1].verdict && records[1].verdict->score == 0.0, "empty response not zero");
  require(o, records[2].verdict && records[2].verdict->score == 1.0, "answered item not judged");
  require(o, judge_calls == 1, std::to_string(judge_calls) + " judge calls for 1 answered item");

  if (o.pass) {
    o.detail = "rubric {0,.25,.5,.75,1} accepted, " + std::to_string(off_rubric) + "/" + std::to_string(off_rubric) +
               " off-rubric rejected; self-similarity max |1-F1| " + fmt("%.1e", worst_self) +
               " (tol 1e-6); subset F1 max error " + fmt("%.1e", worst_subset) + " (tol 1e-9); refusals score 0";
  }
  return o;
}

// --- 7. pixels ----------------------------------------------------------------

Image random_image(std::mt19937_64& rng, int w, int h) {
  Image img(w, h, 3);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(1 + rng() % 255);
  return img;
}

Box random_box(std::mt19937_64& rng, int w, int h, bool may_overhang) {
  const int bw = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(w)), bh = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(h));
  if (may_overhang) {
    return {static_cast<int>(rng() % static_cast<std::uint64_t>(w + bw)) - bw / 2,
            static_cast<int>(rng() % static_cast<std::uint64_t>(h + bh)) - bh / 2, bw, bh};
  }
  return {static_cast<int>(rng() % static_cast<std::uint64_t>(w - bw + 1)),
          static_cast<int>(rng() % static_cast<std::uint64_t>(h - bh + 1)), bw, bh};
}

// Straight per-pixel compositor: canvas of the kept boxes' bounding hull,
// filled with the mask value, then each kept box copied at its offset.
Image reference_compose(const Image& src, const std::vector<Box>& kept, std::uint8_t mask) {
  int x0 = kept[0].x, y0 = kept[0].y, x1 = kept[0].right(), y1 = kept[0].bottom();
  for (const auto& b : kept) {
    x0 = std::min(x0, b.x);
    y0 = std::min(y0, b.y);
    x1 = std::max(x1, b.right());
    y1 = std::max(y1, b.bottom());
  }
  Image out(x1 - x0, y1 - y0, src.channels(), mask);
  for (const auto& b : kept) {
    for (int y = b.y; y < b.bottom(); ++y) {
      for (int x = b.x; x < b.right(); ++x) {
        for (int c = 0; c < src.channels(); ++c) out.at(x - x0, y - y0, c) = src.at(x, y, c);
      }
    }
  }
  return out;
}

Outcome pixels() {
  Outcome o;
  std::mt19937_64 rng(707);
  std::size_t leaked = 0, changed_outside = 0, boxes_checked = 0;
  for (int layout = 0; layout < 100; ++layout) {
    const int w = 8 + static_cast<int>(rng() % 90), h = 8 + static_cast<int>(rng() % 90);
    const auto img = random_image(rng, w, h);
    backends::VisionFixtures fx;
    auto& dets = fx.detections["layout"];
    const int n = static_cast<int>(rng() % 6);
    for (int k = 0; k < n; ++k) dets.push_back({random_box(rng, w, h, true), 0.5 + 0.5 * (static_cast<double>(rng() % 100) / 100.0)});
    backends::MockVision vision(fx, 0);
    const std::uint8_t mask = static_cast<std::uint8_t>(rng() % 3 == 0 ? 0 : rng() % 256);
    const auto out = refiner::deidentify({"layout", img}, vision, mask);
    boxes_checked += dets.size();
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        bool inside = false;
        for (const auto& d : dets) inside = inside || d.box.contains(x, y);
        for (int c = 0; c < 3; ++c) {
          if (inside && out.image.at(x, y, c) != mask) ++leaked;
          if (!inside && out.image.at(x, y, c) != img.at(x, y, c)) ++changed_outside;
        }
      }
    }
  }
  require(o, leaked == 0, std::to_string(leaked) + " unmasked pixel channels inside boxes");
  require(o, changed_outside == 0, std::to_string(changed_outside) + " pixel channels altered outside boxes");

  std::size_t differing = 0, compared = 0;
  for (int layout = 0; layout < 50; ++layout) {
    const int w = 6 + static_cast<int>(rng() % 120), h = 6 + static_cast<int>(rng() % 120);
    const auto img = random_image(rng, w, h);
    std::vector<Box> kept;
    const int n = 1 + static_cast<int>(rng() % 4);
    for (int k = 0; k < n; ++k) kept.push_back(random_box(rng, w, h, false));
    const std::uint8_t mask = static_cast<std::uint8_t>(rng() % 256);
    const auto got = refiner::compose_refined_image(img, kept, mask).image;
    const auto want = reference_compose(img, kept, mask);
    ++compared;
    if (!(got == want)) ++differing;
  }
  require(o, differing == 0, std::to_string(differing) + "/" + std::to_string(compared) + " compositions differ");
  if (o.pass) {
    o.detail = "deidentify: 100 layouts, " + std::to_string(boxes_checked) +
               " boxes, 0 unmasked pixels inside, 0 altered outside; compose: 50 layouts bit-exact";
  }
  return o;
}

}  // namespace

int main() {
  log::set_level(log::Level::kError);
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"segmentation-oracle", segmentation}, {"manifest-arithmetic", manifest_arithmetic},
      {"end-to-end-mock-run", end_to_end},   {"gate-grid", gate_grid},
      {"split", split_criterion},            {"eval", evaluation},
      {"pixels", pixels},
  };
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
