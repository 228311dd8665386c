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

#include "mmcurate/pipeline/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <functional>
#include <mutex>
#include <set>
#include <thread>

#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/common/log.hpp"
#include "mmcurate/common/text.hpp"
#include "mmcurate/curation/curation.hpp"
#include "mmcurate/dataset/export.hpp"
#include "mmcurate/dataset/split.hpp"
#include "mmcurate/dataset/stats.hpp"
#include "mmcurate/image/image.hpp"
#include "mmcurate/ingest/ingest.hpp"
#include "mmcurate/refiner/refiner.hpp"
#include "mmcurate/segmenter/embedding_file.hpp"
#include "mmcurate/segmenter/segmenter.hpp"
#include "mmcurate/synthesis/synthesis.hpp"
#include "mmcurate/verify/verify.hpp"

namespace mmcurate::pipeline {

namespace fs = std::filesystem;
using Json = nlohmann::json;
using backends::ChatRole;

namespace {

struct Outcome {
  std::string item_id;
  Status status = Status::kOk;
  Json state;
  std::string reason;
  int attempts = 0;
  std::vector<Outcome> children;
};

struct Pending {
  std::string item_id;
  Json state;  // input state
};

// Runs fn over items with up to `degree` threads; results keep input order.
// Abort-class exceptions are captured and rethrown after every worker joins.
std::vector<std::optional<Outcome>> parallel_map(const std::vector<Pending>& items, int degree,
                                                 const std::function<Outcome(const Pending&)>& fn,
                                                 std::exception_ptr& abort) {
  std::vector<std::optional<Outcome>> out(items.size());
  std::atomic<std::size_t> next{0};
  std::mutex abort_mutex;
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= items.size()) return;
      {
        std::lock_guard lock(abort_mutex);
        if (abort) return;
      }
      try {
        out[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(abort_mutex);
        if (!abort) abort = std::current_exception();
      }
    }
  };
  const auto n = static_cast<std::size_t>(std::max(1, degree));
  if (n == 1 || items.size() <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (std::size_t t = 0; t < std::min(n, items.size()); ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return out;
}

std::string frame_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06d.png", index);
  return buf;
}

std::string safe_name(std::string_view id) {
  std::string out(id);
  for (auto& c : out) {
    if (c == '#' || c == '/' || c == '\\' || c == ':') c = '_';
  }
  return out;
}

std::string episode_id(const std::string& video_id, std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#e%03zu", k);
  return video_id + buf;
}

Outcome discard(const Pending& p, Json state, std::string reason) {
  return {p.item_id, Status::kDiscarded, std::move(state), std::move(reason), 0, {}};
}

Outcome ok(const Pending& p, Json state) { return {p.item_id, Status::kOk, std::move(state), {}, 0, {}}; }

class Runner {
 public:
  Runner(const RunConfig& config, const backends::BackendSet& backends, const RunOptions& options)
      : config_(config), backends_(backends), options_(options), store_(config.run_dir()) {}

  RunReport run();

 private:
  // Stage bodies. Each returns the new item state or a terminal outcome.
  Outcome ingest(const Pending& p);
  Outcome segment(const Pending& p);
  Outcome refine(const Pending& p);
  Outcome separate(const Pending& p);
  Outcome score(const Pending& p);
  Outcome synthesize(const Pending& p);
  Outcome verify(const Pending& p);
  Outcome assemble(const Pending& p);

  Outcome guarded(Stage stage, const Pending& p, Outcome (Runner::*body)(const Pending&));
  void commit(Stage stage, const Pending& input, const Outcome& o);
  std::vector<Pending> pending_for(Stage stage);
  void finalize(RunReport& report);
  RunReport summarize();

  const RunConfig& config_;
  const backends::BackendSet& backends_;
  const RunOptions& options_;
  RunStore store_;
  std::map<std::string, CheckpointEntry> latest_;
  std::map<std::string, ingest::VideoSource> videos_;
};

Outcome Runner::guarded(Stage stage, const Pending& p, Outcome (Runner::*body)(const Pending&)) {
  try {
    return (this->*body)(p);
  } catch (const QuarantineError& e) {
    return {p.item_id, Status::kQuarantined, p.state, e.what(), e.attempts(), {}};
  } catch (const BackendError& e) {
    return {p.item_id, Status::kQuarantined, p.state, std::string("backend error: ") + e.what(), 1, {}};
  } catch (const ParseError& e) {
    return {p.item_id, Status::kQuarantined, p.state, std::string("malformed backend data: ") + e.what(), 1, {}};
  } catch (const ValidationError& e) {
    return {p.item_id, Status::kQuarantined, p.state, std::string(to_string(stage)) + ": " + e.what(), 1, {}};
  }
}

void Runner::commit(Stage stage, const Pending& input, const Outcome& o) {
  CheckpointEntry e;
  e.item_id = o.item_id;
  e.stage = stage;
  e.status = o.status;
  e.reason = o.reason;
  e.attempts = o.attempts;
  if (o.status == Status::kQuarantined) {
    e.state = input.state.is_null() ? std::string() : store_.put(input.state);
  } else {
    e.state = store_.put(o.state);
  }
  for (const auto& c : o.children) e.children.push_back(c.item_id);
  // Children first so a crash between the two lines re-runs the parent,
  // which deterministically rewrites identical child entries.
  for (const auto& c : o.children) commit(stage, Pending{c.item_id, Json()}, c);
  store_.commit(e);
  latest_[e.item_id] = e;
  if (o.status == Status::kDiscarded || o.status == Status::kQuarantined)
    log::decision(to_string(stage), o.item_id, to_string(o.status), o.reason);
}

std::vector<Pending> Runner::pending_for(Stage stage) {
  std::vector<Pending> out;
  if (stage == Stage::kIngested) {
    for (const auto& [id, src] : videos_) {
      auto it = latest_.find(id);
      if (it == latest_.end()) {
        out.push_back({id, Json()});
      } else if (it->second.stage == Stage::kIngested && it->second.status == Status::kQuarantined &&
                 options_.retry_quarantined) {
        out.push_back({id, Json()});
      }
    }
    return out;
  }
  const auto prev = static_cast<Stage>(static_cast<int>(stage) - 1);
  for (const auto& [id, e] : latest_) {
    if (e.status == Status::kOk && e.stage == prev) {
      out.push_back({id, store_.get(e.state)});
    } else if (e.status == Status::kQuarantined && e.stage == stage && options_.retry_quarantined && !e.state.empty() &&
               (stage != Stage::kSegmented || videos_.count(id))) {
      // Episodes quarantined while their video was segmented stay put: the
      // segment stage works on whole videos.
      out.push_back({id, store_.get(e.state)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stages

Outcome Runner::ingest(const Pending& p) {
  const auto& src = videos_.at(p.item_id);
  Json state{{"video_id", src.meta.video_id},
             {"meta", src.meta},
             {"media",
              {{"embeddings", src.media.embeddings.string()},
               {"frames_dir", src.media.frames_dir.string()},
               {"audio", src.media.audio_ref}}}};
  auto pre = ingest::prefilter(src.meta, config_.min_duration_s);
  if (!pre.keep) return discard(p, state, pre.reason);
  static const auto builtin = ingest::KeywordDictionary::builtin();
  const auto dict = config_.keywords ? ingest::KeywordDictionary::load(*config_.keywords) : builtin;
  auto matched = ingest::keyword_match(src.meta, dict);
  state["keywords"] = matched;
  if (matched.empty()) return discard(p, state, "no_keyword_match");
  auto rel = ingest::llm_relevance(src.meta, backends_.chat_for(ChatRole::kRelevance), config_.retry,
                                   config_.generation);
  if (!rel.keep) return discard(p, state, "not_relevant");
  return ok(p, state);
}

Outcome Runner::segment(const Pending& p) {
  const auto& state = p.state;
  const std::string video_id = state.at("video_id");
  const double duration = state.at("meta").at("duration_s").get<double>();
  const fs::path embeddings = state.at("media").at("embeddings").get<std::string>();
  const fs::path frames_dir = state.at("media").at("frames_dir").get<std::string>();
  const std::string audio = state.at("media").at("audio").get<std::string>();
  const auto& seg = config_.segmenter;
  if (frames_dir.empty()) throw ValidationError("video " + video_id + " has no frames directory");

  auto frame_ref = [&](int idx) { return video_id + "/frame/" + std::to_string(idx); };
  auto load_frame = [&](int idx) { return read_png(frames_dir / frame_name(idx)); };

  std::vector<segmenter::FrameSample> frames;
  if (!embeddings.empty()) {
    auto file = segmenter::read_embedding_file(embeddings);
    frames = segmenter::frames_from_embeddings(std::move(file.rows), file.fps > 0.0 ? file.fps : seg.sample_rate_fps);
  } else {
    std::vector<int> indices;
    for (const auto& entry : fs::directory_iterator(frames_dir)) {
      if (entry.path().extension() == ".png") indices.push_back(std::stoi(entry.path().stem().string()));
    }
    std::sort(indices.begin(), indices.end());
    for (int idx : indices) {
      backends::EmbeddingRequest req;
      req.image = backends::ImagePayload{frame_ref(idx), load_frame(idx)};
      frames.push_back({idx, idx / seg.sample_rate_fps, backends_.embedder->embed(req).vector});
    }
  }

  const auto bounds = segmenter::segment_episodes(frames, seg);
  Outcome out{p.item_id, Status::kExpanded, state, {}, 0, {}};
  if (bounds.empty()) return discard(p, state, "no_episodes");
  for (std::size_t k = 0; k < bounds.size(); ++k) {
    const auto& b = bounds[k];
    const auto id = episode_id(video_id, k + 1);
    Json ep{{"item_id", id},
            {"video_id", video_id},
            {"episode_index", k + 1},
            {"frames", {{"first", frames[b.first].frame_index}, {"last", frames[b.last].frame_index}}}};
    Pending child{id, ep};
    auto body = [&]() -> Outcome {
      std::vector<backends::FrameClassification> scores;
      for (std::size_t i = b.first; i <= b.last; ++i) {
        const int idx = frames[i].frame_index;
        scores.push_back(backends_.vision->classify_frame({frame_ref(idx), load_frame(idx)}));
      }
      auto key = segmenter::select_keyframe(scores, seg.keyframe_min_prob);
      if (!key) return discard(child, ep, "no_retinal_frame");
      const auto& kf = frames[b.first + key->offset];
      ep["keyframe"] = {{"frame_index", kf.frame_index},
                        {"timestamp_s", kf.timestamp_s},
                        {"path", (frames_dir / frame_name(kf.frame_index)).string()},
                        {"ref", frame_ref(kf.frame_index)}};
      ep["classification"] = {{"retinal_probability", key->classification.retinal_probability},
                              {"modality", backends::to_string(key->classification.modality)},
                              {"modality_confidence", key->classification.modality_confidence}};
      const auto span = segmenter::transcript_span({frames[b.first].timestamp_s, frames[b.last].timestamp_s},
                                                   seg.delta_t_s, duration);
      ep["span"] = {{"start_s", span.start_s}, {"end_s", span.end_s}};
      std::string text;
      if (!audio.empty()) text = backends_.transcriber->transcribe({audio, span.start_s, span.end_s}).text();
      ep["transcript"] = text;
      return ok(child, ep);
    };
    try {
      out.children.push_back(body());
    } catch (const QuarantineError& e) {
      out.children.push_back({id, Status::kQuarantined, ep, e.what(), e.attempts(), {}});
    } catch (const BackendError& e) {
      out.children.push_back({id, Status::kQuarantined, ep, std::string("backend error: ") + e.what(), 1, {}});
    } catch (const ParseError& e) {
      out.children.push_back({id, Status::kQuarantined, ep, std::string("malformed backend data: ") + e.what(), 1, {}});
    }
  }
  return out;
}

Outcome Runner::refine(const Pending& p) {
  Json state = p.state;
  const auto& kf = state.at("keyframe");
  backends::ImagePayload key{kf.at("ref").get<std::string>(), read_png(kf.at("path").get<std::string>())};
  auto decisions = refiner::filter_regions(key, *backends_.vision, config_.dictionaries);
  std::vector<Box> kept;
  for (const auto& d : decisions) {
    if (d.kept) kept.push_back(d.box);
  }
  state["regions"] = decisions;
  if (kept.empty()) return discard(p, state, "no_clinical_region");
  auto composed = refiner::compose_refined_image(key.image, kept, config_.mask_value);
  auto clean = refiner::deidentify({p.item_id + "/refined", composed.image}, *backends_.vision, config_.mask_value);
  const auto file = "images/" + safe_name(p.item_id) + ".png";
  fs::create_directories(store_.dir() / "images");
  write_png(store_.dir() / file, clean.image);
  Json dets = Json::array();
  for (const auto& d : clean.detections) dets.push_back({{"box", d.box}, {"confidence", d.confidence}});
  state["refined"] = {{"image", file},
                      {"sha256", image_digest(clean.image)},
                      {"layout", composed.layout},
                      {"detections", dets}};
  return ok(p, state);
}

Outcome Runner::separate(const Pending& p) {
  Json state = p.state;
  const std::string transcript = state.value("transcript", "");
  if (text::trim(transcript).empty()) return discard(p, state, "empty_transcript");
  auto sep = curation::separate_cues(transcript, backends_.chat_for(ChatRole::kSeparate), config_.retry,
                                     config_.generation);
  state["separation"] = sep.transcript;
  state["rejected_scenes"] = sep.rejected_scenes;
  if (sep.transcript.scenes.empty()) return discard(p, state, "no_visual_scenes");
  return ok(p, state);
}

Outcome Runner::score(const Pending& p) {
  Json state = p.state;
  const auto sep = state.at("separation").get<curation::SeparatedTranscript>();
  auto s = curation::score_transcript(sep, backends_.chat_for(ChatRole::kScore), config_.retry, config_.generation);
  state["score"] = s;
  state["cot_eligible"] = curation::cot_eligible(s, config_.gates);
  if (auto why = curation::gate_reason(s, config_.gates); !why.empty()) return discard(p, state, "gate:" + why);
  return ok(p, state);
}

Outcome Runner::synthesize(const Pending& p) {
  Json state = p.state;
  const auto sep = state.at("separation").get<curation::SeparatedTranscript>();
  const synthesis::ImageContext image{p.item_id,
                                      backends::modality_from_string(state.at("classification").at("modality").get<std::string>())};
  Json instances = Json::array();
  Json na = Json::array();
  for (auto t : synthesis::all_question_types()) {
    auto v = synthesis::synthesize_vqa(sep, t, image, backends_.chat_for(ChatRole::kVqa), config_.retry,
                                       config_.generation);
    const auto subtype = std::string(synthesis::to_string(t));
    if (!v) {
      na.push_back(subtype);
      continue;
    }
    instances.push_back({{"instance_id", p.item_id + "/vqa." + subtype},
                         {"kind", "vqa"},
                         {"subtype", subtype},
                         {"payload",
                          {{"question", v->question},
                           {"answer", v->answer},
                           {"generator_reasoning", v->generator_reasoning}}}});
  }
  auto conv = synthesis::synthesize_conversation(sep, image, backends_.chat_for(ChatRole::kConversation),
                                                 config_.retry, config_.generation);
  instances.push_back({{"instance_id", p.item_id + "/conversation"},
                       {"kind", "conversation"},
                       {"subtype", ""},
                       {"payload", {{"turns", conv.turns}}}});
  if (state.at("cot_eligible").get<bool>()) {
    auto cot = synthesis::synthesize_cot(sep, image, backends_.chat_for(ChatRole::kCot), config_.retry,
                                         {config_.cot_temperature, config_.generation.max_tokens});
    instances.push_back({{"instance_id", p.item_id + "/cot"},
                         {"kind", "cot"},
                         {"subtype", ""},
                         {"payload",
                          {{"user_text", cot.user_text},
                           {"assistant_text", cot.assistant_text},
                           {"temperature", cot.temperature}}}});
  }
  state["instances"] = instances;
  state["not_applicable"] = na;
  return ok(p, state);
}

Outcome Runner::verify(const Pending& p) {
  Json state = p.state;
  const auto sep = state.at("separation").get<curation::SeparatedTranscript>();
  Json decisions = Json::array();
  for (const auto& inst : state.at("instances")) {
    const auto kind = dataset::instance_kind_from_string(inst.at("kind").get<std::string>());
    dataset::ManifestRecord probe;
    probe.instance_id = inst.at("instance_id");
    probe.kind = kind;
    probe.payload = inst.at("payload");
    auto& chat = backends_.chat_for(kind == dataset::InstanceKind::kCot ? ChatRole::kVerifyCot : ChatRole::kVerify);
    auto d = verify::verify_instance(probe.instance_id, kind, dataset::instance_turns(probe), sep, chat,
                                     config_.retry, config_.generation);
    decisions.push_back(d);
    if (d.answer == verify::Verdict::kDiscard)
      log::decision("verify", d.instance_ref, "discard", d.reasoning);
  }
  state["verification"] = decisions;
  return ok(p, state);
}

Outcome Runner::assemble(const Pending& p) {
  Json state = p.state;
  Json kept = Json::array();
  for (const auto& d : state.at("verification")) {
    if (d.at("answer") == "keep") kept.push_back(d.at("instance_ref"));
  }
  state["kept"] = kept;
  if (kept.empty()) return discard(p, state, "no_instances_kept");
  return ok(p, state);
}

// ---------------------------------------------------------------------------

RunReport Runner::run() {
  config_.validate();
  for (auto& v : ingest::load_metadata(config_.metadata)) {
    auto id = v.meta.video_id;
    videos_.emplace(std::move(id), std::move(v));
  }
  store_.open(config_.effective_run_id(), config_.digest());
  latest_ = store_.latest();

  using Body = Outcome (Runner::*)(const Pending&);
  const std::vector<std::pair<Stage, Body>> stages{
      {Stage::kIngested, &Runner::ingest},     {Stage::kSegmented, &Runner::segment},
      {Stage::kRefined, &Runner::refine},      {Stage::kSeparated, &Runner::separate},
      {Stage::kScored, &Runner::score},        {Stage::kSynthesized, &Runner::synthesize},
      {Stage::kVerified, &Runner::verify},     {Stage::kAssembled, &Runner::assemble}};

  for (const auto& [stage, body] : stages) {
    const auto pending = pending_for(stage);
    if (!pending.empty()) {
      log::info("stage start", {{"stage", to_string(stage)}, {"items", pending.size()}});
      std::exception_ptr abort;
      auto fn = [&, stage = stage, body = body](const Pending& p) { return guarded(stage, p, body); };
      auto results = parallel_map(pending, config_.parallelism, fn, abort);
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (results[i]) commit(stage, pending[i], *results[i]);
      }
      if (abort) std::rethrow_exception(abort);
    }
    if (options_.stop_after && *options_.stop_after == stage) break;
  }

  RunReport report = summarize();
  if (!options_.stop_after || *options_.stop_after == Stage::kAssembled) finalize(report);
  write_json_file(store_.dir() / "report.json", to_json(report));
  return report;
}

RunReport Runner::summarize() {
  RunReport r;
  r.run_id = config_.effective_run_id();
  r.config_digest = config_.digest();
  std::vector<Json> lines;
  for (const auto& [id, e] : latest_) {
    const bool is_video = videos_.count(id) > 0;
    auto& level = is_video ? r.videos : r.episodes;
    ++level.input;
    const bool done = is_video ? e.status == Status::kExpanded
                               : (e.status == Status::kOk && e.stage == Stage::kAssembled);
    if (done) ++level.completed;
    else if (e.status == Status::kDiscarded) ++level.discarded, ++r.discard_reasons[e.reason];
    else if (e.status == Status::kQuarantined) ++level.quarantined, ++r.quarantine_reasons[std::string(to_string(e.stage))];
    else ++level.pending;
    Json line{{"item_id", id}, {"level", is_video ? "video" : "episode"}, {"stage", to_string(e.stage)},
              {"status", done ? (is_video ? "expanded" : "assembled") : std::string(to_string(e.status))}};
    if (!e.reason.empty()) line["reason"] = e.reason;
    lines.push_back(std::move(line));
  }
  // Videos never seen by this run (e.g. stopped before ingest) count as pending.
  for (const auto& [id, src] : videos_) {
    if (!latest_.count(id)) ++r.videos.input, ++r.videos.pending;
  }
  write_jsonl(store_.dir() / "report.jsonl", lines);
  return r;
}

void Runner::finalize(RunReport& report) {
  auto manifest = collect_manifest(config_);
  if (options_.split && config_.split) manifest = dataset::split_eval(std::move(manifest), *config_.split);
  report.manifest_path = store_.dir() / "manifest.jsonl";
  dataset::write_manifest(report.manifest_path, manifest);
  const auto stats = dataset::compute_stats(manifest);
  write_file_atomic(store_.dir() / "stats.txt", dataset::format_table(stats));
  write_json_file(store_.dir() / "stats.json", dataset::to_json(stats));
  for (const auto& row : stats.rows) {
    if (row.key != "total") report.instances[row.key] = row.instances;
  }
  // Provenance blobs for audit bundles.
  std::vector<Json> sources;
  for (const auto& [id, e] : latest_) {
    if (e.status != Status::kOk || e.stage != Stage::kAssembled) continue;
    const auto s = store_.get(e.state);
    sources.push_back({{"episode_id", id},
                       {"raw_transcript", s.value("transcript", "")},
                       {"separation", s.at("separation")},
                       {"score", s.at("score")}});
    for (const auto& d : s.at("verification")) report.verifier_discards += d.at("answer") == "discard";
  }
  write_jsonl(store_.dir() / "sources.jsonl", sources);
  report.manifest_written = true;
}

}  // namespace

Json to_json(const RunReport& r) {
  auto level = [](const LevelCounts& c) {
    return Json{{"input", c.input},
                {"completed", c.completed},
                {"discarded", c.discarded},
                {"quarantined", c.quarantined},
                {"pending", c.pending}};
  };
  return Json{{"run_id", r.run_id},
              {"config_digest", r.config_digest},
              {"videos", level(r.videos)},
              {"episodes", level(r.episodes)},
              {"discard_reasons", r.discard_reasons},
              {"quarantine_reasons", r.quarantine_reasons},
              {"instances", r.instances},
              {"verifier_discards", r.verifier_discards},
              {"manifest_written", r.manifest_written},
              {"manifest", r.manifest_written ? r.manifest_path.filename().string() : ""}};
}

RunReport run_pipeline(const RunConfig& config, const backends::BackendSet& backends, const RunOptions& options) {
  Runner runner(config, backends, options);
  return runner.run();
}

dataset::DatasetManifest collect_manifest(const RunConfig& config) {
  RunStore store(config.run_dir());
  if (!store.exists()) throw ResumeError("no run at " + store.dir().string());
  const auto run_id = config.effective_run_id();
  const auto& vocab = dataset::builtin_condition_vocabulary();
  std::vector<dataset::ManifestRecord> records;
  for (const auto& [id, e] : store.latest()) {
    if (e.status != Status::kOk || e.stage != Stage::kAssembled) continue;
    const auto s = store.get(e.state);
    const auto sep = s.at("separation").get<curation::SeparatedTranscript>();
    const auto modality = backends::modality_from_string(s.at("classification").at("modality").get<std::string>());
    const auto tags = dataset::extract_condition_tags(s.value("transcript", ""), vocab);
    std::set<std::string> kept;
    for (const auto& k : s.at("kept")) kept.insert(k.get<std::string>());
    for (const auto& inst : s.at("instances")) {
      const auto iid = inst.at("instance_id").get<std::string>();
      if (!kept.count(iid)) continue;
      dataset::ManifestRecord r;
      r.instance_id = iid;
      r.image_id = id;
      r.image_path = s.at("refined").at("image").get<std::string>();
      r.kind = dataset::instance_kind_from_string(inst.at("kind").get<std::string>());
      r.subtype = inst.at("subtype").get<std::string>();
      r.modality = modality;
      r.condition_tags = tags;
      r.provenance = {s.at("video_id").get<std::string>(), id, run_id};
      r.context = sep;
      r.payload = inst.at("payload");
      records.push_back(std::move(r));
    }
  }
  return dataset::assemble_manifest(std::move(records));
}

}  // namespace mmcurate::pipeline
