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

// Writes the scripted synthetic corpus used by the end-to-end tests: video
// metadata, frame PNGs, frame embeddings, transcripts, mock chat and vision
// fixtures, a run config, and the expected outcome of every item.
//
//   mmcurate-mkcorpus <out_dir>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/image/image.hpp"
#include "mmcurate/segmenter/embedding_file.hpp"
#include "mmcurate/segmenter/segmenter.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;
using mmcurate::Box;

namespace {

constexpr int kDim = 16;
constexpr int kWidth = 48;
constexpr int kHeight = 36;
constexpr int kEpisodeFrames = 6;
constexpr int kGapFrames = 8;  // singleton frames between episodes
constexpr int kKeyOffset = 2;  // keyframe position inside an episode

struct Finding {
  const char* modality;
  const char* finding;
  const char* short_name;
  const char* location;
  const char* condition;
  const char* history;
};

const std::vector<Finding> kFindings{
    {"CFP", "scattered microaneurysms and dot-blot hemorrhages", "microaneurysms", "in the posterior pole",
     "diabetic retinopathy", "a 58-year-old man with type 2 diabetes for fifteen years"},
    {"OCT", "a full-thickness defect with everted edges", "a full-thickness defect", "at the center of the fovea",
     "macular hole", "a 67-year-old woman with distorted central vision in the right eye"},
    {"UWF", "a bullous elevation of the detached retina", "a retinal elevation", "in the superotemporal periphery",
     "retinal detachment", "a 45-year-old myopic man with new floaters and a shadow in his vision"},
    {"CFP", "soft confluent drusen with pigment clumping", "drusen", "around the macula",
     "age-related macular degeneration", "a 74-year-old woman with slowly declining reading vision"},
    {"OCT", "intraretinal cystoid spaces with subretinal fluid", "cystoid spaces", "in the central macula",
     "macular edema", "a 61-year-old man treated for diabetes and hypertension"},
    {"CFP", "an enlarged cup with thinning of the inferior rim", "rim thinning", "at the optic disc", "glaucoma",
     "a 69-year-old woman with raised intraocular pressure on screening"},
    {"CFP", "swollen disc margins with peripapillary hemorrhages", "disc swelling", "at both optic discs",
     "papilledema", "a 29-year-old woman with morning headaches and transient visual obscurations"},
    {"UWF", "sea-fan neovascularization with a small vitreous hemorrhage", "neovascular fronds",
     "in the temporal periphery", "neovascularization", "a 34-year-old man with sickle cell disease"},
    {"CFP", "flame-shaped hemorrhages in all four quadrants with tortuous veins", "flame-shaped hemorrhages",
     "throughout the retina", "retinal vein occlusion", "a 71-year-old man with sudden painless vision loss"},
    {"OCT", "a serous detachment of the neurosensory retina", "a serous detachment", "beneath the fovea",
     "central serous chorioretinopathy", "a 42-year-old man under stress who reports a grey spot"},
    {"CFP", "a cherry-red spot with surrounding retinal whitening", "a cherry-red spot", "at the macula",
     "retinal artery occlusion", "a 76-year-old man with atrial fibrillation and abrupt vision loss"},
    {"OCT", "a hyperreflective membrane with wrinkling of the inner retina", "a hyperreflective membrane",
     "on the inner surface of the macula", "epiretinal membrane", "a 66-year-old woman with mild metamorphopsia"},
    {"UWF", "cotton wool spots and hard exudates", "cotton wool spots", "along the vascular arcades",
     "diabetic retinopathy", "a 52-year-old woman with poorly controlled diabetes"},
    {"CFP", "a horseshoe-shaped break with a rim of pigment", "a horseshoe-shaped break", "in the superior periphery",
     "retinal tear", "a 55-year-old man with flashes after a recent vitreous detachment"},
    {"OCT", "a fibrovascular pigment epithelial detachment", "a pigment epithelial detachment", "under the fovea",
     "choroidal neovascularization", "an 80-year-old woman with new distortion in her left eye"},
    {"CFP", "yellow refractile nodules", "refractile nodules", "buried within the optic disc", "optic disc drusen",
     "a 19-year-old student referred for suspected disc swelling"},
};

std::string cap(std::string s) {
  if (!s.empty() && s[0] >= 'a' && s[0] <= 'z') s[0] = static_cast<char>(s[0] - 'a' + 'A');
  return s;
}

struct Score {
  int quality = 7;
  int difficulty = 6;
  int relevance = 5;
  bool details = true;
};

enum class Separation { kNormal, kZeroScenes, kRetryEscape };

struct EpisodeSpec {
  int finding = 0;
  bool retinal = true;
  bool clinical = true;  // a kept region exists
  bool two_regions = false;  // two clinical regions (composition)
  bool has_audio = true;
  Separation separation = Separation::kNormal;
  bool rejected_scene = false;  // one proposed scene is not verbatim
  Score score;
  std::set<std::string> not_applicable;  // VQA subtypes answered N/A
  bool persona_break = false;  // verifier discards the conversation
  bool discard_all = false;  // verifier discards every instance
  bool discard_cot = false;
  bool malformed_conversation = false;
  bool detections = false;
};

enum class Relevance { kKeep, kDiscard, kMalformed };

struct VideoSpec {
  std::string id;
  std::string title;
  std::string description;
  std::vector<std::string> tags;
  double duration_s = 180.0;
  bool corrupted = false;
  Relevance relevance = Relevance::kKeep;
  bool jitter_only = false;  // no stable episode
  std::vector<EpisodeSpec> episodes;
};

std::vector<VideoSpec> scenarios() {
  std::vector<VideoSpec> v;
  auto video = [&](std::string id, std::string title, std::vector<EpisodeSpec> eps) -> VideoSpec& {
    VideoSpec s;
    s.id = std::move(id);
    s.title = std::move(title);
    s.description = "Grand rounds case review with fundus and OCT imaging.";
    s.tags = {"ophthalmology", "retina"};
    s.episodes = std::move(eps);
    v.push_back(std::move(s));
    return v.back();
  };
  EpisodeSpec base;

  auto& v01 = video("v01", "Quick retina tip", {base});
  v01.duration_s = 30.0;
  auto& v02 = video("v02", "Retinal imaging lecture (damaged upload)", {base});
  v02.corrupted = true;
  auto& v03 = video("v03", "Knife skills for home cooks", {base});
  v03.description = "Dicing onions and julienning carrots.";
  v03.tags = {"cooking", "kitchen"};
  auto& v04 = video("v04", "Retina display phone teardown", {base});
  v04.description = "Unboxing and teardown of a new phone.";
  v04.tags = {"retina display", "gadgets"};
  v04.relevance = Relevance::kDiscard;
  auto& v05 = video("v05", "Retina webinar recording", {base});
  v05.relevance = Relevance::kMalformed;
  auto& v06 = video("v06", "Fundus photography basics", {});
  v06.jitter_only = true;

  EpisodeSpec e;
  e.finding = 0;
  EpisodeSpec talking = base;
  talking.finding = 1;
  talking.retinal = false;
  video("v07", "Diabetic retinopathy grading", {e, talking});

  e = base;
  e.finding = 2;
  e.clinical = false;
  video("v08", "Retinal detachment surgery planning", {e});

  e = base;
  e.finding = 3;
  e.has_audio = false;
  video("v09", "Macular degeneration silent atlas", {e});

  e = base;
  e.finding = 4;
  e.separation = Separation::kZeroScenes;
  video("v10", "Macular edema clinic introduction", {e});

  e = base;
  e.finding = 5;
  e.score = {6, 5, 2, true};
  video("v11", "Glaucoma practice management", {e});

  e = base;
  e.finding = 6;
  e.score = {6, 5, 5, false};
  video("v12", "Papilledema overview", {e});

  e = base;
  e.finding = 7;
  e.not_applicable = {"where"};
  EpisodeSpec e2 = base;
  e2.finding = 8;
  e2.not_applicable = {"what", "where"};
  video("v13", "Ultra-widefield imaging cases", {e, e2});

  e = base;
  e.finding = 9;
  e.persona_break = true;
  video("v14", "OCT of central serous chorioretinopathy", {e});

  e = base;
  e.finding = 10;
  e.score = {9, 9, 5, true};
  video("v15", "Retinal artery occlusion emergency", {e});

  e = base;
  e.finding = 11;
  e.score = {8, 9, 6, true};
  e2 = base;
  e2.finding = 12;
  e2.score = {9, 8, 6, true};
  video("v16", "Epiretinal membrane and diabetic retinopathy", {e, e2});

  e = base;
  e.finding = 13;
  e.score = {10, 10, 4, true};
  video("v17", "Retinal tear in the periphery", {e});

  e = base;
  e.finding = 14;
  e.discard_all = true;
  video("v18", "Choroidal neovascularization debate", {e});

  e = base;
  e.finding = 15;
  e.malformed_conversation = true;
  video("v19", "Optic disc drusen in teenagers", {e});

  e = base;
  e.finding = 0;
  e.separation = Separation::kRetryEscape;
  e.rejected_scene = true;
  video("v20", "Diabetic retinopathy follow-up", {e});

  e = base;
  e.finding = 3;
  e.persona_break = true;
  e.detections = true;
  e2 = base;
  e2.finding = 2;
  e2.persona_break = true;
  e2.not_applicable = {"where"};
  video("v21", "Retina grand rounds", {e, e2});

  e = base;
  e.finding = 4;
  e.score = {10, 9, 6, true};
  e.detections = true;
  video("v22", "Macular edema OCT masterclass", {e});

  e = base;
  e.finding = 5;
  e.two_regions = true;
  video("v23", "Glaucoma optic disc assessment", {e});

  e = base;
  e.finding = 11;
  e.persona_break = true;
  video("v24", "OCT membrane peel indications", {e});

  e = base;
  e.finding = 6;
  e.score = {9, 10, 6, true};
  e.discard_cot = true;
  e2 = base;
  e2.finding = 9;
  video("v25", "Neuro-ophthalmology fundus findings", {e, e2});
  return v;
}

// ---------------------------------------------------------------------------

std::string marker(const std::string& video_id, std::size_t k) {
  return "P" + video_id.substr(1) + static_cast<char>('A' + k);
}

std::string episode_item(const std::string& video_id, std::size_t k) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "#e%03zu", k + 1);
  return video_id + buf;
}

struct Text {
  std::vector<std::string> context;
  std::vector<std::string> scenes;
};

Text episode_text(const EpisodeSpec& e, const std::string& mark) {
  const auto& f = kFindings[static_cast<std::size_t>(e.finding)];
  Text t;
  t.context = {"Patient " + mark + " is " + f.history + ".",
               "We will talk about how to counsel families about " + std::string(f.condition) + " later."};
  t.scenes = {"The image shows " + std::string(f.finding) + " " + f.location + ".",
              "Notice how the " + std::string(f.short_name) + " stand out against the surrounding tissue.",
              "Taken together these findings point to " + std::string(f.condition) + "."};
  return t;
}

Json separation_response(const Text& t, bool with_rejected) {
  Json scenes = Json::array();
  int id = 1;
  for (const auto& s : t.scenes) scenes.push_back({{"scene_id", id++}, {"verbatim_scene_text", s}});
  if (with_rejected)
    scenes.push_back({{"scene_id", id++}, {"verbatim_scene_text", "The scan also reveals a large choroidal tumor."}});
  return {{"supplemental_context", t.context}, {"scene_count", scenes.size()}, {"scenes", scenes}};
}

Json vqa_response(const Finding& f, const std::string& type, bool na) {
  if (na)
    return {{"reasoning", "The transcript does not state this for the image."},
            {"question_type", type},
            {"question", "N/A"},
            {"answer", "N/A"}};
  if (type == "yes_no")
    return {{"reasoning", "The scene names the lesion explicitly."},
            {"question_type", type},
            {"question", "Does this image show " + std::string(f.short_name) + "?"},
            {"answer", "Yes."}};
  if (type == "what")
    return {{"reasoning", "The scene describes the main abnormality."},
            {"question_type", type},
            {"question", "What abnormality is visible in this " + std::string(f.modality) + " image?"},
            {"answer", cap(f.finding) + ", consistent with " + f.condition + "."}};
  return {{"reasoning", "The scene gives the location of the lesion."},
          {"question_type", type},
          {"question", "Where is the main abnormality located in this image?"},
          {"answer", cap(f.location) + "."}};
}

Json turn(const char* from, const std::string& value) { return {{"from", from}, {"value", value}}; }

Json conversation_response(const Finding& f, bool persona_break) {
  const std::string opener = persona_break ? "As the presenter explains in the video, the image shows "
                                           : "The image shows ";
  return Json::array({turn("user", "What stands out in this image?"),
                      turn("assistant", opener + f.finding + " " + f.location + "."),
                      turn("user", "What condition do these findings suggest?"),
                      turn("assistant", "They are consistent with " + std::string(f.condition) + "."),
                      turn("user", "Which feature should I look at first?"),
                      turn("assistant", "Start with the " + std::string(f.short_name) + " " + f.location + ".")});
}

Json cot_response(const Finding& f) {
  return Json::array(
      {turn("user", "Based on this image, what is the most likely diagnosis? Explain your reasoning."),
       turn("assistant", "Step 1: The image shows " + std::string(f.finding) + ". Step 2: The lesions lie " +
                             f.location + ". Step 3: This pattern is typical of " + f.condition +
                             ". Final answer: " + f.condition + ".")});
}

Json verdict(const std::string& answer, const std::string& why) { return {{"reasoning", why}, {"answer", answer}}; }

// Frames: a fundus-like disc for retinal content, a flat grey card otherwise.
mmcurate::Image frame_image(std::uint64_t seed, bool retinal) {
  mmcurate::Image img(kWidth, kHeight, 3, 0);
  std::mt19937_64 rng(seed);
  for (int y = 0; y < kHeight; ++y) {
    for (int x = 0; x < kWidth; ++x) {
      const int noise = static_cast<int>(rng() % 16);
      if (retinal) {
        const double dx = x - 18.0;
        const double dy = y - 18.0;
        const bool inside = dx * dx + dy * dy < 15.0 * 15.0;
        img.at(x, y, 0) = static_cast<std::uint8_t>(inside ? 180 + noise : 10 + noise);
        img.at(x, y, 1) = static_cast<std::uint8_t>(inside ? 80 + noise : 10);
        img.at(x, y, 2) = static_cast<std::uint8_t>(inside ? 30 : 10);
      } else {
        for (int c = 0; c < 3; ++c) img.at(x, y, c) = static_cast<std::uint8_t>(120 + noise);
      }
    }
  }
  return img;
}

// Hand-rolled normal draws so the corpus is identical across standard libraries.
double normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> normalized(std::vector<double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

std::vector<double> random_unit(std::mt19937_64& rng) {
  std::vector<double> v(kDim);
  for (auto& x : v) x = normal(rng);
  return normalized(std::move(v));
}

std::vector<double> jitter(const std::vector<double>& base, std::mt19937_64& rng) {
  auto v = base;
  for (auto& x : v) x += 0.02 * normal(rng);
  return normalized(std::move(v));
}

Json box_json(const Box& b) { return {{"x", b.x}, {"y", b.y}, {"w", b.w}, {"h", b.h}}; }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::cerr << "usage: mmcurate-mkcorpus <out_dir>\n";
    return 1;
  }
  const fs::path out = argv[1];
  fs::create_directories(out);

  std::mt19937_64 rng(20240611);
  std::vector<nlohmann::json> metadata;
  Json transcripts = Json::object();
  Json rules = Json::array();
  Json classify = Json::object();
  Json regions = Json::object();
  Json clip = Json::object();
  Json detections = Json::object();
  Json expected_videos = Json::object();
  Json expected_episodes = Json::object();
  Json expected_instances = Json::object();

  auto rule = [&](const std::string& tag, const std::string& contains, const Json& response,
                  std::optional<double> temperature = std::nullopt) {
    Json r{{"tag", tag}, {"contains", contains}};
    if (temperature) r["temperature"] = *temperature;
    r["response"] = response;
    rules.push_back(std::move(r));
  };

  const Box clinical_box{4, 4, 28, 28};
  const Box face_box{34, 2, 12, 12};
  const Box second_box{30, 18, 16, 16};
  const std::string clinical_prompt = "color fundus photograph";

  for (const auto& v : scenarios()) {
    const fs::path media = out / "media" / v.id;
    fs::create_directories(media / "frames");
    const std::string audio = "audio/" + v.id;

    // Frame layout: 2 lead-in singletons, then episodes separated by gaps.
    std::vector<std::vector<double>> rows;
    std::vector<bool> retinal;
    std::vector<std::pair<int, int>> spans;
    auto singleton = [&] {
      rows.push_back(random_unit(rng));
      retinal.push_back(false);
    };
    singleton();
    singleton();
    if (v.jitter_only) {
      for (int i = 0; i < 10; ++i) singleton();
    }
    for (std::size_t k = 0; k < v.episodes.size(); ++k) {
      if (k > 0) {
        for (int i = 0; i < kGapFrames; ++i) singleton();
      }
      const auto base = random_unit(rng);
      const int first = static_cast<int>(rows.size());
      for (int i = 0; i < kEpisodeFrames; ++i) {
        rows.push_back(jitter(base, rng));
        retinal.push_back(v.episodes[k].retinal);
      }
      spans.push_back({first, first + kEpisodeFrames - 1});
    }
    singleton();
    singleton();

    // Guard against accidental similarity between independent draws.
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
      const bool same_episode = [&] {
        for (auto [a, b] : spans) {
          if (static_cast<int>(i) >= a && static_cast<int>(i) < b) return true;
        }
        return false;
      }();
      const double c = mmcurate::segmenter::cosine_similarity(rows[i], rows[i + 1]);
      if (same_episode != (c >= 0.95)) {
        std::cerr << "embedding draw violates the scripted layout for " << v.id << "\n";
        return 2;
      }
    }
    mmcurate::segmenter::write_embedding_file(media / "embeddings.bin", rows, 1.0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      char name[32];
      std::snprintf(name, sizeof(name), "%06zu.png", i);
      mmcurate::write_png(media / "frames" / name, frame_image(rng(), retinal[i]));
    }

    nlohmann::json meta{{"video_id", v.id},
                        {"title", v.title},
                        {"description", v.description},
                        {"tags", v.tags},
                        {"duration_s", v.duration_s},
                        {"has_captions", false},
                        {"license", "CC-BY"},
                        {"channel", "Synthetic Eye Rounds"},
                        {"corrupted", v.corrupted},
                        {"media",
                         {{"embeddings", "media/" + v.id + "/embeddings.bin"},
                          {"frames_dir", "media/" + v.id + "/frames"},
                          {"audio", audio}}}};
    metadata.push_back(meta);

    const std::string video_key = "\"video_id\": \"" + v.id + "\"";
    if (v.relevance == Relevance::kDiscard)
      rule("relevance", video_key, {{"reasoning", "Consumer electronics, not medicine."}, {"decision", "discard"}});
    if (v.relevance == Relevance::kMalformed) rule("relevance", video_key, "Sure! This looks medical to me.");

    // Video-level expectation.
    std::string video_outcome = "expanded";
    if (v.corrupted) video_outcome = "discarded:corrupted";
    else if (v.duration_s < 60.0) video_outcome = "discarded:too_short";
    else if (v.id == "v03") video_outcome = "discarded:no_keyword_match";
    else if (v.relevance == Relevance::kDiscard) video_outcome = "discarded:not_relevant";
    else if (v.relevance == Relevance::kMalformed) video_outcome = "quarantined:ingested";
    else if (v.jitter_only) video_outcome = "discarded:no_episodes";
    expected_videos[v.id] = video_outcome;

    Json segments = Json::array();
    for (std::size_t k = 0; k < v.episodes.size(); ++k) {
      const auto& e = v.episodes[k];
      const auto& f = kFindings[static_cast<std::size_t>(e.finding)];
      const auto mark = marker(v.id, k);
      const auto item = episode_item(v.id, k);
      const auto [first, last] = spans[k];
      const auto text = episode_text(e, mark);

      // Transcript: one segment per sentence, spread across the episode.
      if (e.has_audio) {
        std::vector<std::string> sentences = text.context;
        sentences.insert(sentences.end(), text.scenes.begin(), text.scenes.end());
        const double step = static_cast<double>(last - first) / static_cast<double>(sentences.size());
        for (std::size_t i = 0; i < sentences.size(); ++i) {
          const double s = first + step * static_cast<double>(i);
          segments.push_back({{"start_s", s}, {"end_s", s + step}, {"text", sentences[i]}});
        }
      }

      // Vision: keyframe at kKeyOffset; probabilities below it elsewhere.
      for (int i = first; i <= last; ++i) {
        const double p = e.retinal ? (i - first == kKeyOffset ? 0.97 : 0.7) : 0.1;
        classify[v.id + "/frame/" + std::to_string(i)] = {
            {"retinal_probability", p}, {"modality", f.modality}, {"modality_confidence", 0.9}};
      }
      const auto key_ref = v.id + "/frame/" + std::to_string(first + kKeyOffset);
      Json boxes = Json::array({box_json(clinical_box), box_json(face_box)});
      Json scores = Json::array();
      scores.push_back({{"box", box_json(clinical_box)},
                        {"scores", e.clinical ? Json{{clinical_prompt, 0.46}, {"*", 0.05}}
                                              : Json{{"presentation slide text", 0.52}, {"*", 0.05}}}});
      scores.push_back({{"box", box_json(face_box)}, {"scores", {{"portrait photograph", 0.61}, {"*", 0.04}}}});
      if (e.two_regions) {
        boxes.push_back(box_json(second_box));
        scores.push_back({{"box", box_json(second_box)}, {"scores", {{"optic disc", 0.38}, {"*", 0.06}}}});
      }
      regions[key_ref] = boxes;
      clip[key_ref] = scores;
      if (e.detections)
        detections[item + "/refined"] = Json::array({{{"x", 1}, {"y", 1}, {"w", 9}, {"h", 5}, {"confidence", 0.88}}});

      // Chat rules for this episode.
      if (e.separation == Separation::kZeroScenes) {
        std::vector<std::string> all = text.context;
        all.insert(all.end(), text.scenes.begin(), text.scenes.end());
        rule("separate", mark, {{"supplemental_context", all}, {"scene_count", 0}, {"scenes", Json::array()}});
      } else if (e.separation == Separation::kRetryEscape) {
        rule("separate", mark, separation_response(text, e.rejected_scene), 0.2);
        rule("separate", mark, "```json\n{\"scenes\": [\n```");
      } else {
        rule("separate", mark, separation_response(text, e.rejected_scene));
      }
      rule("score", mark,
           {{"reasoning", "Scripted score."},
            {"quality", e.score.quality},
            {"difficulty", e.score.difficulty},
            {"Relevance2Medicine", e.score.relevance},
            {"MentionSpecificDetails", e.score.details}});
      for (const std::string type : {"yes_no", "what", "where"})
        rule("vqa." + type, mark, vqa_response(f, type, e.not_applicable.count(type) > 0));
      if (e.malformed_conversation) rule("conversation", mark, "I'm sorry, I can only describe the video in prose.");
      else rule("conversation", mark, conversation_response(f, e.persona_break));
      rule("cot", mark, cot_response(f));
      if (e.discard_all) rule("verify.*", mark, verdict("discard", "The answers are not supported by the scenes."));
      if (e.persona_break)
        rule("verify.conversation", mark, verdict("discard", "The assistant refers to the video presenter."));
      if (e.discard_cot) rule("verify.cot", mark, verdict("discard", "The reasoning adds unsupported steps."));

      // Episode-level expectation, only for videos that reach segmentation.
      if (video_outcome != "expanded") continue;
      std::string outcome = "assembled";
      const bool passes = e.score.relevance >= 3 && e.score.details;
      const bool cot = e.score.quality >= 9 && e.score.difficulty >= 9 && e.score.relevance >= 5 && e.score.details;
      if (!e.retinal) outcome = "discarded:no_retinal_frame";
      else if (!e.clinical) outcome = "discarded:no_clinical_region";
      else if (!e.has_audio) outcome = "discarded:empty_transcript";
      else if (e.separation == Separation::kZeroScenes) outcome = "discarded:no_visual_scenes";
      else if (e.score.relevance < 3) outcome = "discarded:gate:low_relevance";
      else if (!e.score.details) outcome = "discarded:gate:no_specific_details";
      else if (e.malformed_conversation) outcome = "quarantined:synthesized";
      else if (e.discard_all) outcome = "discarded:no_instances_kept";
      expected_episodes[item] = outcome;
      if (outcome != "assembled" || !passes) continue;
      Json kept = Json::array();
      for (const std::string type : {"yes_no", "what", "where"}) {
        if (!e.not_applicable.count(type)) kept.push_back("vqa." + type);
      }
      if (!e.persona_break) kept.push_back("conversation");
      if (cot && !e.discard_cot) kept.push_back("cot");
      expected_instances[item] = kept;
    }
    if (!segments.empty()) transcripts[audio] = segments;
  }

  Json chat{{"rules", rules},
            {"defaults",
             {{"relevance", {{"reasoning", "Ophthalmology teaching content."}, {"decision", "keep"}}},
              {"verify.*", verdict("keep", "Every statement is supported by the scenes.")}}}};
  Json vision{{"classify", classify}, {"regions", regions}, {"clip_scores", clip}, {"detections", detections}};
  Json config{{"corpus", {{"metadata", "metadata.jsonl"}}},
              {"backends",
               {{"mock",
                 {{"enabled", true},
                  {"chat", "chat.json"},
                  {"vision", "vision.json"},
                  {"transcripts", "transcripts.json"},
                  {"embedding_dim", kDim}}}}},
              {"split", {{"targets", {{"yes_no", 2}, {"what", 2}, {"where", 1}}}, {"seed", 7}}},
              {"parallelism", 2},
              {"seed", 7}};
  Json expected{{"videos", expected_videos}, {"episodes", expected_episodes}, {"instances", expected_instances}};

  mmcurate::write_jsonl(out / "metadata.jsonl", metadata);
  auto dump = [&](const char* name, const Json& j) { mmcurate::write_file_atomic(out / name, j.dump(2) + "\n"); };
  dump("chat.json", chat);
  dump("vision.json", vision);
  dump("transcripts.json", transcripts);
  dump("config.json", config);
  dump("expected.json", expected);
  std::cout << "wrote " << metadata.size() << " videos to " << out.string() << "\n";
  return 0;
}
