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

#include "mmcurate/pipeline/config.hpp"

#include <cstdlib>
#include <set>

#include "mmcurate/backends/http.hpp"
#include "mmcurate/backends/mock.hpp"
#include "mmcurate/common/digest.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"

namespace mmcurate::pipeline {

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

fs::path resolve(const fs::path& base, const std::string& p) {
  fs::path path(p);
  return path.is_absolute() ? path : (base / path).lexically_normal();
}

std::string file_digest(const fs::path& p) {
  if (p.empty()) return {};
  if (!fs::exists(p)) throw ConfigError("referenced file does not exist: " + p.string());
  return sha256_hex(read_file(p));
}


}  // namespace

void RunConfig::validate() const {
  if (metadata.empty()) throw ConfigError("corpus.metadata is required");
  auto require_file = [](const fs::path& p, const char* key) {
    if (!p.empty() && !fs::is_regular_file(p)) throw ConfigError(std::string(key) + " does not exist: " + p.string());
  };
  require_file(metadata, "corpus.metadata");
  if (keywords) require_file(*keywords, "corpus.keywords");
  if (!(min_duration_s >= 0.0)) throw ConfigError("ingest.min_duration_s must be >= 0");
  segmenter.validate();
  dictionaries.validate();
  gates.validate();
  if (generation.max_tokens < 1) throw ConfigError("generation.max_tokens must be >= 1");
  if (!(generation.temperature >= 0.0) || !(cot_temperature >= 0.0))
    throw ConfigError("generation temperatures must be >= 0");
  if (retry.max_retries < 0) throw ConfigError("retry.max_retries must be >= 0");
  if (!(retry.retry_temperature >= 0.0 && retry.retry_temperature <= 1.0))
    throw ConfigError("retry.retry_temperature must lie in [0, 1]");
  if (parallelism < 1) throw ConfigError("parallelism must be a positive integer");
  if (split) split->validate();
  if (backends.mock) {
    if (backends.mock_chat.empty()) throw ConfigError("backends.mock.chat is required in mock mode");
    if (backends.embedding_dim < 1) throw ConfigError("backends.mock.embedding_dim must be positive");
    require_file(backends.mock_chat, "backends.mock.chat");
    require_file(backends.mock_vision, "backends.mock.vision");
    require_file(backends.mock_transcripts, "backends.mock.transcripts");
  } else {
    for (const auto& [name, url] : backends.urls) {
      if (name != "chat" && name != "cot_chat" && name != "eval_chat" && name != "sidecar")
        throw ConfigError("unknown backend name \"" + name + "\" (expected chat, cot_chat, eval_chat, sidecar)");
      if (url.rfind("http://", 0) != 0 && url.rfind("https://", 0) != 0)
        throw ConfigError("backend " + name + " URL must start with http:// or https://");
    }
    if (!backends.urls.count("chat")) throw ConfigError("backends.chat URL is required unless mocks are used");
    if (!backends.urls.count("sidecar")) throw ConfigError("backends.sidecar URL is required unless mocks are used");
  }
}

std::string RunConfig::digest() const {
  Json j = config_to_json(*this);
  j.erase("parallelism");
  j.erase("run_root");
  j.erase("run_id");
  j["corpus"]["metadata"] = file_digest(metadata);
  // Media referenced by the metadata enter through the metadata content.
  if (keywords) j["corpus"]["keywords"] = file_digest(*keywords);
  auto& b = j["backends"];
  if (backends.mock) {
    b["mock"]["chat"] = file_digest(backends.mock_chat);
    b["mock"]["vision"] = file_digest(backends.mock_vision);
    b["mock"]["transcripts"] = file_digest(backends.mock_transcripts);
  }
  return json_digest(j);
}

std::string RunConfig::effective_run_id() const {
  if (!run_id.empty()) return run_id;
  return "run-" + digest().substr(0, 12) + "-s" + std::to_string(seed);
}

RunConfig config_from_json(const Json& j, const fs::path& base_dir) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known{"corpus", "ingest", "segmenter", "refiner", "gates", "generation", "retry",
                                           "split", "backends", "parallelism", "seed", "run_root", "run_id"};
  for (const auto& [k, v] : j.items()) {
    if (!known.count(k)) throw ConfigError("unknown config key \"" + k + "\"");
  }
  RunConfig c;
  c.base_dir = base_dir;
  try {
    const auto corpus = j.value("corpus", Json::object());
    if (corpus.contains("metadata")) c.metadata = resolve(base_dir, corpus["metadata"].get<std::string>());
    if (corpus.contains("keywords")) c.keywords = resolve(base_dir, corpus["keywords"].get<std::string>());
    c.min_duration_s = j.value("ingest", Json::object()).value("min_duration_s", c.min_duration_s);
    if (j.contains("segmenter")) c.segmenter = j["segmenter"].get<segmenter::SegmenterConfig>();
    if (j.contains("refiner")) {
      c.dictionaries = j["refiner"].get<refiner::PromptDictionaries>();
      c.mask_value = j["refiner"].value("mask_value", c.mask_value);
    }
    if (j.contains("gates")) c.gates = j["gates"].get<curation::GateConfig>();
    const auto gen = j.value("generation", Json::object());
    c.generation.temperature = gen.value("temperature", c.generation.temperature);
    c.generation.max_tokens = gen.value("max_tokens", c.generation.max_tokens);
    c.cot_temperature = gen.value("cot_temperature", c.cot_temperature);
    const auto retry = j.value("retry", Json::object());
    c.retry.max_retries = retry.value("max_retries", c.retry.max_retries);
    c.retry.retry_temperature = retry.value("retry_temperature", c.retry.retry_temperature);
    if (j.contains("split") && !j["split"].is_null()) c.split = j["split"].get<dataset::SplitSpec>();
    const auto b = j.value("backends", Json::object());
    if (b.contains("mock") && !b["mock"].is_null()) {
      const auto& m = b["mock"];
      c.backends.mock = m.value("enabled", true);
      if (m.contains("chat")) c.backends.mock_chat = resolve(base_dir, m["chat"].get<std::string>());
      if (m.contains("vision")) c.backends.mock_vision = resolve(base_dir, m["vision"].get<std::string>());
      if (m.contains("transcripts"))
        c.backends.mock_transcripts = resolve(base_dir, m["transcripts"].get<std::string>());
      c.backends.embedding_dim = m.value("embedding_dim", c.backends.embedding_dim);
    }
    for (const char* name : {"chat", "cot_chat", "eval_chat", "sidecar"}) {
      if (b.contains(name)) c.backends.urls[name] = b[name].get<std::string>();
    }
    c.backends.chat_model = b.value("chat_model", c.backends.chat_model);
    c.backends.cot_model = b.value("cot_model", c.backends.cot_model);
    c.backends.eval_model = b.value("eval_model", c.backends.eval_model);
    c.backends.api_key_env = b.value("api_key_env", c.backends.api_key_env);
    c.parallelism = j.value("parallelism", c.parallelism);
    c.seed = j.value("seed", c.seed);
    if (j.contains("run_root")) c.run_root = resolve(base_dir, j["run_root"].get<std::string>());
    else c.run_root = base_dir / "runs";
    c.run_id = j.value("run_id", c.run_id);
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const fs::path& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  return config_from_json(j, fs::absolute(path).parent_path());
}

Json config_to_json(const RunConfig& c) {
  Json corpus{{"metadata", c.metadata.string()}};
  if (c.keywords) corpus["keywords"] = c.keywords->string();
  Json refiner_j = c.dictionaries;
  refiner_j["mask_value"] = c.mask_value;
  Json b = Json::object();
  if (c.backends.mock) {
    b["mock"] = {{"enabled", true},
                 {"chat", c.backends.mock_chat.string()},
                 {"vision", c.backends.mock_vision.string()},
                 {"transcripts", c.backends.mock_transcripts.string()},
                 {"embedding_dim", c.backends.embedding_dim}};
  } else {
    for (const auto& [k, v] : c.backends.urls) b[k] = v;
    b["chat_model"] = c.backends.chat_model;
    b["cot_model"] = c.backends.cot_model;
    b["eval_model"] = c.backends.eval_model;
  }
  Json j{{"corpus", corpus},
         {"ingest", {{"min_duration_s", c.min_duration_s}}},
         {"segmenter", c.segmenter},
         {"refiner", refiner_j},
         {"gates", c.gates},
         {"generation",
          {{"temperature", c.generation.temperature},
           {"max_tokens", c.generation.max_tokens},
           {"cot_temperature", c.cot_temperature}}},
         {"retry", {{"max_retries", c.retry.max_retries}, {"retry_temperature", c.retry.retry_temperature}}},
         {"split", c.split ? Json(*c.split) : Json(nullptr)},
         {"backends", b},
         {"parallelism", c.parallelism},
         {"seed", c.seed},
         {"run_root", c.run_root.string()},
         {"run_id", c.run_id}};
  return j;
}

backends::BackendSet make_backends(const RunConfig& config) {
  using namespace backends;
  BackendSet set;
  const auto& b = config.backends;
  if (b.mock) {
    auto chat = std::make_shared<ScriptedChat>(ChatFixtures::load(b.mock_chat));
    set.chat = chat;
    set.embedder = std::make_shared<MockEmbedder>(b.embedding_dim, config.seed);
    std::map<std::string, std::vector<TimedSegment>> none;
    set.transcriber = b.mock_transcripts.empty()
                          ? std::make_shared<MockTranscriber>(none)
                          : std::make_shared<MockTranscriber>(MockTranscriber::fixtures_from_json(read_json_file(b.mock_transcripts)));
    set.vision = std::make_shared<MockVision>(
        b.mock_vision.empty() ? VisionFixtures{} : VisionFixtures::from_json(read_json_file(b.mock_vision)),
        config.seed);
    return set;
  }
  std::string key;
  if (!b.api_key_env.empty()) {
    if (const char* v = std::getenv(b.api_key_env.c_str())) key = v;
  }
  auto opts = [&](const std::string& name) {
    HttpOptions o;
    o.base_url = b.urls.at(name);
    o.api_key = key;
    return o;
  };
  set.chat = std::make_shared<ChatCompletionsClient>(opts("chat"), b.chat_model);
  if (b.urls.count("cot_chat"))
    set.cot_chat = std::make_shared<ChatCompletionsClient>(opts("cot_chat"), b.cot_model.empty() ? b.chat_model : b.cot_model);
  if (b.urls.count("eval_chat"))
    set.eval_chat =
        std::make_shared<ChatCompletionsClient>(opts("eval_chat"), b.eval_model.empty() ? b.chat_model : b.eval_model);
  auto sidecar = std::make_shared<SidecarClient>(opts("sidecar"), b.embedding_dim);
  set.embedder = sidecar;
  set.transcriber = sidecar;
  set.vision = sidecar;
  return set;
}

}  // namespace mmcurate::pipeline
