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

#include <gtest/gtest.h>

#include <fstream>

#include "fixtures.hpp"
#include "mmcurate/common/error.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/pipeline/checkpoint.hpp"
#include "mmcurate/pipeline/config.hpp"

namespace mmcurate::pipeline {
namespace {

namespace fs = std::filesystem;

nlohmann::json corpus_config() { return read_json_file(testing::corpus_dir() / "config.json"); }

TEST(Config, LoadsShippedCorpusConfig) {
  const auto c = load_config(testing::corpus_dir() / "config.json");
  EXPECT_TRUE(c.backends.mock);
  EXPECT_EQ(c.parallelism, 2);
  ASSERT_TRUE(c.split);
  EXPECT_EQ(c.split->targets.at("where"), 1);
  EXPECT_EQ(c.run_root, testing::corpus_dir() / "runs");
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  auto j = corpus_config();
  j["colour"] = 1;
  EXPECT_THROW(config_from_json(j, testing::corpus_dir()), ConfigError);
  j = corpus_config();
  j["parallelism"] = 0;
  EXPECT_THROW(config_from_json(j, testing::corpus_dir()).validate(), ConfigError);
  j = corpus_config();
  j["backends"]["mock"]["chat"] = "missing.json";
  EXPECT_THROW(config_from_json(j, testing::corpus_dir()).validate(), ConfigError);
  j = corpus_config();
  j["backends"] = {{"chat", "ftp://x"}, {"sidecar", "http://localhost:1"}};
  EXPECT_THROW(config_from_json(j, testing::corpus_dir()).validate(), ConfigError);
  EXPECT_THROW(load_config(testing::corpus_dir() / "nope.json"), ConfigError);
}

TEST(Config, DigestIgnoresLocationAndParallelism) {
  const auto base = config_from_json(corpus_config(), testing::corpus_dir());
  auto j = corpus_config();
  j["parallelism"] = 7;
  j["run_root"] = "/tmp/elsewhere";
  j["run_id"] = "named";
  EXPECT_EQ(config_from_json(j, testing::corpus_dir()).digest(), base.digest());

  testing::TempDir copy;
  for (const auto& e : fs::directory_iterator(testing::corpus_dir())) {
    if (e.is_regular_file()) fs::copy_file(e.path(), copy / e.path().filename().string());
  }
  EXPECT_EQ(load_config(copy / "config.json").digest(), base.digest());

  j = corpus_config();
  j["seed"] = 8;
  EXPECT_NE(config_from_json(j, testing::corpus_dir()).digest(), base.digest());
  std::ofstream(copy / "chat.json", std::ios::app) << " ";
  EXPECT_NE(load_config(copy / "config.json").digest(), base.digest());
  EXPECT_EQ(base.effective_run_id(), config_from_json(corpus_config(), testing::corpus_dir()).effective_run_id());
}

TEST(Stages, NamesRoundTrip) {
  for (auto s : all_stages()) EXPECT_EQ(stage_from_string(to_string(s)), s);
  EXPECT_EQ(all_stages().size(), 8u);
  for (auto s : {Status::kOk, Status::kExpanded, Status::kDiscarded, Status::kQuarantined})
    EXPECT_EQ(status_from_string(to_string(s)), s);
  EXPECT_THROW(stage_from_string("cooked"), Error);
}

TEST(RunStore, ArtifactsAndLatest) {
  testing::TempDir dir;
  RunStore store(dir / "run");
  EXPECT_FALSE(store.exists());
  store.open("r1", "abc");
  EXPECT_TRUE(store.exists());
  const auto d = store.put({{"x", 1}});
  EXPECT_EQ(store.put({{"x", 1}}), d);
  EXPECT_EQ(store.get(d)["x"], 1);
  store.commit({"v1", Stage::kIngested, Status::kOk, d, "", 1, {}});
  store.commit({"v1", Stage::kSegmented, Status::kExpanded, d, "", 1, {"v1#e001"}});
  store.commit({"v2", Stage::kIngested, Status::kDiscarded, "", "too_short", 1, {}});
  const auto latest = store.latest();
  ASSERT_EQ(latest.size(), 2u);
  EXPECT_EQ(latest.at("v1").stage, Stage::kSegmented);
  EXPECT_EQ(latest.at("v1").children, std::vector<std::string>{"v1#e001"});
  EXPECT_EQ(latest.at("v2").reason, "too_short");
}

TEST(RunStore, RefusesDifferentDigest) {
  testing::TempDir dir;
  {
    RunStore s(dir / "run");
    s.open("r1", "abc");
  }
  RunStore again(dir / "run");
  EXPECT_THROW(again.open("r1", "def"), ResumeError);
  EXPECT_NO_THROW(again.open("r1", "abc"));
}

TEST(RunStore, DropsTornTail) {
  testing::TempDir dir;
  {
    RunStore s(dir / "run");
    s.open("r1", "abc");
    s.commit({"v1", Stage::kIngested, Status::kOk, "", "", 1, {}});
  }
  std::ofstream(dir / "run/checkpoint.jsonl", std::ios::app) << R"({"item_id": "v2", "sta)";
  RunStore s(dir / "run");
  EXPECT_EQ(s.entries().size(), 1u);
  s.open("r1", "abc");
  s.commit({"v3", Stage::kIngested, Status::kOk, "", "", 1, {}});
  const auto latest = s.latest();
  EXPECT_EQ(latest.size(), 2u);
  EXPECT_TRUE(latest.count("v3"));
}

TEST(RunStore, DetectsCorruptArtifact) {
  testing::TempDir dir;
  RunStore s(dir / "run");
  s.open("r1", "abc");
  const auto d = s.put({{"x", 1}});
  std::ofstream(dir / ("run/artifacts/" + d.substr(0, 2) + "/" + d + ".json")) << "{\"x\": 2}";
  EXPECT_THROW(s.get(d), ResumeError);
}

}  // namespace
}  // namespace mmcurate::pipeline
