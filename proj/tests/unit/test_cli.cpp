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

#include <sstream>

#include "cli.hpp"
#include "fixtures.hpp"
#include "mmcurate/common/jsonl.hpp"
#include "mmcurate/dataset/manifest.hpp"

namespace mmcurate::cli {
namespace {

struct Result {
  int code;
  std::string out, err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "mmcurate");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void write_small_manifest(const std::filesystem::path& p) {
  std::vector<dataset::ManifestRecord> rs;
  for (int i = 0; i < 6; ++i) {
    auto r = testing::record("img" + std::to_string(i), dataset::InstanceKind::kVqa, i % 2 ? "what" : "yes_no");
    r.payload = {{"question", "Q?"}, {"answer", i % 2 ? "Drusen." : "Yes."}};
    rs.push_back(r);
  }
  dataset::write_manifest(p, dataset::assemble_manifest(std::move(rs)));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(invoke({"--definitely-not-a-flag"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitInvalid);
  const auto r = invoke({"run-all", "--config", "/nonexistent/config.json"});
  EXPECT_EQ(r.code, kExitInvalid);
  EXPECT_NE(r.err.find("error"), std::string::npos);
  EXPECT_EQ(invoke({"stats"}).code, kExitInvalid);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST(Cli, StatsAndSplit) {
  testing::TempDir dir;
  write_small_manifest(dir / "m.jsonl");
  auto r = invoke({"stats", "--manifest", (dir / "m.jsonl").string()});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("Total"), std::string::npos);
  r = invoke({"split", "--manifest", (dir / "m.jsonl").string(), "--out", (dir / "s.jsonl").string(), "--targets",
              "yes_no=1,what=2,where=0"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  r = invoke({"stats", "--manifest", (dir / "s.jsonl").string(), "--json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rows"].back()["test"], 3);
  EXPECT_EQ(invoke({"split", "--manifest", (dir / "m.jsonl").string(), "--out", (dir / "x.jsonl").string(),
                    "--targets", "yes_no=9"})
                .code,
            kExitInvalid);
  EXPECT_EQ(invoke({"split", "--manifest", (dir / "m.jsonl").string(), "--out", (dir / "x.jsonl").string(),
                    "--targets", "yes_no"})
                .code,
            kExitInvalid);
}

TEST(Cli, UnreachableBackendIsPipelineFailure) {
  testing::TempDir dir;
  auto cfg = read_json_file(testing::corpus_dir() / "config.json");
  cfg["corpus"]["metadata"] = (testing::corpus_dir() / "metadata.jsonl").string();
  cfg["backends"] = {{"chat", "http://127.0.0.1:9"}, {"sidecar", "http://127.0.0.1:9"}};
  cfg["retry"] = {{"max_retries", 0}};
  write_json_file(dir / "config.json", cfg);
  const auto r = invoke({"ingest", "--config", (dir / "config.json").string(), "--run-dir", (dir / "run").string()});
  EXPECT_EQ(r.code, kExitPipeline) << r.out << r.err;
}

}  // namespace
}  // namespace mmcurate::cli
