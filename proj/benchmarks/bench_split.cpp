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

#include <benchmark/benchmark.h>

#include <cstdio>

#include "mmcurate/dataset/split.hpp"

namespace {

using namespace mmcurate::dataset;

DatasetManifest pool(int images) {
  std::vector<ManifestRecord> rs;
  const char* subs[] = {"yes_no", "what", "where"};
  for (int i = 0; i < images; ++i) {
    char id[32];
    std::snprintf(id, sizeof(id), "img%07d", i);
    for (int s = 0; s < 3; ++s) {
      if ((i + s) % 4 == 0) continue;
      ManifestRecord r;
      r.image_id = id;
      r.instance_id = std::string(id) + "/vqa." + subs[s];
      r.subtype = subs[s];
      r.modality = static_cast<mmcurate::backends::Modality>(i % 3);
      rs.push_back(std::move(r));
    }
  }
  return assemble_manifest(std::move(rs));
}

void BM_SplitEval(benchmark::State& state) {
  const auto m = pool(static_cast<int>(state.range(0)));
  SplitSpec spec;
  for (auto _ : state) benchmark::DoNotOptimize(split_eval(m, spec));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(m.records.size()));
}
BENCHMARK(BM_SplitEval)->Arg(5000)->Arg(50000)->Unit(benchmark::kMillisecond);

void BM_LargestRemainder(benchmark::State& state) {
  std::vector<std::size_t> w;
  for (int i = 0; i < state.range(0); ++i) w.push_back(static_cast<std::size_t>(17 * i % 101 + 1));
  for (auto _ : state) benchmark::DoNotOptimize(largest_remainder(w, 1234));
}
BENCHMARK(BM_LargestRemainder)->Arg(16)->Arg(1024);

}  // namespace
