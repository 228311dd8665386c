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

#include "mmcurate/curation/curation.hpp"
#include "mmcurate/synthesis/json_extract.hpp"

namespace {

const std::string kReply =
    "Here is the result you asked for.\n```json\n"
    R"({"supplemental_context": ["Patient P1 is 58."], "scenes": [{"scene_id": 1, "verbatim_scene_text": "The image shows drusen."}]})"
    "\n```\nLet me know if anything else is needed.";

void BM_ParseLlmJson(benchmark::State& state) {
  for (auto _ : state)
    benchmark::DoNotOptimize(mmcurate::synthesis::parse_llm_json(kReply, mmcurate::synthesis::JsonShape::kObject));
}
BENCHMARK(BM_ParseLlmJson);

void BM_IsVerbatim(benchmark::State& state) {
  std::string raw;
  for (int i = 0; i < state.range(0); ++i) raw += "Sentence number " + std::to_string(i) + " about the fundus. ";
  raw += "The image shows \xE2\x80\x9C" "drusen\xE2\x80\x9D near the macula.";
  for (auto _ : state) benchmark::DoNotOptimize(mmcurate::curation::is_verbatim("The image shows \"drusen\" near the macula.", raw));
}
BENCHMARK(BM_IsVerbatim)->Arg(10)->Arg(200);

}  // namespace
