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

#include <random>

#include "mmcurate/backends/mock.hpp"
#include "mmcurate/eval/eval.hpp"

namespace {

std::vector<std::vector<double>> tokens(std::size_t n, std::size_t dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::vector<std::vector<double>> out(n, std::vector<double>(dim));
  for (auto& v : out)
    for (auto& x : v) x = g(rng);
  return out;
}

void BM_GreedyMatch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = tokens(n, 768, 1), r = tokens(n, 768, 2);
  for (auto _ : state) benchmark::DoNotOptimize(mmcurate::eval::greedy_match(p, r));
}
BENCHMARK(BM_GreedyMatch)->Arg(8)->Arg(32)->Arg(128);

void BM_SemanticSimilarity(benchmark::State& state) {
  mmcurate::backends::MockEmbedder embedder(384, 3);
  const std::string pred = "Scattered microaneurysms and dot blot hemorrhages in the posterior pole.";
  const std::string ref = "Microaneurysms with hemorrhages near the fovea, consistent with diabetic retinopathy.";
  for (auto _ : state) benchmark::DoNotOptimize(mmcurate::eval::semantic_similarity(pred, ref, embedder));
}
BENCHMARK(BM_SemanticSimilarity);

}  // namespace
