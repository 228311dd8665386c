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

#include <cmath>
#include <random>

#include "mmcurate/segmenter/segmenter.hpp"

namespace {

using mmcurate::segmenter::FrameSample;

std::vector<FrameSample> walk(std::size_t n, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  std::vector<double> cur(dim);
  for (auto& x : cur) x = g(rng);
  std::vector<FrameSample> frames;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& x : cur) x += 0.2 * g(rng) / std::sqrt(static_cast<double>(dim));
    double norm = 0;
    for (double x : cur) norm += x * x;
    std::vector<double> unit(cur);
    for (auto& x : unit) x /= std::sqrt(norm);
    frames.push_back({static_cast<int>(i), static_cast<double>(i), unit});
  }
  return frames;
}

void BM_SegmentEpisodes(benchmark::State& state) {
  const auto frames = walk(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
  mmcurate::segmenter::SegmenterConfig cfg;
  for (auto _ : state) benchmark::DoNotOptimize(mmcurate::segmenter::segment_episodes(frames, cfg));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SegmentEpisodes)->Args({300, 512})->Args({3600, 512})->Args({3600, 1024});

}  // namespace
