// Copyright 2026 The GESN Authors.
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

#include <vector>

#include "gesn/datasets.hpp"
#include "gesn/graph.hpp"
#include "gesn/paths.hpp"
#include "gesn/spectral.hpp"

namespace {

gesn::Graph sbm_graph(std::size_t n, double degree) {
  gesn::SbmSpec s;
  s.num_nodes = n;
  s.num_classes = 4;
  s.p_in = 1.5 * degree / static_cast<double>(n);
  s.p_out = 0.5 * degree / static_cast<double>(n);
  s.feature_dim = 1;
  s.seed = 1;
  return gesn::generate_sbm(s).graph;
}

void BM_CsrMultiply(benchmark::State& state) {
  const gesn::Graph g = sbm_graph(static_cast<std::size_t>(state.range(0)), static_cast<double>(state.range(1)));
  std::vector<double> x(g.num_nodes(), 1.0);
  std::vector<double> y(g.num_nodes());
  for (auto _ : state) {
    g.multiply(x, y);
    benchmark::DoNotOptimize(y.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_edges()));
}
BENCHMARK(BM_CsrMultiply)->Args({2000, 10})->Args({20000, 10})->Args({20000, 100});

void BM_SpectralRadius(benchmark::State& state) {
  const gesn::Graph g = sbm_graph(static_cast<std::size_t>(state.range(0)), 20.0);
  for (auto _ : state) benchmark::DoNotOptimize(gesn::spectral_radius(g).value);
}
BENCHMARK(BM_SpectralRadius)->Arg(2000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_PathDistribution(benchmark::State& state) {
  const gesn::Graph g = sbm_graph(static_cast<std::size_t>(state.range(0)), 8.0);
  for (auto _ : state) benchmark::DoNotOptimize(gesn::shortest_path_distribution(g).max_length());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.num_nodes()));
}
BENCHMARK(BM_PathDistribution)->Arg(500)->Arg(3000)->Unit(benchmark::kMillisecond);

}  // namespace
