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

#include "gesn/datasets.hpp"
#include "gesn/reservoir.hpp"

namespace {

void BM_Embeddings(benchmark::State& state) {
  gesn::SbmSpec s;
  s.num_nodes = static_cast<std::size_t>(state.range(0));
  s.num_classes = 5;
  s.p_in = 8.0 / static_cast<double>(s.num_nodes);
  s.p_out = 2.0 / static_cast<double>(s.num_nodes);
  s.feature_dim = 128;
  s.feature_signal = 1.0;
  s.seed = 2;
  const gesn::Dataset d = gesn::generate_sbm(s);
  gesn::ReservoirConfig rc;
  rc.hidden_units = static_cast<std::size_t>(state.range(1));
  rc.target_radius = 0.5;
  rc.iterations = 30;
  const gesn::Reservoir res = gesn::Reservoir::create(rc, s.feature_dim);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gesn::compute_embeddings(res, d.graph, d.data.features).states.data());
  }
  state.counters["node_iterations/s"] = benchmark::Counter(
      static_cast<double>(s.num_nodes * rc.iterations), benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_Embeddings)->Args({3000, 64})->Args({3000, 512})->Args({20000, 256})->Unit(benchmark::kMillisecond);

void BM_ReservoirCreate(benchmark::State& state) {
  gesn::ReservoirConfig rc;
  rc.hidden_units = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) {
    ++rc.seed;
    benchmark::DoNotOptimize(gesn::Reservoir::create(rc, 128).achieved_radius());
  }
}
BENCHMARK(BM_ReservoirCreate)->Arg(256)->Arg(2048)->Unit(benchmark::kMillisecond);

}  // namespace
