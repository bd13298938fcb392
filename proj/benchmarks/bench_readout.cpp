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

#include <numeric>

#include "gesn/random.hpp"
#include "gesn/readout.hpp"

namespace {

void BM_RidgeFit(benchmark::State& state) {
  const auto n = static_cast<Eigen::Index>(state.range(0));
  const auto h = static_cast<Eigen::Index>(state.range(1));
  gesn::Rng rng(3);
  gesn::Matrix g(n, h);
  for (Eigen::Index i = 0; i < g.size(); ++i) g.data()[i] = gesn::uniform_symmetric(rng, 1.0);
  gesn::Labels y(static_cast<std::size_t>(n));
  for (auto& l : y) l = static_cast<gesn::Label>(gesn::uniform01(rng) * 7);
  gesn::NodeIndex rows(static_cast<std::size_t>(n));
  std::iota(rows.begin(), rows.end(), 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(gesn::fit_ridge(g, y, 7, rows, {}).weights.data());
  }
}
BENCHMARK(BM_RidgeFit)->Args({1300, 64})->Args({1300, 1024})->Args({10000, 256})->Unit(benchmark::kMillisecond);

}  // namespace
