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

#ifndef GESN_SELECTION_HPP_
#define GESN_SELECTION_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gesn/datasets.hpp"
#include "gesn/graph.hpp"
#include "gesn/paths.hpp"

namespace gesn {

// Hyperparameter lattice. Radii are multiples of 1/alpha and are resolved
// against the measured graph radius when the search runs.
struct GridSpec {
  std::vector<std::size_t> units;
  std::vector<double> radius_multiples;
  std::vector<double> input_scalings;
  std::vector<double> lambdas;
  std::size_t iterations = 100;
  std::size_t seeds_per_config = 10;
  std::vector<std::size_t> split_ids;  // empty: every split of the dataset
  std::optional<double> recurrent_density;

  void validate() const;

  // Units 2^4..2^12, radii 0.1/alpha..50/alpha, scalings 1 down to 1/320 by
  // halving (endpoint included), lambdas 1e-5..1e2 by decades, K = 100.
  static GridSpec full_lattice();
};

// One point of the lattice. `lambda` varies fastest in grid order, then
// scaling, radius and units.
struct GridConfig {
  std::size_t units = 0;
  double radius_multiple = 0.0;
  double input_scaling = 0.0;
  double lambda = 0.0;

  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct RunRecord {
  std::size_t split = 0;
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  std::size_t config_index = 0;
  GridConfig config;
  double train_accuracy = 0.0;
  double val_accuracy = 0.0;
  double test_accuracy = 0.0;
  double embed_seconds = 0.0;
  double fit_seconds = 0.0;
  bool failed = false;
  std::string error;
};

struct SplitSelection {
  std::size_t split = 0;
  std::size_t config_index = 0;
  GridConfig config;
  double mean_val_accuracy = 0.0;
  double mean_test_accuracy = 0.0;
  std::size_t num_runs = 0;  // successful seeds behind the means
};

struct ExperimentResult {
  double alpha = 0.0;
  std::size_t iterations = 0;
  std::vector<GridConfig> configs;       // grid order
  std::vector<RunRecord> runs;           // sorted by (split, config, repetition)
  std::vector<SplitSelection> selections;  // one per split, ascending split id
  double test_mean = 0.0;
  double test_std = 0.0;  // population standard deviation over splits
  std::size_t failed_runs = 0;
};

struct SearchOptions {
  std::uint64_t master_seed = 0;
  unsigned workers = 1;
};

// Expands the lattice in grid order.
std::vector<GridConfig> expand_grid(const GridSpec& grid);

// Seed of the reservoir used for (reservoir configuration, split, repetition).
// `reservoir_index` enumerates lattice points without the lambda axis.
std::uint64_t run_seed(std::uint64_t master_seed, std::size_t reservoir_index,
                       std::size_t split, std::size_t repetition);

// For every split and every lattice point, trains seeds_per_config readouts
// on fresh reservoirs and keeps the point with the best mean validation
// accuracy (first in grid order on ties). Embeddings are shared across the
// lambda axis. Failed runs are recorded and excluded from means.
ExperimentResult grid_search(const GridSpec& grid, const Dataset& dataset,
                             const SearchOptions& options = {});

// Recomputes selections and aggregate statistics from `result.runs`.
void summarize(ExperimentResult& result, std::size_t num_configs);

// Writes one row per run.
void write_runs_csv(const ExperimentResult& result, std::ostream& out);
// Selected configs and aggregate statistics; contains no timing data, so the
// output is a pure function of grid, dataset and master seed.
std::string summary_json(const ExperimentResult& result);

// Copy whose features are a single all-ones column.
NodeData replace_features_constant(const NodeData& data);

// 95th percentile of the shortest-path distribution plus one.
std::size_t auto_iterations(const PathDistribution& paths);

}  // namespace gesn

#endif  // GESN_SELECTION_HPP_
