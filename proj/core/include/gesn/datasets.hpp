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

#ifndef GESN_DATASETS_HPP_
#define GESN_DATASETS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "gesn/graph.hpp"
#include "gesn/paths.hpp"

namespace gesn {

// A node classification task as stored on disk. Splits are keyed by the <k>
// of their split_<k>.json file name.
struct Dataset {
  Graph graph;
  NodeData data;
  std::map<std::size_t, Split> splits;
};

// Reads a dataset directory:
//   edges.tsv     two whitespace-separated 0-based node ids per line
//   features.csv  one row of comma-separated reals per node
//   labels.csv    one integer class id per line
//   split_<k>.json  {"train": [...], "val": [...], "test": [...]}
// Blank lines and lines starting with '#' are skipped in the text files. The
// node count is the number of label lines. Edges are symmetrized and
// deduplicated. Every error is a LoadError naming the file and line.
Dataset load_dataset(const std::filesystem::path& dir);

// Writes the same format. Existing files are overwritten.
void save_dataset(const std::filesystem::path& dir, const Dataset& dataset);

struct DatasetStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;  // stored directed edge slots
  double alpha = 0.0;
  bool alpha_converged = false;
  std::optional<double> edge_homophily;  // empty when undefined (no edges)
  std::optional<double> node_homophily;
  std::size_t features = 0;
  int classes = 0;
  std::size_t path_p50 = 0;
  std::size_t path_p95 = 0;
  std::size_t path_max = 0;
};

DatasetStats compute_stats(const Dataset& dataset, unsigned workers = 1);
std::string describe_stats(const DatasetStats& stats);

struct SbmSpec {
  std::size_t num_nodes = 1000;
  int num_classes = 2;
  double p_in = 0.1;
  double p_out = 0.1;
  std::size_t feature_dim = 16;
  // Distance of each class mean from the origin; 0 makes features pure noise.
  double feature_signal = 0.0;
  std::uint64_t seed = 0;

  void validate() const;
};

// Stochastic block model with equal class blocks (the remainder of the
// integer division goes to the lowest class ids). Each unordered pair of
// distinct nodes is an edge with probability p_in within a class and p_out
// across classes. Features are feature_signal * e_{c mod X} plus standard
// normal noise for a node of class c. An edgeless draw under nonzero
// probabilities is redrawn once with a derived seed, then NumericError.
Dataset generate_sbm(const SbmSpec& spec);

struct SplitFractions {
  double train = 0.48;
  double val = 0.32;
  // test receives the remainder
};

// `count` stratified random splits. Within each class the shuffled members
// are cut at round(train * n_c) and round((train + val) * n_c).
std::map<std::size_t, Split> stratified_splits(const Labels& labels, int num_classes,
                                               std::size_t count, std::uint64_t seed,
                                               SplitFractions fractions = {});

}  // namespace gesn

#endif  // GESN_DATASETS_HPP_
