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

#ifndef GESN_PATHS_HPP_
#define GESN_PATHS_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "gesn/graph.hpp"

namespace gesn {

// Histogram of unweighted shortest-path lengths over unordered node pairs.
struct PathDistribution {
  std::size_t num_nodes = 0;
  std::map<std::size_t, std::uint64_t> counts;  // length d >= 1 -> #pairs
  std::uint64_t num_unreachable_pairs = 0;

  std::uint64_t total_pairs() const;
  std::uint64_t reachable_pairs() const;
  std::size_t max_length() const;  // 0 when no pair is reachable

  // Empirical cumulative distribution over reachable pairs: the fraction of
  // reachable pairs at distance <= d. 1.0 when no pair is reachable.
  double cdf(std::size_t d) const;

  // Smallest d with cdf(d) >= p, for p in (0, 1]. 0 when no pair is reachable.
  std::size_t percentile(double p) const;

  friend bool operator==(const PathDistribution&, const PathDistribution&) = default;
};

// Hop distances from `source` following out-edges; -1 marks unreachable.
std::vector<int> bfs_distances(const Graph& graph, NodeId source);

// Exact all-pairs histogram by one BFS per source node. Edge direction is
// ignored (a directed input is symmetrized first). Per-source work is spread
// over `workers` threads; the histogram is identical for any worker count.
PathDistribution shortest_path_distribution(const Graph& graph, unsigned workers = 1);

}  // namespace gesn

#endif  // GESN_PATHS_HPP_
