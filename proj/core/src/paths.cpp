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

#include "gesn/paths.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

#include "gesn/error.hpp"
#include "gesn/parallel.hpp"

namespace gesn {

std::uint64_t PathDistribution::total_pairs() const {
  const auto n = static_cast<std::uint64_t>(num_nodes);
  return n < 2 ? 0 : n * (n - 1) / 2;
}

std::uint64_t PathDistribution::reachable_pairs() const {
  std::uint64_t total = 0;
  for (const auto& [d, c] : counts) total += c;
  return total;
}

std::size_t PathDistribution::max_length() const {
  return counts.empty() ? 0 : counts.rbegin()->first;
}

double PathDistribution::cdf(std::size_t d) const {
  const std::uint64_t reachable = reachable_pairs();
  if (reachable == 0) return 1.0;
  std::uint64_t below = 0;
  for (const auto& [len, c] : counts) {
    if (len > d) break;
    below += c;
  }
  return static_cast<double>(below) / static_cast<double>(reachable);
}

std::size_t PathDistribution::percentile(double p) const {
  if (!(p > 0.0 && p <= 1.0)) throw InvalidArgument("percentile must lie in (0, 1]");
  const std::uint64_t reachable = reachable_pairs();
  if (reachable == 0) return 0;
  // Integer threshold avoids rounding trouble at exact quantiles.
  const auto needed = static_cast<std::uint64_t>(std::ceil(p * static_cast<double>(reachable)));
  std::uint64_t below = 0;
  for (const auto& [len, c] : counts) {
    below += c;
    if (below >= needed) return len;
  }
  return max_length();
}

std::vector<int> bfs_distances(const Graph& graph, NodeId source) {
  if (source < 0 || static_cast<std::size_t>(source) >= graph.num_nodes()) {
    throw InvalidArgument("BFS source out of range");
  }
  std::vector<int> dist(graph.num_nodes(), -1);
  std::vector<NodeId> frontier{source};
  std::vector<NodeId> next;
  dist[static_cast<std::size_t>(source)] = 0;
  int level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (NodeId v : frontier) {
      for (NodeId u : graph.neighbors(v)) {
        if (dist[static_cast<std::size_t>(u)] < 0) {
          dist[static_cast<std::size_t>(u)] = level;
          next.push_back(u);
        }
      }
    }
    std::swap(frontier, next);
  }
  return dist;
}

PathDistribution shortest_path_distribution(const Graph& input, unsigned workers) {
  const Graph symmetrized =
      input.is_symmetric() ? Graph{} : Graph::ensure_undirected(input.num_nodes(), input.edges());
  const Graph& graph = input.is_symmetric() ? input : symmetrized;
  const std::size_t n = graph.num_nodes();

  // Sources are grouped in fixed blocks; each block owns a length histogram
  // indexed by distance, and blocks are summed in order afterwards.
  constexpr std::size_t kBlock = 64;
  const std::size_t num_blocks = (n + kBlock - 1) / kBlock;
  std::vector<std::vector<std::uint64_t>> partial(num_blocks);

  parallel_for(n, workers, kBlock, [&](std::size_t begin, std::size_t end) {
    std::vector<std::uint64_t>& hist = partial[begin / kBlock];
    for (std::size_t s = begin; s < end; ++s) {
      const std::vector<int> dist = bfs_distances(graph, static_cast<NodeId>(s));
      for (std::size_t t = s + 1; t < n; ++t) {
        const int d = dist[t];
        if (d < 0) continue;
        if (hist.size() <= static_cast<std::size_t>(d)) hist.resize(static_cast<std::size_t>(d) + 1, 0);
        ++hist[static_cast<std::size_t>(d)];
      }
    }
  });

  PathDistribution out;
  out.num_nodes = n;
  for (const auto& hist : partial) {
    for (std::size_t d = 1; d < hist.size(); ++d) {
      if (hist[d] != 0) out.counts[d] += hist[d];
    }
  }
  out.num_unreachable_pairs = out.total_pairs() - out.reachable_pairs();
  return out;
}

}  // namespace gesn
