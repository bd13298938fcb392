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

#include <doctest.h>

#include "gesn/error.hpp"
#include "gesn/paths.hpp"
#include "oracles.hpp"

using namespace gesn;

TEST_CASE("shortest path distribution examples") {
  SUBCASE("path on 3 nodes") {
    const Graph g = Graph::ensure_undirected(3, std::vector<Edge>{{0, 1}, {1, 2}});
    const PathDistribution d = shortest_path_distribution(g);
    CHECK(d.counts == std::map<std::size_t, std::uint64_t>{{1, 2}, {2, 1}});
    CHECK(d.num_unreachable_pairs == 0);
  }
  SUBCASE("two disjoint edges") {
    const Graph g = Graph::ensure_undirected(4, std::vector<Edge>{{0, 1}, {2, 3}});
    const PathDistribution d = shortest_path_distribution(g);
    CHECK(d.counts == std::map<std::size_t, std::uint64_t>{{1, 2}});
    CHECK(d.num_unreachable_pairs == 4);
  }
  SUBCASE("triangle") {
    const Graph g = Graph::ensure_undirected(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
    CHECK(shortest_path_distribution(g).counts == std::map<std::size_t, std::uint64_t>{{1, 3}});
  }
  SUBCASE("single node and self-loops") {
    const Graph g = Graph::ensure_undirected(1, std::vector<Edge>{{0, 0}});
    const PathDistribution d = shortest_path_distribution(g);
    CHECK(d.counts.empty());
    CHECK(d.total_pairs() == 0);
    CHECK(d.percentile(0.95) == 0);
    CHECK(d.cdf(0) == 1.0);
  }
}

TEST_CASE("directed input is measured on its undirected closure") {
  const Graph g = Graph::from_directed_edges(3, std::vector<Edge>{{0, 1}, {2, 1}});
  const PathDistribution d = shortest_path_distribution(g);
  CHECK(d.counts == std::map<std::size_t, std::uint64_t>{{1, 2}, {2, 1}});
}

TEST_CASE("BFS matches Floyd-Warshall exhaustively on random small graphs") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 250; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(uniform01(rng) * 8);  // 1..8
    const Graph g = testing::random_graph(n, uniform01(rng), rng);
    const PathDistribution bfs = shortest_path_distribution(g);
    const PathDistribution fw = testing::floyd_warshall(g);
    CHECK(bfs == fw);
    std::uint64_t sum = bfs.num_unreachable_pairs;
    for (const auto& [len, c] : bfs.counts) {
      sum += c;
      CHECK(len >= 1);
      CHECK(len <= n - 1);
    }
    CHECK(sum == static_cast<std::uint64_t>(n * (n - 1) / 2));
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("histogram does not depend on the worker count") {
  Rng rng(3);
  const Graph g = testing::random_graph(300, 0.01, rng);
  CHECK(shortest_path_distribution(g, 1) == shortest_path_distribution(g, 4));
}

TEST_CASE("cumulative distribution and percentiles") {
  // Path 0-1-2-3-4: lengths 1 x4, 2 x3, 3 x2, 4 x1.
  std::vector<Edge> e{{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  const PathDistribution d = shortest_path_distribution(Graph::ensure_undirected(5, e));
  CHECK(d.cdf(0) == 0.0);
  CHECK(d.cdf(1) == doctest::Approx(0.4));
  CHECK(d.cdf(2) == doctest::Approx(0.7));
  CHECK(d.cdf(4) == 1.0);
  CHECK(d.percentile(0.4) == 1);
  CHECK(d.percentile(0.5) == 2);
  CHECK(d.percentile(0.95) == 4);
  CHECK(d.percentile(1.0) == 4);
  CHECK(d.max_length() == 4);
  CHECK_THROWS_AS(d.percentile(0.0), InvalidArgument);

  double prev = 0.0;
  for (std::size_t k = 0; k <= 6; ++k) {
    CHECK(d.cdf(k) >= prev);
    prev = d.cdf(k);
  }
  CHECK(prev == 1.0);
}

TEST_CASE("bfs_distances") {
  const Graph g = Graph::ensure_undirected(4, std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(bfs_distances(g, 0) == std::vector<int>{0, 1, 2, -1});
  CHECK_THROWS_AS(bfs_distances(g, 4), InvalidArgument);
}
