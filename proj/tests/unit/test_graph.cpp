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

#include <algorithm>
#include <cmath>
#include <numeric>

#include "gesn/error.hpp"
#include "gesn/graph.hpp"
#include "gesn/spectral.hpp"
#include "oracles.hpp"

using namespace gesn;

namespace {

Graph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (std::size_t i = 1; i <= leaves; ++i) e.push_back({0, static_cast<NodeId>(i)});
  return Graph::ensure_undirected(leaves + 1, e);
}

Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) {
    e.push_back({static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % n)});
  }
  return Graph::ensure_undirected(n, e);
}

Graph clique(std::size_t n) {
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) e.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
  return Graph::ensure_undirected(n, e);
}

}  // namespace

TEST_CASE("from_csr rejects broken invariants") {
  CHECK_NOTHROW(Graph::from_csr(2, {0, 1, 2}, {1, 0}));
  CHECK_THROWS_AS(Graph::from_csr(2, {0, 1}, {1}), InvalidArgument);          // short offsets
  CHECK_THROWS_AS(Graph::from_csr(2, {1, 1, 2}, {1, 0}), InvalidArgument);    // offsets[0] != 0
  CHECK_THROWS_AS(Graph::from_csr(2, {0, 2, 1}, {1}), InvalidArgument);       // decreasing
  CHECK_THROWS_AS(Graph::from_csr(2, {0, 1, 2}, {2, 0}), InvalidArgument);    // out of range
  CHECK_THROWS_AS(Graph::from_csr(2, {0, 2, 2}, {1, 1}), InvalidArgument);    // duplicate
  CHECK_THROWS_AS(Graph::from_csr(3, {0, 2, 2, 2}, {2, 1}), InvalidArgument); // unsorted
}

TEST_CASE("ensure_undirected symmetrizes, deduplicates and keeps self-loops once") {
  const std::vector<Edge> edges{{0, 1}, {1, 0}, {1, 2}, {2, 2}, {0, 1}};
  const Graph g = Graph::ensure_undirected(3, edges);
  CHECK(g.is_symmetric());
  CHECK(g.num_edges() == 5);  // 0-1, 1-0, 1-2, 2-1, 2-2
  CHECK(g.row_offsets() == std::vector<EdgeOffset>{0, 1, 3, 5});
  CHECK(g.col_indices() == std::vector<NodeId>{1, 0, 2, 1, 2});
  CHECK_THROWS_AS(Graph::ensure_undirected(2, std::vector<Edge>{{0, 2}}), InvalidArgument);

  const Graph d = Graph::from_directed_edges(3, std::vector<Edge>{{0, 1}, {0, 1}, {2, 0}});
  CHECK_FALSE(d.is_symmetric());
  CHECK(d.num_edges() == 2);
  CHECK(d.transposed().has_edge(1, 0));
  CHECK(d.transposed().has_edge(0, 2));
}

TEST_CASE("spectral radius of closed-form graphs") {
  SUBCASE("star with 4 leaves") {
    const SpectralEstimate est = spectral_radius(star(4));
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("4-cycle") {
    const SpectralEstimate est = spectral_radius(cycle(4));
    CHECK(est.converged);
    CHECK(est.value == doctest::Approx(2.0).epsilon(1e-6));
  }
  SUBCASE("clique on 5 nodes") {
    CHECK(spectral_radius(clique(5)).value == doctest::Approx(4.0).epsilon(1e-6));
  }
  SUBCASE("edgeless") {
    const Graph g = Graph::ensure_undirected(3, std::vector<Edge>{});
    CHECK(spectral_radius(g).value == 0.0);
  }
  CHECK_THROWS_AS(spectral_radius(Graph{}), InvalidArgument);
  CHECK_THROWS_AS(spectral_radius(star(2), 0.0), InvalidArgument);
}

TEST_CASE("spectral radius reports non-convergence instead of a silent value") {
  std::vector<Edge> e;
  for (NodeId i = 0; i + 1 < 30; ++i) e.push_back({i, i + 1});
  const Graph path = Graph::ensure_undirected(30, e);
  const SpectralEstimate capped = spectral_radius(path, 1e-14, 3);
  CHECK_FALSE(capped.converged);
  CHECK(capped.iterations == 3);
  const SpectralEstimate full = spectral_radius(path);
  CHECK(full.converged);
  // Path graph: 2 cos(pi / (n + 1)).
  CHECK(full.value == doctest::Approx(2.0 * std::cos(M_PI / 31.0)).epsilon(1e-6));
}

TEST_CASE("spectral radius lies between sqrt(max degree) and max degree") {
  Rng rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 5 + static_cast<std::size_t>(uniform01(rng) * 40);
    const Graph g = testing::random_graph(n, 0.05 + 0.4 * uniform01(rng), rng);
    if (g.num_edges() == 0) continue;
    const double rho = spectral_radius(g).value;
    const auto dmax = static_cast<double>(g.max_degree());
    CHECK(rho >= std::sqrt(dmax) * (1.0 - 1e-6));
    CHECK(rho <= dmax * (1.0 + 1e-9));

    Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (const Edge& edge : g.edges()) dense(edge.src, edge.dst) = 1.0;
    CHECK(rho == doctest::Approx(testing::dense_spectral_radius(dense)).epsilon(1e-5));
  }
}

TEST_CASE("adjacency spectral norm of a directed graph") {
  // Directed 3-path 0->1->2 plus 0->2: A^T A has top eigenvalue (3 + sqrt 5) / 2.
  const Graph g = Graph::from_directed_edges(3, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}});
  const double expected = std::sqrt((3.0 + std::sqrt(5.0)) / 2.0);
  CHECK(adjacency_spectral_norm(g).value == doctest::Approx(expected).epsilon(1e-8));
  CHECK(adjacency_spectral_norm(cycle(4)).value == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("edge homophily") {
  const Graph tri = clique(3);
  CHECK(edge_homophily(tri, Labels{4, 4, 4}) == 1.0);
  const Graph single = Graph::ensure_undirected(2, std::vector<Edge>{{0, 1}});
  CHECK(edge_homophily(single, Labels{0, 1}) == 0.0);
  CHECK_THROWS_AS(edge_homophily(Graph::ensure_undirected(2, std::vector<Edge>{}), Labels{0, 1}),
                  UndefinedStatistic);
  CHECK_THROWS_AS(edge_homophily(tri, Labels{0, 1}), InvalidArgument);

  SUBCASE("self-loops count as intra-class") {
    const Graph g = Graph::ensure_undirected(2, std::vector<Edge>{{0, 1}, {0, 0}});
    CHECK(edge_homophily(g, Labels{0, 1}) == doctest::Approx(1.0 / 3.0));
  }
}

TEST_CASE("homophily depends on the label assignment, not only on connectivity") {
  // Two triangles joined by one bridge edge.
  const Graph g = Graph::ensure_undirected(
      6, std::vector<Edge>{{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {2, 3}});
  const double high = edge_homophily(g, Labels{0, 0, 0, 1, 1, 1});
  const double low = edge_homophily(g, Labels{0, 1, 0, 1, 0, 1});
  CHECK(high == doctest::Approx(6.0 / 7.0));
  CHECK(low == doctest::Approx(2.0 / 7.0));
  CHECK(high != low);
}

TEST_CASE("edge homophily properties on random graphs") {
  Rng rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 4 + static_cast<std::size_t>(uniform01(rng) * 30);
    const Graph g = testing::random_graph(n, 0.3, rng);
    if (g.num_edges() == 0) continue;
    Labels labels(n);
    for (Label& y : labels) y = static_cast<Label>(uniform01(rng) * 4);

    // Relabeling class ids by a bijection leaves the ratio unchanged.
    const std::vector<Label> relabel{2, 0, 3, 1};
    Labels mapped(n);
    for (std::size_t v = 0; v < n; ++v) mapped[v] = relabel[static_cast<std::size_t>(labels[v])];
    CHECK(edge_homophily(g, mapped) == edge_homophily(g, labels));

    CHECK(edge_homophily(g, Labels(n, 7)) == 1.0);
    const double h = edge_homophily(g, labels);
    CHECK(h >= 0.0);
    CHECK(h <= 1.0);
  }

  // Proper 2-colourings of bipartite graphs.
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t left = 2 + static_cast<std::size_t>(uniform01(rng) * 10);
    const std::size_t right = 2 + static_cast<std::size_t>(uniform01(rng) * 10);
    std::vector<Edge> e;
    for (std::size_t i = 0; i < left; ++i)
      for (std::size_t j = 0; j < right; ++j)
        if (uniform01(rng) < 0.5) e.push_back({static_cast<NodeId>(i), static_cast<NodeId>(left + j)});
    if (e.empty()) continue;
    const Graph g = Graph::ensure_undirected(left + right, e);
    Labels labels(left + right, 0);
    std::fill(labels.begin() + static_cast<std::ptrdiff_t>(left), labels.end(), 1);
    CHECK(edge_homophily(g, labels) == 0.0);
  }
}

TEST_CASE("node homophily") {
  CHECK(node_homophily(clique(4), Labels{1, 1, 1, 1}) == 1.0);
  CHECK(node_homophily(star(4), Labels{0, 1, 1, 1, 1}) == 0.0);
  const Graph path = Graph::ensure_undirected(3, std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(node_homophily(path, Labels{0, 0, 1}) == doctest::Approx(0.5));

  SUBCASE("isolated nodes are excluded from the mean") {
    const Graph g = Graph::ensure_undirected(4, std::vector<Edge>{{0, 1}, {1, 2}});
    CHECK(node_homophily(g, Labels{0, 0, 1, 1}) == doctest::Approx(0.5));
  }
  CHECK_THROWS_AS(node_homophily(Graph::ensure_undirected(3, std::vector<Edge>{}), Labels{0, 1, 0}),
                  UndefinedStatistic);
}

TEST_CASE("NodeData and Split validation") {
  NodeData d;
  d.features = Matrix::Zero(3, 2);
  d.labels = {0, 1, 1};
  d.num_classes = 2;
  CHECK_NOTHROW(d.validate(3));
  CHECK_THROWS_AS(d.validate(4), InvalidArgument);
  d.labels[2] = 2;
  CHECK_THROWS_AS(d.validate(3), InvalidArgument);

  Split s{{0}, {1}, {2}};
  CHECK_NOTHROW(s.validate(3));
  s.test.push_back(0);
  CHECK_THROWS_AS(s.validate(3), InvalidArgument);
  CHECK_THROWS_AS((Split{{0}, {5}, {}}.validate(3)), InvalidArgument);
}

TEST_CASE("permuted relabels nodes") {
  const Graph g = Graph::ensure_undirected(3, std::vector<Edge>{{0, 1}, {1, 2}});
  const std::vector<NodeId> perm{2, 0, 1};
  const Graph p = g.permuted(perm);
  CHECK(p.has_edge(2, 0));
  CHECK(p.has_edge(0, 1));
  CHECK_FALSE(p.has_edge(2, 1));
  CHECK_THROWS_AS(g.permuted(std::vector<NodeId>{0, 0, 1}), InvalidArgument);
}
