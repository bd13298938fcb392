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

#ifndef GESN_GRAPH_HPP_
#define GESN_GRAPH_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "gesn/types.hpp"

namespace gesn {

struct Edge {
  NodeId src;
  NodeId dst;
};

// Immutable adjacency in compressed-row form. Each stored entry is a directed
// edge slot (v, u) meaning u is in the neighbourhood of v; an undirected edge
// occupies two slots, a self-loop one.
//
// Invariants, checked on construction:
//   row_offsets[0] == 0, non-decreasing, row_offsets[n] == num_edges
//   every column index lies in [0, n)
//   column indices strictly increase within a row (no duplicate slots)
class Graph {
 public:
  Graph() = default;

  // Takes ownership of CSR arrays after validating them.
  static Graph from_csr(std::size_t num_nodes, std::vector<EdgeOffset> row_offsets,
                        std::vector<NodeId> col_indices);

  // Directed construction: one slot per listed edge, duplicates removed.
  static Graph from_directed_edges(std::size_t num_nodes, std::span<const Edge> edges);

  // Adds the reverse of every edge and deduplicates. Self-loops present in
  // the input are kept as a single slot; none are added.
  static Graph ensure_undirected(std::size_t num_nodes, std::span<const Edge> edges);

  std::size_t num_nodes() const { return num_nodes_; }
  std::size_t num_edges() const { return col_indices_.size(); }

  const std::vector<EdgeOffset>& row_offsets() const { return row_offsets_; }
  const std::vector<NodeId>& col_indices() const { return col_indices_; }

  std::span<const NodeId> neighbors(NodeId v) const {
    const auto b = static_cast<std::size_t>(row_offsets_[static_cast<std::size_t>(v)]);
    const auto e = static_cast<std::size_t>(row_offsets_[static_cast<std::size_t>(v) + 1]);
    return {col_indices_.data() + b, e - b};
  }
  std::size_t degree(NodeId v) const { return neighbors(v).size(); }
  std::size_t max_degree() const;
  bool has_edge(NodeId v, NodeId u) const;
  bool is_symmetric() const;

  // Edge list in row order.
  std::vector<Edge> edges() const;
  Graph transposed() const;
  // Node v of this graph becomes node perm[v] of the result.
  Graph permuted(std::span<const NodeId> perm) const;

  // y = A x for a vector indexed by node.
  void multiply(std::span<const double> x, std::span<double> y) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t num_nodes_ = 0;
  std::vector<EdgeOffset> row_offsets_{0};
  std::vector<NodeId> col_indices_;
};

// Per-node inputs of a node classification task.
struct NodeData {
  Matrix features;  // num_nodes x feature_dim
  Labels labels;    // one class id in [0, num_classes) per node
  int num_classes = 0;

  std::size_t num_nodes() const { return labels.size(); }
  std::size_t feature_dim() const { return static_cast<std::size_t>(features.cols()); }

  // Throws InvalidArgument on any inconsistency with `num_nodes`.
  void validate(std::size_t num_nodes) const;
};

// Disjoint train / validation / test node index sets.
struct Split {
  NodeIndex train;
  NodeIndex val;
  NodeIndex test;

  // Indices in range and the three sets pairwise disjoint.
  void validate(std::size_t num_nodes) const;
};

// Fraction of edge slots (v, u) with y_v == y_u. Self-loops count as
// intra-class. Throws UndefinedStatistic on a graph without edges.
double edge_homophily(const Graph& graph, std::span<const Label> labels);

// Mean over non-isolated nodes of the fraction of same-class neighbours.
// Throws UndefinedStatistic when every node is isolated.
double node_homophily(const Graph& graph, std::span<const Label> labels);

}  // namespace gesn

#endif  // GESN_GRAPH_HPP_
