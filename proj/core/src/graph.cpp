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

#include "gesn/graph.hpp"

#include <algorithm>
#include <cassert>
#include <string>

#include "gesn/error.hpp"

namespace gesn {

namespace {

Graph build_from_sorted(std::size_t num_nodes, std::vector<Edge>& edges) {
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.src != b.src ? a.src < b.src : a.dst < b.dst;
  });
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](const Edge& a, const Edge& b) {
                            return a.src == b.src && a.dst == b.dst;
                          }),
              edges.end());
  std::vector<EdgeOffset> offsets(num_nodes + 1, 0);
  std::vector<NodeId> cols;
  cols.reserve(edges.size());
  for (const Edge& e : edges) {
    ++offsets[static_cast<std::size_t>(e.src) + 1];
    cols.push_back(e.dst);
  }
  for (std::size_t v = 0; v < num_nodes; ++v) offsets[v + 1] += offsets[v];
  return Graph::from_csr(num_nodes, std::move(offsets), std::move(cols));
}

void check_edges(std::size_t num_nodes, std::span<const Edge> edges) {
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.src < 0 || e.dst < 0 || static_cast<std::size_t>(e.src) >= num_nodes ||
        static_cast<std::size_t>(e.dst) >= num_nodes) {
      throw InvalidArgument("edge " + std::to_string(i) + " (" + std::to_string(e.src) + ", " +
                            std::to_string(e.dst) + ") out of range for " +
                            std::to_string(num_nodes) + " nodes");
    }
  }
}

}  // namespace

Graph Graph::from_csr(std::size_t num_nodes, std::vector<EdgeOffset> row_offsets,
                      std::vector<NodeId> col_indices) {
  if (row_offsets.size() != num_nodes + 1) {
    throw InvalidArgument("row_offsets must have num_nodes + 1 entries");
  }
  if (row_offsets.front() != 0 ||
      row_offsets.back() != static_cast<EdgeOffset>(col_indices.size())) {
    throw InvalidArgument("row_offsets must start at 0 and end at num_edges");
  }
  for (std::size_t v = 0; v < num_nodes; ++v) {
    if (row_offsets[v + 1] < row_offsets[v]) {
      throw InvalidArgument("row_offsets must be non-decreasing (row " + std::to_string(v) + ")");
    }
    for (EdgeOffset k = row_offsets[v]; k < row_offsets[v + 1]; ++k) {
      const NodeId u = col_indices[static_cast<std::size_t>(k)];
      if (u < 0 || static_cast<std::size_t>(u) >= num_nodes) {
        throw InvalidArgument("column index " + std::to_string(u) + " out of range in row " +
                              std::to_string(v));
      }
      if (k > row_offsets[v] && col_indices[static_cast<std::size_t>(k) - 1] >= u) {
        throw InvalidArgument("column indices must strictly increase in row " +
                              std::to_string(v));
      }
    }
  }
  Graph g;
  g.num_nodes_ = num_nodes;
  g.row_offsets_ = std::move(row_offsets);
  g.col_indices_ = std::move(col_indices);
  return g;
}

Graph Graph::from_directed_edges(std::size_t num_nodes, std::span<const Edge> edges) {
  check_edges(num_nodes, edges);
  std::vector<Edge> slots(edges.begin(), edges.end());
  return build_from_sorted(num_nodes, slots);
}

Graph Graph::ensure_undirected(std::size_t num_nodes, std::span<const Edge> edges) {
  check_edges(num_nodes, edges);
  std::vector<Edge> slots;
  slots.reserve(2 * edges.size());
  for (const Edge& e : edges) {
    slots.push_back(e);
    if (e.src != e.dst) slots.push_back({e.dst, e.src});
  }
  return build_from_sorted(num_nodes, slots);
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    best = std::max(best, static_cast<std::size_t>(row_offsets_[v + 1] - row_offsets_[v]));
  }
  return best;
}

bool Graph::has_edge(NodeId v, NodeId u) const {
  const auto row = neighbors(v);
  return std::binary_search(row.begin(), row.end(), u);
}

bool Graph::is_symmetric() const {
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    for (NodeId u : neighbors(static_cast<NodeId>(v))) {
      if (!has_edge(u, static_cast<NodeId>(v))) return false;
    }
  }
  return true;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    for (NodeId u : neighbors(static_cast<NodeId>(v))) out.push_back({static_cast<NodeId>(v), u});
  }
  return out;
}

Graph Graph::transposed() const {
  std::vector<Edge> rev = edges();
  for (Edge& e : rev) std::swap(e.src, e.dst);
  return build_from_sorted(num_nodes_, rev);
}

Graph Graph::permuted(std::span<const NodeId> perm) const {
  if (perm.size() != num_nodes_) throw InvalidArgument("permutation size mismatch");
  std::vector<bool> seen(num_nodes_, false);
  for (NodeId p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= num_nodes_ || seen[static_cast<std::size_t>(p)]) {
      throw InvalidArgument("not a permutation");
    }
    seen[static_cast<std::size_t>(p)] = true;
  }
  std::vector<Edge> mapped = edges();
  for (Edge& e : mapped) {
    e.src = perm[static_cast<std::size_t>(e.src)];
    e.dst = perm[static_cast<std::size_t>(e.dst)];
  }
  return build_from_sorted(num_nodes_, mapped);
}

void Graph::multiply(std::span<const double> x, std::span<double> y) const {
  assert(x.size() == num_nodes_ && y.size() == num_nodes_);
  for (std::size_t v = 0; v < num_nodes_; ++v) {
    double acc = 0.0;
    for (EdgeOffset k = row_offsets_[v]; k < row_offsets_[v + 1]; ++k) {
      acc += x[static_cast<std::size_t>(col_indices_[static_cast<std::size_t>(k)])];
    }
    y[v] = acc;
  }
}

void NodeData::validate(std::size_t num_nodes) const {
  if (labels.size() != num_nodes) {
    throw InvalidArgument("expected " + std::to_string(num_nodes) + " labels, got " +
                          std::to_string(labels.size()));
  }
  if (static_cast<std::size_t>(features.rows()) != num_nodes) {
    throw InvalidArgument("expected " + std::to_string(num_nodes) + " feature rows, got " +
                          std::to_string(features.rows()));
  }
  if (num_classes < 1) throw InvalidArgument("num_classes must be positive");
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0 || labels[v] >= num_classes) {
      throw InvalidArgument("label of node " + std::to_string(v) + " outside [0, " +
                            std::to_string(num_classes) + ")");
    }
  }
}

void Split::validate(std::size_t num_nodes) const {
  std::vector<char> owner(num_nodes, 0);
  auto mark = [&](const NodeIndex& set, char tag, const char* name) {
    for (NodeId v : set) {
      if (v < 0 || static_cast<std::size_t>(v) >= num_nodes) {
        throw InvalidArgument(std::string(name) + " index " + std::to_string(v) +
                              " out of range");
      }
      if (owner[static_cast<std::size_t>(v)] != 0) {
        throw InvalidArgument("node " + std::to_string(v) + " appears twice across " +
                              "train/val/test");
      }
      owner[static_cast<std::size_t>(v)] = tag;
    }
  };
  mark(train, 1, "train");
  mark(val, 2, "val");
  mark(test, 3, "test");
}

double edge_homophily(const Graph& graph, std::span<const Label> labels) {
  if (labels.size() != graph.num_nodes()) throw InvalidArgument("labels must cover all nodes");
  if (graph.num_edges() == 0) throw UndefinedStatistic("edge homophily undefined without edges");
  std::size_t same = 0;
  for (std::size_t v = 0; v < graph.num_nodes(); ++v) {
    for (NodeId u : graph.neighbors(static_cast<NodeId>(v))) {
      if (labels[v] == labels[static_cast<std::size_t>(u)]) ++same;
    }
  }
  return static_cast<double>(same) / static_cast<double>(graph.num_edges());
}

double node_homophily(const Graph& graph, std::span<const Label> labels) {
  if (labels.size() != graph.num_nodes()) throw InvalidArgument("labels must cover all nodes");
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t v = 0; v < graph.num_nodes(); ++v) {
    const auto row = graph.neighbors(static_cast<NodeId>(v));
    if (row.empty()) continue;
    std::size_t same = 0;
    for (NodeId u : row) {
      if (labels[v] == labels[static_cast<std::size_t>(u)]) ++same;
    }
    total += static_cast<double>(same) / static_cast<double>(row.size());
    ++counted;
  }
  if (counted == 0) throw UndefinedStatistic("node homophily undefined: every node is isolated");
  return total / static_cast<double>(counted);
}

}  // namespace gesn
