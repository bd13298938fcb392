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

#ifndef GESN_TESTS_ORACLES_HPP_
#define GESN_TESTS_ORACLES_HPP_

// Reference computations used only by tests. Each one takes a route that
// shares no code with the library path it checks.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gesn/graph.hpp"
#include "gesn/paths.hpp"
#include "gesn/random.hpp"
#include "gesn/reservoir.hpp"
#include "gesn/types.hpp"

namespace gesn::testing {

// G(n, p) undirected graph without self-loops.
Graph random_graph(std::size_t n, double p, Rng& rng);

// O(n^3) all-pairs distances on a dense matrix; direction ignored.
PathDistribution floyd_warshall(const Graph& graph);

// max |lambda| from a dense nonsymmetric eigensolver.
double dense_spectral_radius(const Eigen::MatrixXd& m);
// Largest singular value from a full SVD.
double dense_spectral_norm(const Eigen::MatrixXd& m);

// Scalar-by-scalar evaluation of
//   h_v^(k) = tanh(W_in x_v + sum_{u in N(v)} W_hat h_u^(k-1))
// summing W_hat h_u per neighbour (no aggregation before the product).
Eigen::MatrixXd naive_states(const Eigen::MatrixXd& w_in, const Eigen::MatrixXd& w_hat,
                             const Graph& graph, const Eigen::MatrixXd& features,
                             std::size_t iterations, const Eigen::MatrixXd* initial = nullptr);

// Central-difference Jacobian d h_v^(K) / d x_u (H x X), evaluated through
// naive_states, and its 2-norm.
double fd_jacobian_norm(const Eigen::MatrixXd& w_in, const Eigen::MatrixXd& w_hat,
                        const Graph& graph, const Eigen::MatrixXd& features,
                        std::size_t iterations, NodeId v, NodeId u, double step = 1e-5);

// Solves min ||G W - Y||^2 + lambda ||W||^2 as the stacked least-squares
// problem [G; sqrt(lambda) I] W = [Y; 0] with a column-pivoted QR.
// G already carries any bias column. Returns (cols(G)) x (cols(Y)).
Eigen::MatrixXd stacked_least_squares(const Eigen::MatrixXd& design, const Eigen::MatrixXd& targets,
                                      double lambda);

Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng, double half_width = 1.0);

}  // namespace gesn::testing

#endif  // GESN_TESTS_ORACLES_HPP_
