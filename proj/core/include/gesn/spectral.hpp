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

#ifndef GESN_SPECTRAL_HPP_
#define GESN_SPECTRAL_HPP_

#include <cstddef>

#include "gesn/graph.hpp"
#include "gesn/sparse.hpp"
#include "gesn/types.hpp"

namespace gesn {

// Outcome of an iterative estimate. When `converged` is false, `value` is the
// last iterate and should be treated as approximate.
struct SpectralEstimate {
  double value = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
};

inline constexpr double kDefaultSpectralTol = 1e-8;
inline constexpr std::size_t kDefaultSpectralMaxIters = 10'000;

// alpha = rho(A) by power iteration from the normalized all-ones vector,
// using the norm ratio ||A v|| / ||v||. A non-negative adjacency has a real
// dominant eigenvalue, and the norm ratio also converges on bipartite graphs
// where +alpha and -alpha are both dominant.
SpectralEstimate spectral_radius(const Graph& graph, double tol = kDefaultSpectralTol,
                                 std::size_t max_iters = kDefaultSpectralMaxIters);

// ||A||_2. Equals spectral_radius() for symmetric adjacency; otherwise
// power iteration on A^T A.
SpectralEstimate adjacency_spectral_norm(const Graph& graph, double tol = kDefaultSpectralTol,
                                         std::size_t max_iters = kDefaultSpectralMaxIters);

// Largest eigenvalue modulus of a general real square matrix.
//
// The normalized power sequence v, Mv, M^2 v, ... is fitted, at every step,
// to a two-term recurrence y2 = a y1 + b y0. A real dominant eigenvalue gives
// a degenerate fit and is read from the one-term ratio instead; a dominant
// complex pair gives the roots of t^2 - a t - b, whose common modulus is
// sqrt(-b). This stays accurate when the sequence rotates instead of
// settling on a single direction.
SpectralEstimate modulus_spectral_radius(const SparseMatrix& m, double tol = 1e-6,
                                         std::size_t max_iters = 5'000,
                                         std::uint64_t start_seed = 0);

// ||M||_2 by power iteration on M^T M.
SpectralEstimate spectral_norm(const SparseMatrix& m, double tol = 1e-10,
                               std::size_t max_iters = 20'000);
SpectralEstimate spectral_norm(const Matrix& m, double tol = 1e-10,
                               std::size_t max_iters = 20'000);

}  // namespace gesn

#endif  // GESN_SPECTRAL_HPP_
