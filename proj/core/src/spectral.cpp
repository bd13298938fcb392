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

#include "gesn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gesn/error.hpp"
#include "gesn/random.hpp"

namespace gesn {

namespace {

double norm2(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

void scale(std::span<double> x, double factor) {
  for (double& v : x) v *= factor;
}

std::vector<double> random_unit(std::size_t n, std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  std::vector<double> v(n);
  for (double& x : v) x = uniform_symmetric(rng, 1.0);
  const double nrm = norm2(v);
  if (nrm > 0.0) scale(v, 1.0 / nrm);
  return v;
}

// Largest eigenvalue of a symmetric positive semi-definite operator given as
// a matvec, by plain power iteration from `start`.
template <typename Apply>
SpectralEstimate psd_power_iteration(std::vector<double> v, Apply&& apply, double tol,
                                     std::size_t max_iters) {
  SpectralEstimate out;
  std::vector<double> w(v.size());
  double prev = 0.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    apply(std::span<const double>(v), std::span<double>(w));
    const double est = norm2(w);
    out.value = est;
    out.iterations = it;
    if (est == 0.0) {
      out.converged = true;
      return out;
    }
    if (it > 1 && std::abs(est - prev) <= tol * est) {
      out.converged = true;
      return out;
    }
    prev = est;
    scale(w, 1.0 / est);
    std::swap(v, w);
  }
  return out;
}

}  // namespace

SpectralEstimate spectral_radius(const Graph& graph, double tol, std::size_t max_iters) {
  const std::size_t n = graph.num_nodes();
  if (n == 0) throw InvalidArgument("spectral radius needs at least one node");
  if (!(tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  // The norm ratio is monotone for symmetric A and settles to |lambda_max|
  // even when -alpha is also an eigenvalue.
  return psd_power_iteration(
      std::move(v), [&](std::span<const double> x, std::span<double> y) { graph.multiply(x, y); },
      tol, max_iters);
}

SpectralEstimate adjacency_spectral_norm(const Graph& graph, double tol, std::size_t max_iters) {
  if (graph.is_symmetric()) return spectral_radius(graph, tol, max_iters);
  const std::size_t n = graph.num_nodes();
  if (n == 0) throw InvalidArgument("spectral norm needs at least one node");
  const Graph at = graph.transposed();
  std::vector<double> tmp(n);
  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  SpectralEstimate est = psd_power_iteration(
      std::move(v),
      [&](std::span<const double> x, std::span<double> y) {
        graph.multiply(x, tmp);
        at.multiply(tmp, y);
      },
      tol * 0.5, max_iters);
  est.value = std::sqrt(est.value);
  return est;
}

SpectralEstimate modulus_spectral_radius(const SparseMatrix& m, double tol,
                                         std::size_t max_iters, std::uint64_t start_seed) {
  if (m.rows() != m.cols()) throw InvalidArgument("spectral radius needs a square matrix");
  const std::size_t n = m.rows();
  SpectralEstimate out;
  if (n == 0) return out;

  std::vector<double> y0 = random_unit(n, start_seed);
  std::vector<double> y1(n);
  std::vector<double> y2(n);
  m.multiply(y0, y1);

  // Below this sine between consecutive iterates the sequence is treated as
  // aligned with one real eigenvector.
  constexpr double kAlignedSine = 1e-4;

  double prev = -1.0;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const double s1 = norm2(y1);
    if (s1 == 0.0) {
      out = {0.0, it, true};
      return out;
    }
    m.multiply(y1, y2);

    const double g00 = dot(y0, y0);
    const double g01 = dot(y0, y1);
    const double g11 = dot(y1, y1);
    const double mu = g01 / g00;
    const double sine2 = std::max(0.0, 1.0 - g01 * g01 / (g00 * g11));

    double est;
    if (sine2 < kAlignedSine * kAlignedSine) {
      est = s1;
    } else {
      // Least-squares fit y2 ~ a y1 + b y0.
      const double r1 = dot(y1, y2);
      const double r0 = dot(y0, y2);
      const double det = g11 * g00 - g01 * g01;
      const double a = (r1 * g00 - g01 * r0) / det;
      const double b = (g11 * r0 - g01 * r1) / det;
      const double disc = a * a + 4.0 * b;
      if (disc < 0.0) {
        est = std::sqrt(-b);
      } else {
        const double sq = std::sqrt(disc);
        est = std::max(std::abs(0.5 * (a + sq)), std::abs(0.5 * (a - sq)));
      }
      if (!std::isfinite(est)) est = std::abs(mu);
    }

    out.value = est;
    out.iterations = it;
    if (prev >= 0.0 && std::abs(est - prev) <= tol * est) {
      out.converged = true;
      return out;
    }
    prev = est;

    // Shift the window one step and renormalize so y0 stays unit length.
    const double inv = 1.0 / s1;
    std::swap(y0, y1);
    std::swap(y1, y2);
    scale(y0, inv);
    scale(y1, inv);
  }
  return out;
}

SpectralEstimate spectral_norm(const SparseMatrix& m, double tol, std::size_t max_iters) {
  SpectralEstimate est;
  if (m.rows() == 0 || m.cols() == 0) {
    est.converged = true;
    return est;
  }
  std::vector<double> tmp(m.rows());
  est = psd_power_iteration(
      random_unit(m.cols(), 0x5eed),
      [&](std::span<const double> x, std::span<double> y) {
        m.multiply(x, tmp);
        m.multiply_transpose(tmp, y);
      },
      tol * 0.5, max_iters);
  est.value = std::sqrt(est.value);
  return est;
}

SpectralEstimate spectral_norm(const Matrix& m, double tol, std::size_t max_iters) {
  SpectralEstimate est;
  if (m.rows() == 0 || m.cols() == 0) {
    est.converged = true;
    return est;
  }
  Vector tmp(m.rows());
  est = psd_power_iteration(
      random_unit(static_cast<std::size_t>(m.cols()), 0x5eed),
      [&](std::span<const double> x, std::span<double> y) {
        Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
        Eigen::Map<Vector> yv(y.data(), static_cast<Eigen::Index>(y.size()));
        tmp.noalias() = m * xv;
        yv.noalias() = m.transpose() * tmp;
      },
      tol * 0.5, max_iters);
  est.value = std::sqrt(est.value);
  return est;
}

}  // namespace gesn
