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

#include <cmath>

#include "gesn/spectral.hpp"
#include "oracles.hpp"

using namespace gesn;

TEST_CASE("modulus radius of a dominant complex pair") {
  // Scaled rotation: eigenvalues 0.7 e^{+-i theta}; the power sequence never aligns.
  const double c = 0.7 * std::cos(0.9);
  const double s = 0.7 * std::sin(0.9);
  Matrix m(3, 3);
  m << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 0.2;
  const SpectralEstimate est = modulus_spectral_radius(SparseMatrix::from_dense(m), 1e-10);
  CHECK(est.converged);
  CHECK(est.value == doctest::Approx(0.7).epsilon(1e-8));
}

TEST_CASE("modulus radius of a dominant negative real eigenvalue") {
  Matrix m(2, 2);
  m << -1.5, 0.3, 0.0, 0.5;
  CHECK(modulus_spectral_radius(SparseMatrix::from_dense(m), 1e-10).value ==
        doctest::Approx(1.5).epsilon(1e-8));
}

TEST_CASE("modulus radius matches a dense eigensolver on random sparse matrices") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t h = 8 + static_cast<std::size_t>(uniform01(rng) * 56);
    std::vector<Triplet> t;
    for (std::size_t r = 0; r < h; ++r)
      for (std::size_t col = 0; col < h; ++col)
        if (uniform01(rng) < 0.2) t.push_back({r, col, uniform_symmetric(rng, 1.0)});
    const SparseMatrix m = SparseMatrix::from_triplets(h, h, t);
    const double oracle = testing::dense_spectral_radius(m.to_dense());
    if (oracle == 0.0) continue;
    const SpectralEstimate est = modulus_spectral_radius(m, 1e-8, 20'000, static_cast<std::uint64_t>(trial));
    CHECK(est.value == doctest::Approx(oracle).epsilon(1e-3));
  }
}

TEST_CASE("nilpotent matrix has zero radius") {
  Matrix m = Matrix::Zero(3, 3);
  m(0, 1) = 1.0;
  m(1, 2) = 1.0;
  const SpectralEstimate est = modulus_spectral_radius(SparseMatrix::from_dense(m));
  CHECK(est.value == 0.0);
  CHECK(est.converged);
}

TEST_CASE("spectral norms match SVD") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd d = testing::random_matrix(12, 7, rng);
    const Matrix dense = d;
    const double oracle = testing::dense_spectral_norm(d);
    CHECK(spectral_norm(dense).value == doctest::Approx(oracle).epsilon(1e-8));
    CHECK(spectral_norm(SparseMatrix::from_dense(dense)).value == doctest::Approx(oracle).epsilon(1e-8));
  }
}

TEST_CASE("sparse matrix products") {
  const SparseMatrix m = SparseMatrix::from_triplets(2, 3, {{0, 2, 2.0}, {1, 0, -1.0}, {0, 2, 1.0}});
  CHECK(m.nonzeros() == 2);
  std::vector<double> y(2);
  m.multiply(std::vector<double>{1.0, 2.0, 3.0}, y);
  CHECK(y == std::vector<double>{9.0, -1.0});
  std::vector<double> z(3);
  m.multiply_transpose(std::vector<double>{1.0, 1.0}, z);
  CHECK(z == std::vector<double>{-1.0, 0.0, 3.0});
}
