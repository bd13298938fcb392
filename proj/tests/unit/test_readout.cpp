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
#include <limits>
#include <numeric>
#include <sstream>

#include "gesn/error.hpp"
#include "gesn/readout.hpp"
#include "oracles.hpp"

using namespace gesn;

namespace {

NodeIndex all_rows(std::size_t n) {
  NodeIndex r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

Matrix one_hot(const Labels& y, int c) {
  Matrix t = Matrix::Zero(static_cast<Eigen::Index>(y.size()), c);
  for (std::size_t i = 0; i < y.size(); ++i) t(static_cast<Eigen::Index>(i), y[i]) = 1.0;
  return t;
}

}  // namespace

TEST_CASE("one-dimensional closed form") {
  // Inputs {1, 2}, targets {1, 2}, no bias: w = 5 / (5 + lambda).
  Matrix x(2, 1);
  x << 1.0, 2.0;
  Matrix y(2, 1);
  y << 1.0, 2.0;
  RidgeOptions opts;
  opts.fit_bias = false;
  opts.lambda = 0.0;
  CHECK(fit_ridge_regression(x, y, all_rows(2), opts).weights(0, 0) == doctest::Approx(1.0).epsilon(1e-14));
  opts.lambda = 1.0;
  const RidgeReadout r = fit_ridge_regression(x, y, all_rows(2), opts);
  CHECK(r.weights(0, 0) == doctest::Approx(5.0 / 6.0).epsilon(1e-14));
  CHECK(r.bias(0) == 0.0);
  CHECK(r.lambda == 1.0);
}

TEST_CASE("ridge solution matches the stacked least-squares oracle") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index n = 5 + static_cast<Eigen::Index>(uniform01(rng) * 60);
    const Eigen::Index h = 1 + static_cast<Eigen::Index>(uniform01(rng) * 12);
    const Eigen::Index c = 1 + static_cast<Eigen::Index>(uniform01(rng) * 4);
    const double lambda = std::pow(10.0, -5.0 + 7.0 * uniform01(rng));
    const Eigen::MatrixXd g = testing::random_matrix(n, h, rng);
    const Eigen::MatrixXd t = testing::random_matrix(n, c, rng);
    RidgeOptions opts;
    opts.lambda = lambda;
    opts.fit_bias = (trial % 2 == 0);
    const RidgeReadout r = fit_ridge_regression(g, t, all_rows(static_cast<std::size_t>(n)), opts);

    Eigen::MatrixXd design = g;
    if (opts.fit_bias) {
      design.conservativeResize(n, h + 1);
      design.col(h).setOnes();
    }
    const Eigen::MatrixXd beta = testing::stacked_least_squares(design, t, lambda);
    Eigen::MatrixXd got(design.cols(), c);
    got.topRows(h) = r.weights.transpose();
    if (opts.fit_bias) got.row(h) = r.bias.transpose();
    const double rel = (got - beta).norm() / std::max(beta.norm(), 1e-300);
    CHECK(rel <= 1e-8);
  }
}

TEST_CASE("larger regularization shrinks the weights") {
  Rng rng(5);
  const Eigen::MatrixXd g = testing::random_matrix(40, 6, rng);
  const Eigen::MatrixXd t = testing::random_matrix(40, 3, rng);
  double previous = std::numeric_limits<double>::infinity();
  for (double lambda : {1e-4, 1e-2, 1.0, 10.0, 1e3}) {
    RidgeOptions opts;
    opts.lambda = lambda;
    const RidgeReadout r = fit_ridge_regression(g, t, all_rows(40), opts);
    Eigen::MatrixXd full(r.weights.rows(), r.weights.cols() + 1);
    full << r.weights, r.bias;
    const double norm = full.norm();
    CHECK(norm <= previous * (1 + 1e-12));
    // ||beta|| <= ||G^T Y|| / lambda.
    Eigen::MatrixXd design(40, 7);
    design << g, Eigen::VectorXd::Ones(40);
    CHECK(norm <= (design.transpose() * t).norm() / lambda * (1 + 1e-12));
    previous = norm;
  }
}

TEST_CASE("only the training rows influence the fit") {
  Rng rng(9);
  Matrix g = testing::random_matrix(30, 4, rng);
  const Labels y = [&] {
    Labels l(30);
    for (auto& v : l) v = static_cast<Label>(uniform01(rng) * 3);
    return l;
  }();
  const NodeIndex train{0, 2, 4, 6, 8, 10, 12, 14, 16, 18};
  const RidgeReadout a = fit_ridge(g, y, 3, train, {});
  Matrix g2 = g;
  Labels y2 = y;
  for (Eigen::Index r = 1; r < 30; r += 2) {
    g2.row(r).setConstant(1e6);
    y2[static_cast<std::size_t>(r)] = 2 - y2[static_cast<std::size_t>(r)];
  }
  const RidgeReadout b = fit_ridge(g2, y2, 3, train, {});
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
}

TEST_CASE("fit_ridge regresses one-hot targets") {
  Rng rng(10);
  const Eigen::MatrixXd g = testing::random_matrix(25, 5, rng);
  Labels y(25);
  for (auto& v : y) v = static_cast<Label>(uniform01(rng) * 4);
  RidgeOptions opts;
  opts.lambda = 0.1;
  const RidgeReadout a = fit_ridge(g, y, 4, all_rows(25), opts);
  const RidgeReadout b = fit_ridge_regression(g, one_hot(y, 4), all_rows(25), opts);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  CHECK(a.num_outputs() == 4);
  CHECK(a.input_dim() == 5);
}

TEST_CASE("relabelling classes permutes the readout rows") {
  Rng rng(11);
  const Eigen::MatrixXd g = testing::random_matrix(50, 6, rng);
  Labels y(50);
  for (auto& v : y) v = static_cast<Label>(uniform01(rng) * 3);
  const std::vector<Label> sigma{2, 0, 1};
  Labels ys(50);
  for (std::size_t i = 0; i < 50; ++i) ys[i] = sigma[static_cast<std::size_t>(y[i])];
  const RidgeReadout a = fit_ridge(g, y, 3, all_rows(50), {});
  const RidgeReadout b = fit_ridge(g, ys, 3, all_rows(50), {});
  for (int c = 0; c < 3; ++c) {
    CHECK((a.weights.row(c) - b.weights.row(sigma[c])).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(a.bias(c) - b.bias(sigma[c])) < 1e-12);
  }
  const Labels pa = predict(a, g);
  const Labels pb = predict(b, g);
  for (std::size_t i = 0; i < 50; ++i) CHECK(pb[i] == sigma[static_cast<std::size_t>(pa[i])]);
}

TEST_CASE("fit is bitwise independent of the worker count") {
  Rng rng(12);
  const Eigen::MatrixXd g = testing::random_matrix(3000, 20, rng);
  Labels y(3000);
  for (auto& v : y) v = static_cast<Label>(uniform01(rng) * 5);
  RidgeOptions one;
  RidgeOptions four;
  four.workers = 4;
  const RidgeReadout a = fit_ridge(g, y, 5, all_rows(3000), one);
  const RidgeReadout b = fit_ridge(g, y, 5, all_rows(3000), four);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
}

TEST_CASE("prediction") {
  RidgeReadout r;
  r.weights = Matrix::Zero(3, 2);
  r.bias = Vector::Zero(3);
  Matrix h(2, 2);
  h << 1.0, 2.0, -1.0, 0.5;
  SUBCASE("all-zero scores tie to class 0") { CHECK(predict(r, h) == Labels{0, 0}); }
  SUBCASE("ties resolve to the lowest index") {
    r.bias << 0.0, 1.0, 1.0;
    CHECK(predict(r, h) == Labels{1, 1});
  }
  SUBCASE("weights and bias both contribute") {
    r.weights << 1.0, 0.0, 0.0, 1.0, -1.0, 0.0;
    r.bias << 0.0, 0.0, 0.2;
    // Row 0 scores: 1, 2, -0.8. Row 1 scores: -1, 0.5, 1.2.
    CHECK(predict(r, h) == Labels{1, 2});
    const Matrix s = r.scores(h);
    CHECK(s(1, 2) == doctest::Approx(1.2));
  }
  CHECK_THROWS_AS(predict(r, Matrix::Zero(2, 3)), InvalidArgument);
}

TEST_CASE("linearly separable training data is fit perfectly") {
  Rng rng(13);
  Matrix g(60, 3);
  Labels y(60);
  for (Eigen::Index i = 0; i < 60; ++i) {
    const Label c = static_cast<Label>(i % 3);
    y[static_cast<std::size_t>(i)] = c;
    for (Eigen::Index j = 0; j < 3; ++j) g(i, j) = (j == c ? 1.0 : 0.0) + uniform_symmetric(rng, 0.1);
  }
  RidgeOptions opts;
  opts.lambda = 1e-5;
  const RidgeReadout r = fit_ridge(g, y, 3, all_rows(60), opts);
  CHECK(accuracy(predict(r, g), y, all_rows(60)) == 1.0);
}

TEST_CASE("accuracy") {
  const Labels pred{0, 1, 2, 1};
  const Labels truth{0, 1, 1, 1};
  CHECK(accuracy(pred, truth, NodeIndex{0, 1, 2, 3}) == 0.75);
  CHECK(accuracy(pred, truth, NodeIndex{2}) == 0.0);
  CHECK(accuracy(pred, truth, NodeIndex{0, 3}) == 1.0);
  CHECK_THROWS_AS(accuracy(pred, truth, NodeIndex{}), InvalidArgument);
  CHECK_THROWS_AS(accuracy(pred, truth, NodeIndex{4}), InvalidArgument);
}

TEST_CASE("error conditions") {
  Matrix g = Matrix::Zero(4, 2);
  const Labels y{0, 1, 0, 1};
  RidgeOptions opts;
  opts.lambda = 0.0;
  opts.fit_bias = false;
  CHECK_THROWS_AS(fit_ridge(g, y, 2, all_rows(4), opts), NumericError);
  opts.lambda = -1.0;
  CHECK_THROWS_AS(fit_ridge(g, y, 2, all_rows(4), opts), InvalidArgument);
  CHECK_THROWS_AS(fit_ridge(g, y, 2, NodeIndex{}, {}), InvalidArgument);
  CHECK_THROWS_AS(fit_ridge(g, y, 1, all_rows(4), {}), InvalidArgument);
  g(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(fit_ridge(g, y, 2, all_rows(4), {}), NumericError);
  // The non-finite row is harmless when it is not a training row.
  CHECK_NOTHROW(fit_ridge(g, y, 2, NodeIndex{0, 1, 3}, {}));
}

TEST_CASE("readout CSV roundtrip is exact") {
  Rng rng(14);
  RidgeReadout r;
  r.weights = testing::random_matrix(3, 4, rng);
  r.bias = testing::random_matrix(3, 1, rng);
  r.lambda = 0.1;
  std::stringstream ss;
  save_readout_csv(r, ss);
  std::string header;
  std::getline(std::stringstream(ss.str()), header);
  CHECK(header == "w_0,w_1,w_2,w_3,bias,lambda");
  const RidgeReadout back = load_readout_csv(ss);
  CHECK(back.weights == r.weights);
  CHECK(back.bias == r.bias);
  CHECK(back.lambda == r.lambda);

  std::stringstream bad("w_0,bias,lambda\n1.0,zz,0.1\n");
  CHECK_THROWS_AS(load_readout_csv(bad), LoadError);
  std::stringstream empty;
  CHECK_THROWS_AS(load_readout_csv(empty), LoadError);
}
