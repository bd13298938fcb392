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

#include "gesn/readout.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "gesn/error.hpp"
#include "gesn/io.hpp"
#include "gesn/parallel.hpp"

namespace gesn {

namespace {

constexpr std::size_t kStatBlock = 512;

using ColMatrix = Eigen::MatrixXd;

struct Statistics {
  ColMatrix gram;    // G^T G
  ColMatrix cross;   // G^T Y
};

}  // namespace

Matrix RidgeReadout::scores(const Matrix& embeddings) const {
  if (static_cast<std::size_t>(embeddings.cols()) != input_dim()) {
    throw InvalidArgument("embedding width " + std::to_string(embeddings.cols()) +
                          " does not match readout width " + std::to_string(input_dim()));
  }
  Matrix out = embeddings * weights.transpose();
  out.rowwise() += bias.transpose();
  return out;
}

RidgeReadout fit_ridge_regression(const Matrix& inputs, const Matrix& targets,
                                  std::span<const NodeId> rows, const RidgeOptions& options) {
  if (!(options.lambda >= 0.0) || !std::isfinite(options.lambda)) {
    throw InvalidArgument("ridge regularization must be finite and >= 0");
  }
  if (rows.empty()) throw InvalidArgument("ridge regression needs at least one training row");
  if (inputs.rows() != targets.rows()) throw InvalidArgument("inputs and targets row mismatch");
  for (NodeId r : rows) {
    if (r < 0 || r >= inputs.rows()) throw InvalidArgument("training row out of range");
    if (!inputs.row(r).allFinite() || !targets.row(r).allFinite()) {
      throw NumericError("non-finite value in training row " + std::to_string(r));
    }
  }

  const Eigen::Index h = inputs.cols();
  const Eigen::Index c = targets.cols();
  const Eigen::Index dim = h + (options.fit_bias ? 1 : 0);

  // Per-block sufficient statistics, reduced afterwards in block order so the
  // sums do not depend on how blocks were scheduled.
  const std::size_t num_blocks = (rows.size() + kStatBlock - 1) / kStatBlock;
  std::vector<Statistics> partial(num_blocks);
  parallel_for(rows.size(), options.workers, kStatBlock, [&](std::size_t begin, std::size_t end) {
    const auto b = static_cast<Eigen::Index>(end - begin);
    ColMatrix design(b, dim);
    ColMatrix y(b, c);
    for (Eigen::Index i = 0; i < b; ++i) {
      const NodeId r = rows[begin + static_cast<std::size_t>(i)];
      design.row(i).head(h) = inputs.row(r);
      if (options.fit_bias) design(i, h) = 1.0;
      y.row(i) = targets.row(r);
    }
    Statistics& s = partial[begin / kStatBlock];
    s.gram = design.transpose() * design;
    s.cross = design.transpose() * y;
  });

  ColMatrix gram = ColMatrix::Zero(dim, dim);
  ColMatrix cross = ColMatrix::Zero(dim, c);
  for (const Statistics& s : partial) {
    gram += s.gram;
    cross += s.cross;
  }
  gram.diagonal().array() += options.lambda;

  ColMatrix solution;
  Eigen::LLT<ColMatrix> llt(gram);
  if (llt.info() == Eigen::Success) {
    solution = llt.solve(cross);
  } else {
    Eigen::FullPivLU<ColMatrix> lu(gram);
    if (!lu.isInvertible()) {
      throw NumericError("ridge normal matrix is singular; use a positive regularization");
    }
    solution = lu.solve(cross);
  }
  if (!solution.allFinite()) {
    throw NumericError("ridge solution is not finite; use a larger regularization");
  }

  RidgeReadout out;
  out.weights = solution.topRows(h).transpose();
  out.bias = options.fit_bias ? Vector(solution.row(h).transpose()) : Vector::Zero(c);
  out.lambda = options.lambda;
  return out;
}

RidgeReadout fit_ridge(const Matrix& embeddings, std::span<const Label> labels, int num_classes,
                       std::span<const NodeId> train, const RidgeOptions& options) {
  if (num_classes < 1) throw InvalidArgument("num_classes must be positive");
  if (labels.size() != static_cast<std::size_t>(embeddings.rows())) {
    throw InvalidArgument("labels must cover every embedding row");
  }
  Matrix one_hot = Matrix::Zero(embeddings.rows(), num_classes);
  for (NodeId r : train) {
    if (r < 0 || r >= embeddings.rows()) throw InvalidArgument("training row out of range");
    const Label y = labels[static_cast<std::size_t>(r)];
    if (y < 0 || y >= num_classes) throw InvalidArgument("label outside [0, num_classes)");
    one_hot(r, y) = 1.0;
  }
  return fit_ridge_regression(embeddings, one_hot, train, options);
}

Labels predict(const RidgeReadout& readout, const Matrix& embeddings) {
  const Matrix s = readout.scores(embeddings);
  Labels out(static_cast<std::size_t>(s.rows()), 0);
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    Eigen::Index best = 0;
    for (Eigen::Index k = 1; k < s.cols(); ++k) {
      if (s(r, k) > s(r, best)) best = k;
    }
    out[static_cast<std::size_t>(r)] = static_cast<Label>(best);
  }
  return out;
}

double accuracy(std::span<const Label> predicted, std::span<const Label> labels,
                std::span<const NodeId> mask) {
  if (mask.empty()) throw InvalidArgument("accuracy over an empty mask");
  std::size_t correct = 0;
  for (NodeId v : mask) {
    const auto i = static_cast<std::size_t>(v);
    if (v < 0 || i >= predicted.size() || i >= labels.size()) {
      throw InvalidArgument("mask index out of range");
    }
    if (predicted[i] == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(mask.size());
}

void save_readout_csv(const RidgeReadout& readout, std::ostream& out) {
  const Eigen::Index h = readout.weights.cols();
  for (Eigen::Index j = 0; j < h; ++j) out << "w_" << j << ',';
  out << "bias,lambda\n";
  for (Eigen::Index k = 0; k < readout.weights.rows(); ++k) {
    for (Eigen::Index j = 0; j < h; ++j) out << format_double(readout.weights(k, j)) << ',';
    out << format_double(readout.bias(k)) << ',' << format_double(readout.lambda) << '\n';
  }
}

RidgeReadout load_readout_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw LoadError("readout CSV: missing header");
  std::size_t columns = 1;
  for (char ch : line) columns += ch == ',' ? 1 : 0;
  if (columns < 2) throw LoadError("readout CSV: header needs bias and lambda columns");
  const std::size_t h = columns - 2;

  std::vector<std::vector<double>> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<double> values;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(cell, &used));
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw LoadError("readout CSV line " + std::to_string(line_no) + ": bad number '" + cell +
                        "'");
      }
    }
    if (values.size() != columns) {
      throw LoadError("readout CSV line " + std::to_string(line_no) + ": expected " +
                      std::to_string(columns) + " values");
    }
    rows.push_back(std::move(values));
  }

  RidgeReadout out;
  const auto c = static_cast<Eigen::Index>(rows.size());
  out.weights.resize(c, static_cast<Eigen::Index>(h));
  out.bias.resize(c);
  for (Eigen::Index k = 0; k < c; ++k) {
    const auto& row = rows[static_cast<std::size_t>(k)];
    for (std::size_t j = 0; j < h; ++j) out.weights(k, static_cast<Eigen::Index>(j)) = row[j];
    out.bias(k) = row[h];
    out.lambda = row[h + 1];
  }
  return out;
}

}  // namespace gesn
