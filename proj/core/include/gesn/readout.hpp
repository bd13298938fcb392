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

#ifndef GESN_READOUT_HPP_
#define GESN_READOUT_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>

#include "gesn/types.hpp"

namespace gesn {

struct RidgeOptions {
  double lambda = 1e-3;
  // Appends a constant column to the design; it is regularized like the rest.
  bool fit_bias = true;
  unsigned workers = 1;
};

// Linear classifier y = W h + b with W of shape C x H.
struct RidgeReadout {
  Matrix weights;
  Vector bias;
  double lambda = 0.0;

  std::size_t num_outputs() const { return static_cast<std::size_t>(weights.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(weights.cols()); }

  // Row-per-node scores, num_nodes x C.
  Matrix scores(const Matrix& embeddings) const;
};

// General multi-output ridge regression on the rows of `inputs` selected by
// `rows`, against the matching rows of `targets` (same row indexing as
// `inputs`). The normal equations are formed from sufficient statistics
// G^T G and G^T Y accumulated over fixed 512-row blocks and reduced in block
// order, then solved by Cholesky with a full-pivot LU fallback.
//
// Throws NumericError for non-finite inputs or a singular normal matrix.
RidgeReadout fit_ridge_regression(const Matrix& inputs, const Matrix& targets,
                                  std::span<const NodeId> rows, const RidgeOptions& options);

// Ridge regression against one-hot encodings of `labels` on the train rows.
RidgeReadout fit_ridge(const Matrix& embeddings, std::span<const Label> labels,
                       int num_classes, std::span<const NodeId> train,
                       const RidgeOptions& options);

// Argmax of the scores per node; ties go to the lowest class index.
Labels predict(const RidgeReadout& readout, const Matrix& embeddings);

// Fraction of `mask` nodes whose prediction matches. Throws InvalidArgument
// on an empty mask.
double accuracy(std::span<const Label> predicted, std::span<const Label> labels,
                std::span<const NodeId> mask);

// CSV with header w_0..w_{H-1},bias,lambda and one row per class.
void save_readout_csv(const RidgeReadout& readout, std::ostream& out);
RidgeReadout load_readout_csv(std::istream& in);

}  // namespace gesn

#endif  // GESN_READOUT_HPP_
