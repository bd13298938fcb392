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

#ifndef GESN_TYPES_HPP_
#define GESN_TYPES_HPP_

#include <cstdint>
#include <vector>

#include <Eigen/Core>

namespace gesn {

using NodeId = std::int32_t;
using EdgeOffset = std::int64_t;
using Label = std::int32_t;

// Dense row-major storage: one row per node for features and states.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

using Labels = std::vector<Label>;
using NodeIndex = std::vector<NodeId>;

}  // namespace gesn

#endif  // GESN_TYPES_HPP_
