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

#ifndef GESN_RESERVOIR_HPP_
#define GESN_RESERVOIR_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "gesn/graph.hpp"
#include "gesn/sparse.hpp"
#include "gesn/types.hpp"

namespace gesn {

struct ReservoirConfig {
  std::size_t hidden_units = 64;
  double target_radius = 0.9;
  double input_scaling = 1.0;
  // Fraction of nonzero recurrent entries. Unset means min(1, 10 / H).
  std::optional<double> recurrent_density;
  std::size_t iterations = 100;
  std::uint64_t seed = 0;

  double density() const;
  // Throws InvalidArgument.
  void validate() const;
};

// Untrained encoder weights. Immutable once built.
class Reservoir {
 public:
  // Draws W_in ~ U[-s, s] (dense, H x X) and a sparse recurrent matrix with
  // U[-1, 1] nonzeros, then rescales the latter to `target_radius`. A draw
  // whose estimated radius is zero is retried with a perturbed seed at most
  // three times before NumericError.
  static Reservoir create(const ReservoirConfig& config, std::size_t input_dim);

  // Wraps explicit weights; the radius and norms are measured, not imposed.
  static Reservoir from_weights(Matrix input_weights, SparseMatrix recurrent_weights,
                                std::size_t iterations = 100);

  std::size_t hidden_units() const { return static_cast<std::size_t>(input_weights_.rows()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(input_weights_.cols()); }
  std::size_t iterations() const { return iterations_; }

  const Matrix& input_weights() const { return input_weights_; }
  const SparseMatrix& recurrent_weights() const { return recurrent_weights_; }

  // Estimated rho(W_hat) after rescaling.
  double achieved_radius() const { return achieved_radius_; }
  // Estimated ||W_hat||_2. Computed on first use and cached.
  double achieved_spectral_norm() const;
  // Estimated ||W_in||_2. Computed on first use and cached.
  double input_spectral_norm() const;
  // False if the radius or either norm estimate hit its iteration cap.
  bool estimates_converged() const;

 private:
  struct NormCache {
    std::once_flag once;
    double recurrent = 0.0;
    double input = 0.0;
    bool converged = true;
  };

  Reservoir() = default;
  const NormCache& norms() const;

  Matrix input_weights_;
  SparseMatrix recurrent_weights_;
  std::size_t iterations_ = 100;
  double achieved_radius_ = 0.0;
  bool radius_converged_ = true;
  // Shared between copies; the weights it describes never change.
  std::shared_ptr<NormCache> norms_ = std::make_shared<NormCache>();
};

inline Reservoir init_reservoir(const ReservoirConfig& config, std::size_t input_dim) {
  return Reservoir::create(config, input_dim);
}

struct Embeddings {
  Matrix states;  // num_nodes x H
  std::size_t iterations_used = 0;
};

struct EmbeddingOptions {
  // Overrides Reservoir::iterations() when set.
  std::optional<std::size_t> iterations;
  unsigned workers = 1;
  // Starting state h^(0); all zeros when null. Must be num_nodes x H.
  const Matrix* initial_state = nullptr;
  // Called after every iteration k = 1..K with h^(k).
  std::function<void(std::size_t k, const Matrix& states)> on_iteration;
};

// Iterates h_v^(k) = tanh(W_in x_v + sum_{u in N(v)} W_hat h_u^(k-1)) K times.
// The input projection is formed once. Rows are updated independently per
// iteration and accumulated in column order, so the result is bitwise
// identical for any worker count.
Embeddings compute_embeddings(const Reservoir& reservoir, const Graph& graph,
                              const Matrix& features, const EmbeddingOptions& options = {});

struct SensitivityBound {
  double bound = 0.0;
  // terms[l] = ||W_hat||^l ||W_in|| (A^l)_{v,u}, l = 0..K-1.
  std::vector<double> terms;
};

// Upper bound on ||d h_v^(K) / d x_u||_2 summed over walk lengths 0..K-1.
// Column u of A^l is obtained by repeated sparse products; no dense power of
// A is formed.
SensitivityBound sensitivity_bound(const Reservoir& reservoir, const Graph& graph,
                                   std::size_t iterations, NodeId v, NodeId u);

enum class StabilityRegime {
  kContractive,        // ||W_hat|| ||A|| < 1
  kNecessaryViolated,  // rho(W_hat) alpha >= 1
  kIndeterminate,
};

std::string_view to_string(StabilityRegime regime);

struct StabilityReport {
  StabilityRegime regime = StabilityRegime::kIndeterminate;
  double recurrent_norm = 0.0;    // ||W_hat||
  double recurrent_radius = 0.0;  // rho(W_hat)
  double alpha = 0.0;             // rho(A)
  double adjacency_norm = 0.0;    // ||A||
  double lipschitz() const { return recurrent_norm * adjacency_norm; }
  double radius_product() const { return recurrent_radius * alpha; }
};

// ||A|| defaults to alpha, which is exact for symmetric adjacency.
StabilityReport stability_regime(const Reservoir& reservoir, double alpha,
                                 std::optional<double> adjacency_norm = std::nullopt);
StabilityReport stability_regime(const Reservoir& reservoir, const Graph& graph);

// Returned when intra-class distances vanish but inter-class ones do not.
inline constexpr double kSeparabilityCap = 1e6;
inline constexpr std::size_t kSeparabilitySample = 2'000;

// Mean inter-class over mean intra-class pairwise Euclidean distance on a
// seeded subsample of at most `max_sample` nodes. Classes with fewer than two
// sampled nodes do not contribute to the intra-class mean.
double separability_statistic(const Matrix& states, std::span<const Label> labels,
                              std::uint64_t seed = 0,
                              std::size_t max_sample = kSeparabilitySample);

}  // namespace gesn

#endif  // GESN_RESERVOIR_HPP_
