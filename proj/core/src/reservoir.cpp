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

#include "gesn/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gesn/error.hpp"
#include "gesn/parallel.hpp"
#include "gesn/random.hpp"
#include "gesn/spectral.hpp"

namespace gesn {

namespace {

constexpr double kRadiusTol = 1e-6;
constexpr std::size_t kRadiusMaxIters = 5'000;
constexpr int kMaxRedraws = 3;

// tanh rounds to exactly +-1 beyond |x| ~ 19; saturated states are stored as
// the nearest doubles inside the open interval.
const double kStateBound = std::nextafter(1.0, 0.0);

SparseMatrix draw_recurrent(std::size_t h, double density, Rng& rng) {
  const std::size_t per_row =
      std::clamp<std::size_t>(static_cast<std::size_t>(std::llround(density * static_cast<double>(h))), 1, h);
  std::vector<Triplet> triplets;
  triplets.reserve(per_row * h);
  std::vector<std::size_t> cols(h);
  for (std::size_t r = 0; r < h; ++r) {
    std::iota(cols.begin(), cols.end(), std::size_t{0});
    // Partial Fisher-Yates: the first per_row slots are a uniform sample.
    for (std::size_t i = 0; i < per_row; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(h - i));
      std::swap(cols[i], cols[std::min(j, h - 1)]);
      triplets.push_back({r, cols[i], uniform_symmetric(rng, 1.0)});
    }
  }
  return SparseMatrix::from_triplets(h, h, std::move(triplets));
}

}  // namespace

double ReservoirConfig::density() const {
  if (recurrent_density) return *recurrent_density;
  return std::min(1.0, 10.0 / static_cast<double>(std::max<std::size_t>(hidden_units, 1)));
}

void ReservoirConfig::validate() const {
  if (hidden_units < 1) throw InvalidArgument("hidden_units must be >= 1");
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (!(target_radius > 0.0) || !std::isfinite(target_radius)) {
    throw InvalidArgument("target_radius must be positive");
  }
  if (!(input_scaling > 0.0) || !std::isfinite(input_scaling)) {
    throw InvalidArgument("input_scaling must be positive");
  }
  const double d = density();
  if (!(d > 0.0 && d <= 1.0)) throw InvalidArgument("recurrent_density must lie in (0, 1]");
  const auto h = static_cast<double>(hidden_units);
  if (d * h * h < h) {
    throw InvalidArgument("recurrent_density too small: fewer than one expected nonzero per row");
  }
}

Reservoir Reservoir::create(const ReservoirConfig& config, std::size_t input_dim) {
  config.validate();
  if (input_dim < 1) throw InvalidArgument("input_dim must be >= 1");
  const std::size_t h = config.hidden_units;

  for (int attempt = 0; attempt <= kMaxRedraws; ++attempt) {
    const std::uint64_t seed =
        attempt == 0 ? config.seed : derive_seed(config.seed, {static_cast<std::uint64_t>(attempt)});
    Rng rng(splitmix64(seed));

    Matrix w_in(static_cast<Eigen::Index>(h), static_cast<Eigen::Index>(input_dim));
    for (Eigen::Index r = 0; r < w_in.rows(); ++r) {
      for (Eigen::Index c = 0; c < w_in.cols(); ++c) {
        w_in(r, c) = uniform_symmetric(rng, config.input_scaling);
      }
    }
    SparseMatrix w_hat = draw_recurrent(h, config.density(), rng);

    const SpectralEstimate raw = modulus_spectral_radius(w_hat, kRadiusTol, kRadiusMaxIters, seed);
    if (!(raw.value > 0.0) || !std::isfinite(raw.value)) continue;

    Reservoir res;
    res.input_weights_ = std::move(w_in);
    res.recurrent_weights_ = w_hat.scaled(config.target_radius / raw.value);
    res.iterations_ = config.iterations;
    const SpectralEstimate scaled =
        modulus_spectral_radius(res.recurrent_weights_, kRadiusTol, kRadiusMaxIters, seed);
    res.achieved_radius_ = scaled.value;
    res.radius_converged_ = raw.converged && scaled.converged;
    return res;
  }
  throw NumericError("recurrent weights have zero spectral radius after " +
                     std::to_string(kMaxRedraws) + " redraws; increase the density");
}

Reservoir Reservoir::from_weights(Matrix input_weights, SparseMatrix recurrent_weights,
                                  std::size_t iterations) {
  if (recurrent_weights.rows() != recurrent_weights.cols() ||
      recurrent_weights.rows() != static_cast<std::size_t>(input_weights.rows())) {
    throw InvalidArgument("recurrent weights must be H x H with H = rows of input weights");
  }
  if (input_weights.rows() < 1 || input_weights.cols() < 1) {
    throw InvalidArgument("input weights must be non-empty");
  }
  Reservoir res;
  res.input_weights_ = std::move(input_weights);
  res.recurrent_weights_ = std::move(recurrent_weights);
  res.iterations_ = iterations;
  const SpectralEstimate est =
      modulus_spectral_radius(res.recurrent_weights_, kRadiusTol, kRadiusMaxIters, 0);
  res.achieved_radius_ = est.value;
  res.radius_converged_ = est.converged;
  return res;
}

const Reservoir::NormCache& Reservoir::norms() const {
  std::call_once(norms_->once, [this] {
    const SpectralEstimate rec = spectral_norm(recurrent_weights_);
    const SpectralEstimate in = spectral_norm(input_weights_);
    norms_->recurrent = rec.value;
    norms_->input = in.value;
    norms_->converged = rec.converged && in.converged;
  });
  return *norms_;
}

double Reservoir::achieved_spectral_norm() const { return norms().recurrent; }
double Reservoir::input_spectral_norm() const { return norms().input; }
bool Reservoir::estimates_converged() const { return radius_converged_ && norms().converged; }

Embeddings compute_embeddings(const Reservoir& reservoir, const Graph& graph,
                              const Matrix& features, const EmbeddingOptions& options) {
  const std::size_t n = graph.num_nodes();
  const std::size_t h = reservoir.hidden_units();
  if (static_cast<std::size_t>(features.cols()) != reservoir.input_dim()) {
    throw InvalidArgument("feature width " + std::to_string(features.cols()) +
                          " does not match reservoir input width " +
                          std::to_string(reservoir.input_dim()));
  }
  if (static_cast<std::size_t>(features.rows()) != n) {
    throw InvalidArgument("feature rows " + std::to_string(features.rows()) +
                          " do not match node count " + std::to_string(n));
  }
  if (options.initial_state != nullptr &&
      (static_cast<std::size_t>(options.initial_state->rows()) != n ||
       static_cast<std::size_t>(options.initial_state->cols()) != h)) {
    throw InvalidArgument("initial state must be num_nodes x H");
  }
  const std::size_t iterations = options.iterations.value_or(reservoir.iterations());
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");

  const Matrix projected = features * reservoir.input_weights().transpose();
  const SparseMatrix& w_hat = reservoir.recurrent_weights();
  const auto& w_offsets = w_hat.row_offsets();
  const auto& w_cols = w_hat.col_indices();
  const auto& w_vals = w_hat.values();

  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(h);
  Matrix prev = options.initial_state != nullptr ? *options.initial_state : Matrix::Zero(rows, cols);
  Matrix next(rows, cols);

  for (std::size_t k = 1; k <= iterations; ++k) {
    parallel_for(n, options.workers, 64, [&](std::size_t begin, std::size_t end) {
      std::vector<double> agg(h);
      for (std::size_t v = begin; v < end; ++v) {
        std::fill(agg.begin(), agg.end(), 0.0);
        for (NodeId u : graph.neighbors(static_cast<NodeId>(v))) {
          const double* hu = prev.row(u).data();
          for (std::size_t j = 0; j < h; ++j) agg[j] += hu[j];
        }
        const double* proj = projected.row(static_cast<Eigen::Index>(v)).data();
        double* out = next.row(static_cast<Eigen::Index>(v)).data();
        for (std::size_t r = 0; r < h; ++r) {
          double pre = 0.0;
          for (std::size_t q = w_offsets[r]; q < w_offsets[r + 1]; ++q) {
            pre += w_vals[q] * agg[w_cols[q]];
          }
          out[r] = std::clamp(std::tanh(proj[r] + pre), -kStateBound, kStateBound);
        }
      }
    });
    std::swap(prev, next);
    if (options.on_iteration) options.on_iteration(k, prev);
  }
  return Embeddings{std::move(prev), iterations};
}

SensitivityBound sensitivity_bound(const Reservoir& reservoir, const Graph& graph,
                                   std::size_t iterations, NodeId v, NodeId u) {
  const std::size_t n = graph.num_nodes();
  if (v < 0 || u < 0 || static_cast<std::size_t>(v) >= n || static_cast<std::size_t>(u) >= n) {
    throw InvalidArgument("node id out of range");
  }
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");

  const double w_norm = reservoir.achieved_spectral_norm();
  const double in_norm = reservoir.input_spectral_norm();

  SensitivityBound out;
  out.terms.resize(iterations, 0.0);
  // walks[x] = (A^l)_{x,u}, the u-th column of A^l.
  std::vector<double> walks(n, 0.0);
  std::vector<double> scratch(n, 0.0);
  walks[static_cast<std::size_t>(u)] = 1.0;
  double w_pow = 1.0;
  for (std::size_t l = 0; l < iterations; ++l) {
    const double count = walks[static_cast<std::size_t>(v)];
    out.terms[l] = count == 0.0 ? 0.0 : w_pow * in_norm * count;
    out.bound += out.terms[l];
    if (l + 1 < iterations) {
      graph.multiply(walks, scratch);
      std::swap(walks, scratch);
      w_pow *= w_norm;
    }
  }
  return out;
}

std::string_view to_string(StabilityRegime regime) {
  switch (regime) {
    case StabilityRegime::kContractive:
      return "contractive";
    case StabilityRegime::kNecessaryViolated:
      return "necessary-violated";
    case StabilityRegime::kIndeterminate:
      return "indeterminate";
  }
  return "indeterminate";
}

StabilityReport stability_regime(const Reservoir& reservoir, double alpha,
                                 std::optional<double> adjacency_norm) {
  if (!(alpha > 0.0)) throw InvalidArgument("alpha must be positive");
  StabilityReport report;
  report.recurrent_norm = reservoir.achieved_spectral_norm();
  report.recurrent_radius = reservoir.achieved_radius();
  report.alpha = alpha;
  report.adjacency_norm = adjacency_norm.value_or(alpha);
  if (report.lipschitz() < 1.0) {
    report.regime = StabilityRegime::kContractive;
  } else if (report.radius_product() >= 1.0) {
    report.regime = StabilityRegime::kNecessaryViolated;
  } else {
    report.regime = StabilityRegime::kIndeterminate;
  }
  return report;
}

StabilityReport stability_regime(const Reservoir& reservoir, const Graph& graph) {
  const double alpha = spectral_radius(graph).value;
  const double norm = adjacency_spectral_norm(graph).value;
  return stability_regime(reservoir, alpha, norm);
}

double separability_statistic(const Matrix& states, std::span<const Label> labels,
                              std::uint64_t seed, std::size_t max_sample) {
  const auto n = static_cast<std::size_t>(states.rows());
  if (labels.size() != n) throw InvalidArgument("labels must cover every embedding row");

  std::vector<std::size_t> sample(n);
  std::iota(sample.begin(), sample.end(), std::size_t{0});
  if (n > max_sample) {
    Rng rng(splitmix64(seed));
    for (std::size_t i = 0; i < max_sample; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n - i));
      std::swap(sample[i], sample[std::min(j, n - 1)]);
    }
    sample.resize(max_sample);
    std::sort(sample.begin(), sample.end());
  }

  std::vector<Label> present;
  for (std::size_t i : sample) present.push_back(labels[i]);
  std::sort(present.begin(), present.end());
  present.erase(std::unique(present.begin(), present.end()), present.end());
  if (present.size() < 2) throw InvalidArgument("separability needs at least two classes");

  const auto h = static_cast<std::size_t>(states.cols());
  double intra_sum = 0.0;
  double inter_sum = 0.0;
  std::uint64_t intra_count = 0;
  std::uint64_t inter_count = 0;
  for (std::size_t a = 0; a < sample.size(); ++a) {
    const double* xa = states.row(static_cast<Eigen::Index>(sample[a])).data();
    for (std::size_t b = a + 1; b < sample.size(); ++b) {
      const double* xb = states.row(static_cast<Eigen::Index>(sample[b])).data();
      double d2 = 0.0;
      for (std::size_t j = 0; j < h; ++j) {
        const double diff = xa[j] - xb[j];
        d2 += diff * diff;
      }
      const double d = std::sqrt(d2);
      if (labels[sample[a]] == labels[sample[b]]) {
        intra_sum += d;
        ++intra_count;
      } else {
        inter_sum += d;
        ++inter_count;
      }
    }
  }
  if (intra_count == 0) {
    throw UndefinedStatistic("separability undefined: no class has two sampled nodes");
  }
  const double intra = intra_sum / static_cast<double>(intra_count);
  const double inter = inter_sum / static_cast<double>(inter_count);
  if (intra == 0.0 && inter == 0.0) {
    throw UndefinedStatistic("separability undefined: all embeddings coincide");
  }
  if (intra == 0.0) return kSeparabilityCap;
  return std::min(inter / intra, kSeparabilityCap);
}

}  // namespace gesn
