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

#include "gesn/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gesn/error.hpp"
#include "gesn/io.hpp"
#include "gesn/parallel.hpp"
#include "gesn/random.hpp"
#include "gesn/readout.hpp"
#include "gesn/reservoir.hpp"
#include "gesn/spectral.hpp"

namespace gesn {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

}  // namespace

void GridSpec::validate() const {
  if (units.empty() || radius_multiples.empty() || input_scalings.empty() || lambdas.empty()) {
    throw InvalidArgument("every grid axis needs at least one value");
  }
  for (std::size_t u : units) {
    if (u < 1) throw InvalidArgument("units must be >= 1");
  }
  for (double r : radius_multiples) {
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("radius multiples must be positive");
  }
  for (double s : input_scalings) {
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidArgument("input scalings must be positive");
  }
  for (double l : lambdas) {
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidArgument("lambdas must be finite and >= 0");
  }
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
  if (seeds_per_config < 1) throw InvalidArgument("seeds_per_config must be >= 1");
}

GridSpec GridSpec::full_lattice() {
  GridSpec g;
  for (std::size_t u = 16; u <= 4096; u *= 2) g.units.push_back(u);
  g.radius_multiples = {0.1, 0.3, 0.5, 0.8, 1.0, 2.0, 4.0, 6.0, 10.0, 20.0, 30.0, 45.0, 50.0};
  for (double s = 1.0; s > 1.0 / 320.0; s *= 0.5) g.input_scalings.push_back(s);
  g.input_scalings.push_back(1.0 / 320.0);
  for (int e = -5; e <= 2; ++e) g.lambdas.push_back(std::pow(10.0, e));
  g.iterations = 100;
  g.seeds_per_config = 10;
  return g;
}

std::vector<GridConfig> expand_grid(const GridSpec& grid) {
  std::vector<GridConfig> out;
  out.reserve(grid.units.size() * grid.radius_multiples.size() * grid.input_scalings.size() *
              grid.lambdas.size());
  for (std::size_t u : grid.units) {
    for (double r : grid.radius_multiples) {
      for (double s : grid.input_scalings) {
        for (double l : grid.lambdas) out.push_back({u, r, s, l});
      }
    }
  }
  return out;
}

std::uint64_t run_seed(std::uint64_t master_seed, std::size_t reservoir_index, std::size_t split,
                       std::size_t repetition) {
  return derive_seed(master_seed, {reservoir_index, split, repetition});
}

ExperimentResult grid_search(const GridSpec& grid, const Dataset& dataset,
                             const SearchOptions& options) {
  grid.validate();
  const Graph& graph = dataset.graph;
  const NodeData& data = dataset.data;
  data.validate(graph.num_nodes());

  std::vector<std::size_t> split_ids = grid.split_ids;
  if (split_ids.empty()) {
    for (const auto& [id, split] : dataset.splits) split_ids.push_back(id);
  }
  if (split_ids.empty()) throw InvalidArgument("grid search needs at least one split");
  for (std::size_t id : split_ids) {
    const auto it = dataset.splits.find(id);
    if (it == dataset.splits.end()) throw InvalidArgument("unknown split id " + std::to_string(id));
    it->second.validate(graph.num_nodes());
  }

  ExperimentResult result;
  result.alpha = spectral_radius(graph).value;
  result.iterations = grid.iterations;
  result.configs = expand_grid(grid);
  // Without edges the recurrent term never fires; radii are then taken as is.
  const double inv_alpha = result.alpha > 0.0 ? 1.0 / result.alpha : 1.0;

  const std::size_t num_lambdas = grid.lambdas.size();
  const std::size_t num_points = result.configs.size() / num_lambdas;
  const std::size_t reps = grid.seeds_per_config;
  const std::size_t num_tasks = split_ids.size() * num_points * reps;

  // slots[task * num_lambdas + l]; task = (split_pos * num_points + point) * reps + rep
  std::vector<RunRecord> slots(num_tasks * num_lambdas);

  run_tasks(num_tasks, options.workers, [&](std::size_t task) {
    const std::size_t rep = task % reps;
    const std::size_t point = (task / reps) % num_points;
    const std::size_t split_pos = task / (reps * num_points);
    const std::size_t split_id = split_ids[split_pos];
    const Split& split = dataset.splits.at(split_id);
    const GridConfig& first = result.configs[point * num_lambdas];

    ReservoirConfig rc;
    rc.hidden_units = first.units;
    rc.target_radius = first.radius_multiple * inv_alpha;
    rc.input_scaling = first.input_scaling;
    rc.recurrent_density = grid.recurrent_density;
    rc.iterations = grid.iterations;
    rc.seed = run_seed(options.master_seed, point, split_id, rep);

    for (std::size_t l = 0; l < num_lambdas; ++l) {
      RunRecord& r = slots[task * num_lambdas + l];
      r.split = split_id;
      r.repetition = rep;
      r.seed = rc.seed;
      r.config_index = point * num_lambdas + l;
      r.config = result.configs[r.config_index];
    }

    Embeddings emb;
    double embed_seconds = 0.0;
    try {
      const auto start = Clock::now();
      const Reservoir res = Reservoir::create(rc, data.feature_dim());
      emb = compute_embeddings(res, graph, data.features);
      embed_seconds = seconds_since(start);
    } catch (const Error& e) {
      for (std::size_t l = 0; l < num_lambdas; ++l) {
        RunRecord& r = slots[task * num_lambdas + l];
        r.failed = true;
        r.error = e.what();
      }
      return;
    }

    for (std::size_t l = 0; l < num_lambdas; ++l) {
      RunRecord& r = slots[task * num_lambdas + l];
      r.embed_seconds = embed_seconds;
      try {
        const auto start = Clock::now();
        RidgeOptions ro;
        ro.lambda = r.config.lambda;
        const RidgeReadout readout =
            fit_ridge(emb.states, data.labels, data.num_classes, split.train, ro);
        r.fit_seconds = seconds_since(start);
        const Labels pred = predict(readout, emb.states);
        r.train_accuracy = accuracy(pred, data.labels, split.train);
        r.val_accuracy = accuracy(pred, data.labels, split.val);
        r.test_accuracy = accuracy(pred, data.labels, split.test);
      } catch (const Error& e) {
        r.failed = true;
        r.error = e.what();
      }
    }
  });

  // Reorder to (split, config, repetition).
  result.runs.reserve(slots.size());
  for (std::size_t sp = 0; sp < split_ids.size(); ++sp) {
    for (std::size_t c = 0; c < result.configs.size(); ++c) {
      const std::size_t point = c / num_lambdas;
      const std::size_t l = c % num_lambdas;
      for (std::size_t rep = 0; rep < reps; ++rep) {
        const std::size_t task = (sp * num_points + point) * reps + rep;
        result.runs.push_back(std::move(slots[task * num_lambdas + l]));
      }
    }
  }
  summarize(result, result.configs.size());
  return result;
}

void summarize(ExperimentResult& result, std::size_t num_configs) {
  result.selections.clear();
  result.failed_runs = 0;

  std::map<std::size_t, std::vector<const RunRecord*>> by_split;
  for (const RunRecord& r : result.runs) {
    if (r.failed) {
      ++result.failed_runs;
      continue;
    }
    by_split[r.split].push_back(&r);
  }

  for (const auto& [split, runs] : by_split) {
    std::vector<double> val_sum(num_configs, 0.0);
    std::vector<double> test_sum(num_configs, 0.0);
    std::vector<std::size_t> count(num_configs, 0);
    for (const RunRecord* r : runs) {
      val_sum[r->config_index] += r->val_accuracy;
      test_sum[r->config_index] += r->test_accuracy;
      ++count[r->config_index];
    }
    std::optional<std::size_t> best;
    double best_val = -1.0;
    for (std::size_t c = 0; c < num_configs; ++c) {
      if (count[c] == 0) continue;
      const double mean_val = val_sum[c] / static_cast<double>(count[c]);
      if (!best || mean_val > best_val) {
        best = c;
        best_val = mean_val;
      }
    }
    if (!best) continue;
    SplitSelection sel;
    sel.split = split;
    sel.config_index = *best;
    for (const RunRecord* r : runs) {
      if (r->config_index == *best) {
        sel.config = r->config;
        break;
      }
    }
    sel.mean_val_accuracy = best_val;
    sel.mean_test_accuracy = test_sum[*best] / static_cast<double>(count[*best]);
    sel.num_runs = count[*best];
    result.selections.push_back(sel);
  }

  result.test_mean = 0.0;
  result.test_std = 0.0;
  if (!result.selections.empty()) {
    const auto k = static_cast<double>(result.selections.size());
    for (const SplitSelection& s : result.selections) result.test_mean += s.mean_test_accuracy;
    result.test_mean /= k;
    double var = 0.0;
    for (const SplitSelection& s : result.selections) {
      var += (s.mean_test_accuracy - result.test_mean) * (s.mean_test_accuracy - result.test_mean);
    }
    result.test_std = std::sqrt(var / k);
  }
}

void write_runs_csv(const ExperimentResult& result, std::ostream& out) {
  out << "split,repetition,seed,config_index,units,radius_multiple,input_scaling,lambda,"
         "train_accuracy,val_accuracy,test_accuracy,embed_seconds,fit_seconds,failed,error\n";
  for (const RunRecord& r : result.runs) {
    out << r.split << ',' << r.repetition << ',' << r.seed << ',' << r.config_index << ','
        << r.config.units << ',' << format_double(r.config.radius_multiple) << ','
        << format_double(r.config.input_scaling) << ',' << format_double(r.config.lambda) << ','
        << format_double(r.train_accuracy) << ',' << format_double(r.val_accuracy) << ','
        << format_double(r.test_accuracy) << ',' << format_double(r.embed_seconds) << ','
        << format_double(r.fit_seconds) << ',' << (r.failed ? 1 : 0) << ','
        << csv_field(r.error) << '\n';
  }
}

std::string summary_json(const ExperimentResult& result) {
  nlohmann::ordered_json doc;
  doc["alpha"] = result.alpha;
  doc["iterations"] = result.iterations;
  doc["num_configs"] = result.configs.size();
  doc["num_runs"] = result.runs.size();
  doc["failed_runs"] = result.failed_runs;
  doc["test_mean"] = result.test_mean;
  doc["test_std"] = result.test_std;
  nlohmann::ordered_json selections = nlohmann::ordered_json::array();
  for (const SplitSelection& s : result.selections) {
    nlohmann::ordered_json item;
    item["split"] = s.split;
    item["config_index"] = s.config_index;
    item["units"] = s.config.units;
    item["radius_multiple"] = s.config.radius_multiple;
    item["radius"] = result.alpha > 0.0 ? s.config.radius_multiple / result.alpha
                                         : s.config.radius_multiple;
    item["input_scaling"] = s.config.input_scaling;
    item["lambda"] = s.config.lambda;
    item["mean_val_accuracy"] = s.mean_val_accuracy;
    item["mean_test_accuracy"] = s.mean_test_accuracy;
    item["num_runs"] = s.num_runs;
    selections.push_back(std::move(item));
  }
  doc["selections"] = std::move(selections);
  return doc.dump(2) + "\n";
}

NodeData replace_features_constant(const NodeData& data) {
  NodeData out = data;
  out.features = Matrix::Ones(static_cast<Eigen::Index>(data.labels.size()), 1);
  return out;
}

std::size_t auto_iterations(const PathDistribution& paths) { return paths.percentile(0.95) + 1; }

}  // namespace gesn
