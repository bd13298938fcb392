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

#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gesn/datasets.hpp"
#include "gesn/error.hpp"
#include "gesn/io.hpp"
#include "gesn/parallel.hpp"
#include "gesn/paths.hpp"
#include "gesn/random.hpp"
#include "gesn/readout.hpp"
#include "gesn/reservoir.hpp"
#include "gesn/selection.hpp"
#include "gesn/spectral.hpp"

namespace gesn::cli {

namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed: " + path.string());
}

void write_json(const fs::path& path, const Json& doc) { write_file(path, doc.dump(2) + "\n"); }

Dataset load(const DataFlags& flags) {
  Dataset d = load_dataset(flags.dataset);
  if (flags.constant_features) d.data = replace_features_constant(d.data);
  return d;
}

std::size_t resolve_split(const Dataset& d, const DataFlags& flags) {
  if (d.splits.empty()) throw InvalidArgument("dataset has no split_<k>.json files");
  const std::size_t id = flags.split.value_or(d.splits.begin()->first);
  if (!d.splits.contains(id)) throw InvalidArgument("unknown split id " + std::to_string(id));
  return id;
}

std::size_t resolve_iterations(std::size_t iterations, bool k_auto, const Graph& g, unsigned workers,
                               Json& resolved) {
  if (!k_auto) {
    if (iterations < 1) throw InvalidArgument("--iterations must be >= 1");
    return iterations;
  }
  const PathDistribution dist = shortest_path_distribution(g, workers);
  const std::size_t k = auto_iterations(dist);
  resolved["path_p95"] = dist.percentile(0.95);
  return k;
}

// Radii are given as multiples of 1/alpha; an edgeless graph takes them as is.
double absolute_radius(double multiple, double alpha) { return alpha > 0.0 ? multiple / alpha : multiple; }

ReservoirConfig reservoir_config(const ModelFlags& m, double alpha, std::size_t k, std::uint64_t seed) {
  ReservoirConfig rc;
  rc.hidden_units = m.units;
  rc.target_radius = absolute_radius(m.radius_multiple, alpha);
  rc.input_scaling = m.input_scaling;
  rc.recurrent_density = m.density;
  rc.iterations = k;
  rc.seed = seed;
  return rc;
}

void echo_data(const DataFlags& d, std::size_t split, Json& resolved) {
  resolved["dataset"] = d.dataset.string();
  resolved["split"] = split;
  resolved["constant_features"] = d.constant_features;
}

void echo_model(const ModelFlags& m, std::size_t k, Json& resolved) {
  resolved["units"] = m.units;
  resolved["radius_multiple"] = m.radius_multiple;
  resolved["input_scaling"] = m.input_scaling;
  resolved["lambda"] = m.lambda;
  resolved["k_auto"] = m.k_auto;
  resolved["iterations"] = k;
  resolved["density"] = m.density ? Json(*m.density) : Json(nullptr);
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

struct Score {
  double val = 0.0;
  double test = 0.0;
};

Score fit_and_score(const Matrix& states, const NodeData& data, const Split& split, double lambda) {
  RidgeOptions ro;
  ro.lambda = lambda;
  const RidgeReadout r = fit_ridge(states, data.labels, data.num_classes, split.train, ro);
  const Labels pred = predict(r, states);
  return {accuracy(pred, data.labels, split.val), accuracy(pred, data.labels, split.test)};
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double population_std(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double m = mean(v);
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size()));
}

}  // namespace

std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidArgument("node pair '" + text + "' is not of the form v:u");
  std::int64_t v = 0;
  std::int64_t u = 0;
  const char* begin = text.data();
  const char* mid = begin + colon;
  const char* end = begin + text.size();
  const auto a = std::from_chars(begin, mid, v);
  const auto b = std::from_chars(mid + 1, end, u);
  if (a.ec != std::errc{} || a.ptr != mid || b.ec != std::errc{} || b.ptr != end) {
    throw InvalidArgument("node pair '" + text + "' is not of the form v:u");
  }
  return {v, u};
}

void cmd_stats(const StatsOptions& opts, Json& resolved, std::ostream& out) {
  const Dataset d = load(opts.data);
  resolved["dataset"] = opts.data.dataset.string();
  resolved["constant_features"] = opts.data.constant_features;
  const DatasetStats s = compute_stats(d, opts.run.workers);
  Json doc;
  doc["nodes"] = s.nodes;
  doc["edges"] = s.edges;
  doc["alpha"] = s.alpha;
  doc["alpha_converged"] = s.alpha_converged;
  doc["edge_homophily"] = optional_number(s.edge_homophily);
  doc["node_homophily"] = optional_number(s.node_homophily);
  doc["features"] = s.features;
  doc["classes"] = s.classes;
  doc["path_p50"] = s.path_p50;
  doc["path_p95"] = s.path_p95;
  doc["path_max"] = s.path_max;
  write_json(opts.run.out / "stats.json", doc);
  out << describe_stats(s) << '\n';
}

void cmd_train(const TrainOptions& opts, Json& resolved, std::ostream& out) {
  const Dataset d = load(opts.data);
  const std::size_t split_id = resolve_split(d, opts.data);
  const Split& split = d.splits.at(split_id);
  const std::size_t k =
      resolve_iterations(opts.model.iterations, opts.model.k_auto, d.graph, opts.run.workers, resolved);
  const SpectralEstimate alpha = spectral_radius(d.graph);
  echo_data(opts.data, split_id, resolved);
  echo_model(opts.model, k, resolved);
  resolved["seed"] = opts.run.seed;
  resolved["save_embeddings"] = opts.save_embeddings;

  auto start = Clock::now();
  const Reservoir res =
      Reservoir::create(reservoir_config(opts.model, alpha.value, k, opts.run.seed), d.data.feature_dim());
  EmbeddingOptions eo;
  eo.workers = opts.run.workers;
  const Embeddings emb = compute_embeddings(res, d.graph, d.data.features, eo);
  const double embed_seconds = seconds_since(start);

  start = Clock::now();
  RidgeOptions ro;
  ro.lambda = opts.model.lambda;
  ro.workers = opts.run.workers;
  const RidgeReadout readout = fit_ridge(emb.states, d.data.labels, d.data.num_classes, split.train, ro);
  const double fit_seconds = seconds_since(start);

  start = Clock::now();
  const Labels pred = predict(readout, emb.states);
  const double inference_seconds = seconds_since(start);

  const StabilityReport stab = stability_regime(res, d.graph);
  Json metrics;
  metrics["split"] = split_id;
  metrics["alpha"] = alpha.value;
  metrics["iterations"] = k;
  metrics["target_radius"] = absolute_radius(opts.model.radius_multiple, alpha.value);
  metrics["achieved_radius"] = res.achieved_radius();
  metrics["train_accuracy"] = accuracy(pred, d.data.labels, split.train);
  metrics["val_accuracy"] = accuracy(pred, d.data.labels, split.val);
  metrics["test_accuracy"] = accuracy(pred, d.data.labels, split.test);
  metrics["stability"] = {{"regime", to_string(stab.regime)},
                          {"recurrent_norm", stab.recurrent_norm},
                          {"recurrent_radius", stab.recurrent_radius},
                          {"adjacency_norm", stab.adjacency_norm},
                          {"lipschitz", stab.lipschitz()},
                          {"radius_product", stab.radius_product()}};
  write_json(opts.run.out / "metrics.json", metrics);

  Json timings;
  timings["embed_seconds"] = embed_seconds;
  timings["fit_seconds"] = fit_seconds;
  timings["inference_seconds"] = inference_seconds;
  write_json(opts.run.out / "timings.json", timings);

  std::vector<const char*> part(d.graph.num_nodes(), "none");
  for (NodeId v : split.train) part[static_cast<std::size_t>(v)] = "train";
  for (NodeId v : split.val) part[static_cast<std::size_t>(v)] = "val";
  for (NodeId v : split.test) part[static_cast<std::size_t>(v)] = "test";
  std::ostringstream csv;
  csv << "node,label,predicted,partition\n";
  for (std::size_t v = 0; v < pred.size(); ++v) {
    csv << v << ',' << d.data.labels[v] << ',' << pred[v] << ',' << part[v] << '\n';
  }
  write_file(opts.run.out / "predictions.csv", csv.str());

  std::ostringstream rcsv;
  save_readout_csv(readout, rcsv);
  write_file(opts.run.out / "readout.csv", rcsv.str());
  if (opts.save_embeddings) write_embeddings_binary(emb.states, opts.run.out / "embeddings.bin");

  out << "test accuracy " << format_double(metrics["test_accuracy"].get<double>()) << " (val "
      << format_double(metrics["val_accuracy"].get<double>()) << ", regime " << to_string(stab.regime)
      << ")\n";
}

void cmd_gridsearch(const GridOptions& opts, Json& resolved, std::ostream& out) {
  const Dataset d = load(opts.data);
  GridSpec g = GridSpec::full_lattice();
  if (!opts.units.empty()) g.units = opts.units;
  if (!opts.radius_multiples.empty()) g.radius_multiples = opts.radius_multiples;
  if (!opts.input_scalings.empty()) g.input_scalings = opts.input_scalings;
  if (!opts.lambdas.empty()) g.lambdas = opts.lambdas;
  if (opts.max_units) std::erase_if(g.units, [&](std::size_t u) { return u > *opts.max_units; });
  g.iterations = resolve_iterations(opts.iterations, opts.k_auto, d.graph, opts.run.workers, resolved);
  g.seeds_per_config = opts.seeds;
  g.split_ids = opts.splits;
  g.recurrent_density = opts.density;
  g.validate();

  resolved["dataset"] = opts.data.dataset.string();
  resolved["constant_features"] = opts.data.constant_features;
  resolved["units"] = g.units;
  resolved["radius_multiples"] = g.radius_multiples;
  resolved["input_scalings"] = g.input_scalings;
  resolved["lambdas"] = g.lambdas;
  resolved["k_auto"] = opts.k_auto;
  resolved["iterations"] = g.iterations;
  resolved["seeds"] = g.seeds_per_config;
  resolved["splits"] = opts.splits;
  resolved["density"] = opts.density ? Json(*opts.density) : Json(nullptr);
  resolved["seed"] = opts.run.seed;

  const ExperimentResult r = grid_search(g, d, {.master_seed = opts.run.seed, .workers = opts.run.workers});
  std::ostringstream runs;
  write_runs_csv(r, runs);
  write_file(opts.run.out / "runs.csv", runs.str());
  write_file(opts.run.out / "summary.json", summary_json(r));
  out << "test accuracy " << format_double(r.test_mean) << " +/- " << format_double(r.test_std) << " over "
      << r.selections.size() << " splits (" << r.configs.size() << " configs, " << r.failed_runs
      << " failed runs)\n";
}

void cmd_curve_iterations(const CurveOptions& opts, Json& resolved, std::ostream& out) {
  const Dataset d = load(opts.data);
  const std::size_t split_id = resolve_split(d, opts.data);
  const Split& split = d.splits.at(split_id);
  std::vector<std::size_t> ks = opts.k_list;
  if (ks.empty()) {
    const std::size_t k =
        resolve_iterations(opts.model.iterations, opts.model.k_auto, d.graph, opts.run.workers, resolved);
    for (std::size_t i = 1; i <= k; ++i) ks.push_back(i);
  }
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  if (ks.front() < 1) throw InvalidArgument("--k-list values must be >= 1");
  if (opts.seeds < 1) throw InvalidArgument("--seeds must be >= 1");
  const std::size_t k_max = ks.back();
  const double alpha = spectral_radius(d.graph).value;
  echo_data(opts.data, split_id, resolved);
  echo_model(opts.model, k_max, resolved);
  resolved["k_list"] = ks;
  resolved["seeds"] = opts.seeds;
  resolved["seed"] = opts.run.seed;

  std::map<std::size_t, std::size_t> slot;
  for (std::size_t i = 0; i < ks.size(); ++i) slot[ks[i]] = i;
  std::vector<std::vector<double>> test(opts.seeds, std::vector<double>(ks.size()));
  run_tasks(opts.seeds, opts.run.workers, [&](std::size_t rep) {
    const Reservoir res = Reservoir::create(
        reservoir_config(opts.model, alpha, k_max, run_seed(opts.run.seed, 0, split_id, rep)),
        d.data.feature_dim());
    EmbeddingOptions eo;
    eo.on_iteration = [&](std::size_t k, const Matrix& states) {
      const auto it = slot.find(k);
      if (it != slot.end()) test[rep][it->second] = fit_and_score(states, d.data, split, opts.model.lambda).test;
    };
    compute_embeddings(res, d.graph, d.data.features, eo);
  });

  const PathDistribution dist = shortest_path_distribution(d.graph, opts.run.workers);
  std::ostringstream csv;
  csv << "K,test_accuracy,test_accuracy_std,ecd\n";
  for (std::size_t i = 0; i < ks.size(); ++i) {
    std::vector<double> col;
    for (const auto& row : test) col.push_back(row[i]);
    csv << ks[i] << ',' << format_double(mean(col)) << ',' << format_double(population_std(col)) << ','
        << format_double(dist.cdf(ks[i] - 1)) << '\n';
  }
  write_file(opts.run.out / "curve.csv", csv.str());
  out << "wrote " << ks.size() << " iteration counts up to K=" << k_max << '\n';
}

void cmd_heatmap(const HeatmapOptions& opts, Json& resolved, std::ostream& out) {
  const Dataset d = load(opts.data);
  const std::size_t split_id = resolve_split(d, opts.data);
  const Split& split = d.splits.at(split_id);
  ModelFlags model = opts.model;
  std::size_t k = 0;
  if (!opts.from_summary.empty()) {
    std::ifstream in(opts.from_summary);
    if (!in) throw LoadError("cannot read " + opts.from_summary.string());
    Json summary;
    try {
      summary = Json::parse(in);
      const Json* chosen = nullptr;
      for (const Json& s : summary.at("selections")) {
        if (s.at("split").get<std::size_t>() == split_id) chosen = &s;
      }
      if (chosen == nullptr) throw LoadError(opts.from_summary.string() + ": no selection for split " +
                                             std::to_string(split_id));
      model.units = chosen->at("units").get<std::size_t>();
      model.lambda = chosen->at("lambda").get<double>();
      k = summary.at("iterations").get<std::size_t>();
    } catch (const nlohmann::json::exception& e) {
      throw LoadError(opts.from_summary.string() + ": " + e.what());
    }
    resolved["from_summary"] = opts.from_summary.string();
  } else {
    k = resolve_iterations(model.iterations, model.k_auto, d.graph, opts.run.workers, resolved);
  }
  if (opts.radius_multiples.empty() || opts.input_scalings.empty()) {
    throw InvalidArgument("--radius-list and --scaling-list need at least one value");
  }
  if (opts.seeds < 1) throw InvalidArgument("--seeds must be >= 1");
  const double alpha = spectral_radius(d.graph).value;
  echo_data(opts.data, split_id, resolved);
  echo_model(model, k, resolved);
  resolved.erase("radius_multiple");
  resolved.erase("input_scaling");
  resolved["radius_list"] = opts.radius_multiples;
  resolved["scaling_list"] = opts.input_scalings;
  resolved["seeds"] = opts.seeds;
  resolved["seed"] = opts.run.seed;

  const std::size_t cells = opts.radius_multiples.size() * opts.input_scalings.size();
  struct Outcome {
    Score score;
    bool ok = false;
  };
  std::vector<Outcome> outcomes(cells * opts.seeds);
  run_tasks(outcomes.size(), opts.run.workers, [&](std::size_t task) {
    const std::size_t cell = task / opts.seeds;
    const std::size_t rep = task % opts.seeds;
    ModelFlags m = model;
    m.radius_multiple = opts.radius_multiples[cell / opts.input_scalings.size()];
    m.input_scaling = opts.input_scalings[cell % opts.input_scalings.size()];
    try {
      const Reservoir res = Reservoir::create(
          reservoir_config(m, alpha, k, run_seed(opts.run.seed, cell, split_id, rep)), d.data.feature_dim());
      const Embeddings e = compute_embeddings(res, d.graph, d.data.features);
      outcomes[task] = {fit_and_score(e.states, d.data, split, m.lambda), true};
    } catch (const NumericError&) {
      outcomes[task].ok = false;
    }
  });

  std::ostringstream csv;
  csv << "radius_multiple,radius,input_scaling,mean_test_accuracy,std_test_accuracy,mean_val_accuracy,"
         "failed_runs\n";
  for (std::size_t cell = 0; cell < cells; ++cell) {
    const double rm = opts.radius_multiples[cell / opts.input_scalings.size()];
    const double s = opts.input_scalings[cell % opts.input_scalings.size()];
    std::vector<double> tests;
    std::vector<double> vals;
    for (std::size_t rep = 0; rep < opts.seeds; ++rep) {
      const Outcome& o = outcomes[cell * opts.seeds + rep];
      if (!o.ok) continue;
      tests.push_back(o.score.test);
      vals.push_back(o.score.val);
    }
    csv << format_double(rm) << ',' << format_double(absolute_radius(rm, alpha)) << ',' << format_double(s)
        << ',';
    if (tests.empty()) {
      csv << ",,";
    } else {
      csv << format_double(mean(tests)) << ',' << format_double(population_std(tests)) << ','
          << format_double(mean(vals));
    }
    csv << ',' << opts.seeds - tests.size() << '\n';
  }
  write_file(opts.run.out / "heatmap.csv", csv.str());
  out << "wrote " << opts.radius_multiples.size() << " x " << opts.input_scalings.size() << " cells\n";
}

void cmd_sensitivity(const SensitivityOptions& opts, Json& resolved, std::ostream& out) {
  const Dataset d = load(opts.data);
  const std::size_t n = d.graph.num_nodes();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  if (opts.all_pairs) {
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u) pairs.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(u));
  }
  for (const std::string& p : opts.pairs) {
    const auto [v, u] = parse_pair(p);
    if (v < 0 || u < 0 || static_cast<std::size_t>(v) >= n || static_cast<std::size_t>(u) >= n) {
      throw InvalidArgument("node pair " + p + " outside [0, " + std::to_string(n) + ")");
    }
    pairs.emplace_back(static_cast<NodeId>(v), static_cast<NodeId>(u));
  }
  if (pairs.empty()) throw InvalidArgument("give --pairs v:u ... or --all-pairs");
  const std::size_t k =
      resolve_iterations(opts.model.iterations, opts.model.k_auto, d.graph, opts.run.workers, resolved);
  const double alpha = spectral_radius(d.graph).value;
  resolved["dataset"] = opts.data.dataset.string();
  resolved["constant_features"] = opts.data.constant_features;
  echo_model(opts.model, k, resolved);
  resolved["pairs"] = opts.pairs;
  resolved["all_pairs"] = opts.all_pairs;
  resolved["seed"] = opts.run.seed;

  const Reservoir res =
      Reservoir::create(reservoir_config(opts.model, alpha, k, opts.run.seed), d.data.feature_dim());
  std::vector<SensitivityBound> bounds(pairs.size());
  std::vector<int> dist(pairs.size());
  run_tasks(pairs.size(), opts.run.workers, [&](std::size_t i) {
    bounds[i] = sensitivity_bound(res, d.graph, k, pairs[i].first, pairs[i].second);
  });
  std::map<NodeId, std::vector<int>> bfs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto it = bfs.find(pairs[i].first);
    if (it == bfs.end()) it = bfs.emplace(pairs[i].first, bfs_distances(d.graph, pairs[i].first)).first;
    dist[i] = it->second[static_cast<std::size_t>(pairs[i].second)];
  }

  std::ostringstream csv;
  csv << "v,u,distance,bound";
  for (std::size_t l = 0; l < k; ++l) csv << ",term_" << l;
  csv << '\n';
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    csv << pairs[i].first << ',' << pairs[i].second << ',' << dist[i] << ',' << format_double(bounds[i].bound);
    for (double t : bounds[i].terms) csv << ',' << format_double(t);
    csv << '\n';
  }
  write_file(opts.run.out / "sensitivity.csv", csv.str());
  out << "wrote " << pairs.size() << " node pairs\n";
}

void cmd_synth(const SynthOptions& opts, Json& resolved, std::ostream& out) {
  SbmSpec s;
  s.num_nodes = opts.nodes;
  s.num_classes = opts.classes;
  s.p_in = opts.p_in;
  s.p_out = opts.p_out;
  s.feature_dim = opts.feature_dim;
  s.feature_signal = opts.signal;
  s.seed = opts.run.seed;
  Dataset d = generate_sbm(s);
  d.splits = stratified_splits(d.data.labels, s.num_classes, opts.num_splits,
                               derive_seed(opts.run.seed, {1}), {opts.train_fraction, opts.val_fraction});
  save_dataset(opts.run.out, d);
  resolved["nodes"] = opts.nodes;
  resolved["classes"] = opts.classes;
  resolved["p_in"] = opts.p_in;
  resolved["p_out"] = opts.p_out;
  resolved["feature_dim"] = opts.feature_dim;
  resolved["signal"] = opts.signal;
  resolved["num_splits"] = opts.num_splits;
  resolved["train_fraction"] = opts.train_fraction;
  resolved["val_fraction"] = opts.val_fraction;
  resolved["seed"] = opts.run.seed;
  out << "wrote " << d.graph.num_nodes() << " nodes, " << d.graph.num_edges() / 2 << " edges, "
      << d.splits.size() << " splits\n";
}

}  // namespace gesn::cli
