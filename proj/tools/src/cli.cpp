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

#include "cli.hpp"

#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "gesn/error.hpp"

#ifndef GESN_VERSION
#define GESN_VERSION "unknown"
#endif

namespace gesn::cli {

namespace fs = std::filesystem;

namespace {

void add_data_flags(CLI::App* sub, DataFlags& d, bool with_split = true) {
  sub->add_option("--dataset", d.dataset, "Dataset directory")->required();
  if (with_split) sub->add_option("--split", d.split, "Split id (default: lowest)");
  sub->add_flag("--constant-features", d.constant_features, "Replace features by a constant column");
}

void add_model_flags(CLI::App* sub, ModelFlags& m) {
  sub->add_option("--units", m.units, "Reservoir units H")->capture_default_str();
  sub->add_option("--radius-multiple", m.radius_multiple, "Target spectral radius times alpha")
      ->capture_default_str();
  sub->add_option("--input-scaling", m.input_scaling, "Input weight half-width")->capture_default_str();
  sub->add_option("--lambda", m.lambda, "Ridge regularization")->capture_default_str();
  sub->add_option("--iterations,-K", m.iterations, "Iterations K")->capture_default_str();
  sub->add_flag("--k-auto", m.k_auto, "K = 95th shortest-path percentile + 1");
  sub->add_option("--density", m.density, "Recurrent density (default min(1, 10/H))");
}

void add_run_flags(CLI::App* sub, RunFlags& r, bool with_workers = true) {
  sub->add_option("--out,-o", r.out, std::string("Output directory (default $") + kOutputDirEnv +
                                         "/<subcommand>)");
  sub->add_option("--seed", r.seed, "Master seed")->capture_default_str();
  if (with_workers) sub->add_option("--workers,-j", r.workers, "Worker threads (0: all cores)")->capture_default_str();
}

fs::path default_out(const std::string& sub) {
  const char* root = std::getenv(kOutputDirEnv);
  return fs::path(root != nullptr && *root != '\0' ? root : "gesn-output") / sub;
}

// Arguments that reproduce the run, minus the output location.
std::vector<std::string> replay_args(const std::vector<std::string>& args) {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    if (a == "--out" || a == "-o") {
      ++i;
      continue;
    }
    if (a.rfind("--out=", 0) == 0) continue;
    kept.push_back(a);
  }
  return kept;
}

void write_manifest(const fs::path& dir, const std::string& sub, const std::vector<std::string>& args,
                    const Json& resolved, const std::string& status, const std::string& error) {
  Json doc;
  doc["tool"] = "gesn";
  doc["version"] = GESN_VERSION;
  doc["subcommand"] = sub;
  doc["args"] = replay_args(args);
  doc["config"] = resolved;
  doc["status"] = status;
  if (!error.empty()) doc["error"] = error;
  std::ofstream out(dir / "manifest.json", std::ios::binary | std::ios::trunc);
  out << doc.dump(2) << '\n';
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graph Echo State Network toolkit", "gesn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", GESN_VERSION);

  StatsOptions stats;
  TrainOptions train;
  GridOptions grid;
  CurveOptions curve;
  HeatmapOptions heat;
  SensitivityOptions sens;
  SynthOptions synth;

  std::map<CLI::App*, std::pair<RunFlags*, std::function<void(Json&)>>> commands;

  auto* s = app.add_subcommand("stats", "Graph statistics as JSON");
  add_data_flags(s, stats.data, false);
  add_run_flags(s, stats.run);
  commands[s] = {&stats.run, [&](Json& r) { cmd_stats(stats, r, out); }};

  auto* t = app.add_subcommand("train", "Embed, fit and evaluate one configuration");
  add_data_flags(t, train.data);
  add_model_flags(t, train.model);
  add_run_flags(t, train.run);
  t->add_flag("--save-embeddings", train.save_embeddings, "Also write embeddings.bin");
  commands[t] = {&train.run, [&](Json& r) { cmd_train(train, r, out); }};

  auto* g = app.add_subcommand("gridsearch", "Model selection over a hyperparameter lattice");
  add_data_flags(g, grid.data, false);
  add_run_flags(g, grid.run);
  g->add_option("--units", grid.units, "Units axis (default 16..4096)");
  g->add_option("--radius-multiples", grid.radius_multiples, "Radius axis as multiples of 1/alpha");
  g->add_option("--input-scalings", grid.input_scalings, "Input scaling axis");
  g->add_option("--lambdas", grid.lambdas, "Regularization axis");
  g->add_option("--max-units", grid.max_units, "Drop units above this value");
  g->add_option("--iterations,-K", grid.iterations, "Iterations K")->capture_default_str();
  g->add_flag("--k-auto", grid.k_auto, "K = 95th shortest-path percentile + 1");
  g->add_option("--seeds", grid.seeds, "Reservoir seeds per configuration")->capture_default_str();
  g->add_option("--splits", grid.splits, "Split ids (default: all)");
  g->add_option("--density", grid.density, "Recurrent density (default min(1, 10/H))");
  commands[g] = {&grid.run, [&](Json& r) { cmd_gridsearch(grid, r, out); }};

  auto* c = app.add_subcommand("curve-iterations", "Test accuracy and path ECD as functions of K");
  add_data_flags(c, curve.data);
  add_model_flags(c, curve.model);
  add_run_flags(c, curve.run);
  c->add_option("--k-list", curve.k_list, "Iteration counts (default 1..K)");
  c->add_option("--seeds", curve.seeds, "Reservoir seeds")->capture_default_str();
  commands[c] = {&curve.run, [&](Json& r) { cmd_curve_iterations(curve, r, out); }};

  auto* h = app.add_subcommand("heatmap", "Test accuracy over radius x input scaling");
  add_data_flags(h, heat.data);
  add_model_flags(h, heat.model);
  add_run_flags(h, heat.run);
  h->add_option("--radius-list", heat.radius_multiples, "Radii as multiples of 1/alpha")->required();
  h->add_option("--scaling-list", heat.input_scalings, "Input scalings")->required();
  h->add_option("--seeds", heat.seeds, "Reservoir seeds per cell")->capture_default_str();
  h->add_option("--from-summary", heat.from_summary, "Take units, lambda and K from a gridsearch summary.json");
  commands[h] = {&heat.run, [&](Json& r) { cmd_heatmap(heat, r, out); }};

  auto* e = app.add_subcommand("sensitivity", "Sensitivity bound per node pair");
  add_data_flags(e, sens.data, false);
  add_model_flags(e, sens.model);
  add_run_flags(e, sens.run);
  e->add_option("--pairs", sens.pairs, "Node pairs v:u");
  e->add_flag("--all-pairs", sens.all_pairs, "Every ordered node pair");
  commands[e] = {&sens.run, [&](Json& r) { cmd_sensitivity(sens, r, out); }};

  auto* y = app.add_subcommand("synth", "Write a stochastic block model dataset");
  add_run_flags(y, synth.run, false);
  y->add_option("--nodes", synth.nodes)->capture_default_str();
  y->add_option("--classes", synth.classes)->capture_default_str();
  y->add_option("--p-in", synth.p_in, "Within-class edge probability")->capture_default_str();
  y->add_option("--p-out", synth.p_out, "Across-class edge probability")->capture_default_str();
  y->add_option("--feature-dim", synth.feature_dim)->capture_default_str();
  y->add_option("--signal", synth.signal, "Class mean distance from the origin")->capture_default_str();
  y->add_option("--num-splits", synth.num_splits)->capture_default_str();
  y->add_option("--train-fraction", synth.train_fraction)->capture_default_str();
  y->add_option("--val-fraction", synth.val_fraction)->capture_default_str();
  commands[y] = {&synth.run, [&](Json& r) { cmd_synth(synth, r, out); }};

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kExitOk : kExitInvalidArgs;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto& [run, action] = commands.at(sub);
  if (run->out.empty()) run->out = default_out(sub->get_name());

  Json resolved;
  int code = kExitOk;
  std::string error;
  try {
    fs::create_directories(run->out);
    action(resolved);
  } catch (const InvalidArgument& ex) {
    code = kExitInvalidArgs;
    error = ex.what();
  } catch (const LoadError& ex) {
    code = kExitLoadError;
    error = ex.what();
  } catch (const NumericError& ex) {
    code = kExitNumericError;
    error = ex.what();
  } catch (const UndefinedStatistic& ex) {
    code = kExitNumericError;
    error = ex.what();
  } catch (const std::exception& ex) {
    code = kExitFailure;
    error = ex.what();
  }
  if (code != kExitOk) err << "gesn " << sub->get_name() << ": " << error << '\n';
  try {
    if (fs::is_directory(run->out)) {
      resolved["workers"] = run->workers;
      write_manifest(run->out, sub->get_name(), args, resolved, code == kExitOk ? "ok" : "failed", error);
    }
  } catch (const std::exception& ex) {
    err << "gesn: cannot write manifest: " << ex.what() << '\n';
    if (code == kExitOk) code = kExitFailure;
  }
  return code;
}

}  // namespace gesn::cli
