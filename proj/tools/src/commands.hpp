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

#ifndef GESN_TOOLS_COMMANDS_HPP_
#define GESN_TOOLS_COMMANDS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace gesn::cli {

using Json = nlohmann::ordered_json;

struct DataFlags {
  std::filesystem::path dataset;
  std::optional<std::size_t> split;  // empty: lowest split id
  bool constant_features = false;
};

struct ModelFlags {
  std::size_t units = 64;
  double radius_multiple = 0.9;  // target radius times alpha
  double input_scaling = 1.0;
  double lambda = 1e-3;
  std::size_t iterations = 100;
  bool k_auto = false;
  std::optional<double> density;
};

struct RunFlags {
  std::filesystem::path out;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

struct StatsOptions {
  DataFlags data;
  RunFlags run;
};

struct TrainOptions {
  DataFlags data;
  ModelFlags model;
  RunFlags run;
  bool save_embeddings = false;
};

struct GridOptions {
  DataFlags data;
  RunFlags run;
  std::vector<std::size_t> units;
  std::vector<double> radius_multiples;
  std::vector<double> input_scalings;
  std::vector<double> lambdas;
  std::optional<std::size_t> max_units;
  std::size_t iterations = 100;
  bool k_auto = false;
  std::size_t seeds = 10;
  std::vector<std::size_t> splits;
  std::optional<double> density;
};

struct CurveOptions {
  DataFlags data;
  ModelFlags model;
  RunFlags run;
  std::vector<std::size_t> k_list;  // empty: 1..iterations
  std::size_t seeds = 10;
};

struct HeatmapOptions {
  DataFlags data;
  ModelFlags model;
  RunFlags run;
  std::vector<double> radius_multiples;
  std::vector<double> input_scalings;
  std::size_t seeds = 10;
  std::filesystem::path from_summary;  // fixes units, lambda and K from a selection
};

struct SensitivityOptions {
  DataFlags data;
  ModelFlags model;
  RunFlags run;
  std::vector<std::string> pairs;  // "v:u"
  bool all_pairs = false;
};

struct SynthOptions {
  RunFlags run;
  std::size_t nodes = 1000;
  int classes = 2;
  double p_in = 0.02;
  double p_out = 0.02;
  std::size_t feature_dim = 16;
  double signal = 0.0;
  std::size_t num_splits = 10;
  double train_fraction = 0.48;
  double val_fraction = 0.32;
};

// Each command writes its artifacts under run.out and adds the fully
// resolved configuration to `resolved`.
void cmd_stats(const StatsOptions& opts, Json& resolved, std::ostream& out);
void cmd_train(const TrainOptions& opts, Json& resolved, std::ostream& out);
void cmd_gridsearch(const GridOptions& opts, Json& resolved, std::ostream& out);
void cmd_curve_iterations(const CurveOptions& opts, Json& resolved, std::ostream& out);
void cmd_heatmap(const HeatmapOptions& opts, Json& resolved, std::ostream& out);
void cmd_sensitivity(const SensitivityOptions& opts, Json& resolved, std::ostream& out);
void cmd_synth(const SynthOptions& opts, Json& resolved, std::ostream& out);

// "v:u" -> (v, u). Throws InvalidArgument.
std::pair<std::int64_t, std::int64_t> parse_pair(const std::string& text);

}  // namespace gesn::cli

#endif  // GESN_TOOLS_COMMANDS_HPP_
