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

#include "gesn/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <random>
#include <regex>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gesn/error.hpp"
#include "gesn/io.hpp"
#include "gesn/random.hpp"
#include "gesn/spectral.hpp"

namespace gesn {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string where(const fs::path& file, std::size_t line) {
  return file.filename().string() + ":" + std::to_string(line);
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool skippable(std::string_view line) { return line.empty() || line.front() == '#'; }

std::ifstream open_required(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw LoadError("missing or unreadable file " + file.string());
  return in;
}

template <typename T>
T parse_number(std::string_view token, const fs::path& file, std::size_t line) {
  token = trim(token);
  T value{};
  const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw LoadError(where(file, line) + ": cannot parse '" + std::string(token) + "' as a number");
  }
  return value;
}

Labels read_labels(const fs::path& file) {
  std::ifstream in = open_required(file);
  Labels labels;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (skippable(s)) continue;
    const auto y = parse_number<long long>(s, file, line);
    if (y < 0 || y > std::numeric_limits<Label>::max()) {
      throw LoadError(where(file, line) + ": class id " + std::to_string(y) + " must be >= 0");
    }
    labels.push_back(static_cast<Label>(y));
  }
  if (labels.empty()) throw LoadError(file.string() + ": no labels");
  return labels;
}

Matrix read_features(const fs::path& file, std::size_t num_nodes) {
  std::ifstream in = open_required(file);
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (skippable(s)) continue;
    std::size_t count = 0;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = s.find(',', start);
      const std::string_view cell =
          s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      const double v = parse_number<double>(cell, file, line);
      if (!std::isfinite(v)) throw LoadError(where(file, line) + ": non-finite feature");
      values.push_back(v);
      ++count;
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (rows == 0) width = count;
    if (count != width) {
      throw LoadError(where(file, line) + ": expected " + std::to_string(width) +
                      " features, found " + std::to_string(count));
    }
    ++rows;
    if (rows > num_nodes) {
      throw LoadError(where(file, line) + ": more feature rows than the " +
                      std::to_string(num_nodes) + " labelled nodes");
    }
  }
  if (rows != num_nodes) {
    throw LoadError(file.string() + ": expected " + std::to_string(num_nodes) +
                    " feature rows, found " + std::to_string(rows));
  }
  Matrix features(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(width));
  std::copy(values.begin(), values.end(), features.data());
  return features;
}

std::vector<Edge> read_edges(const fs::path& file, std::size_t num_nodes) {
  std::ifstream in = open_required(file);
  std::vector<Edge> edges;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view s = trim(raw);
    if (skippable(s)) continue;
    std::istringstream tokens{std::string(s)};
    std::string a;
    std::string b;
    std::string extra;
    if (!(tokens >> a >> b) || (tokens >> extra)) {
      throw LoadError(where(file, line) + ": expected two node ids");
    }
    const auto src = parse_number<long long>(a, file, line);
    const auto dst = parse_number<long long>(b, file, line);
    for (long long id : {src, dst}) {
      if (id < 0 || static_cast<unsigned long long>(id) >= num_nodes) {
        throw LoadError(where(file, line) + ": node id " + std::to_string(id) +
                        " outside [0, " + std::to_string(num_nodes) + ")");
      }
    }
    edges.push_back({static_cast<NodeId>(src), static_cast<NodeId>(dst)});
  }
  return edges;
}

NodeIndex json_indices(const json& array, const fs::path& file, const char* name) {
  if (!array.is_array()) throw LoadError(file.filename().string() + ": '" + name + "' must be an array");
  NodeIndex out;
  out.reserve(array.size());
  for (const json& item : array) {
    if (!item.is_number_integer()) {
      throw LoadError(file.filename().string() + ": '" + name + "' must hold integers");
    }
    out.push_back(item.get<NodeId>());
  }
  return out;
}

Split read_split(const fs::path& file, std::size_t num_nodes) {
  std::ifstream in = open_required(file);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw LoadError(file.filename().string() + ": " + e.what());
  }
  Split split;
  if (doc.is_object()) {
    for (const char* key : {"train", "val", "test"}) {
      if (!doc.contains(key)) {
        throw LoadError(file.filename().string() + ": missing '" + key + "'");
      }
    }
    split.train = json_indices(doc["train"], file, "train");
    split.val = json_indices(doc["val"], file, "val");
    split.test = json_indices(doc["test"], file, "test");
  } else if (doc.is_array() && doc.size() == 3) {
    split.train = json_indices(doc[0], file, "train");
    split.val = json_indices(doc[1], file, "val");
    split.test = json_indices(doc[2], file, "test");
  } else {
    throw LoadError(file.filename().string() + ": expected {train, val, test} index arrays");
  }
  try {
    split.validate(num_nodes);
  } catch (const InvalidArgument& e) {
    throw LoadError(file.filename().string() + ": " + e.what());
  }
  return split;
}

}  // namespace

Dataset load_dataset(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw LoadError("dataset directory not found: " + dir.string());
  Dataset ds;
  ds.data.labels = read_labels(dir / "labels.csv");
  const std::size_t n = ds.data.labels.size();
  ds.data.num_classes = *std::max_element(ds.data.labels.begin(), ds.data.labels.end()) + 1;
  ds.data.features = read_features(dir / "features.csv", n);
  const std::vector<Edge> edges = read_edges(dir / "edges.tsv", n);
  ds.graph = Graph::ensure_undirected(n, edges);

  static const std::regex kSplitName(R"(split_(\d+)\.json)");
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    std::smatch m;
    if (!entry.is_regular_file() || !std::regex_match(name, m, kSplitName)) continue;
    ds.splits.emplace(std::stoul(m[1].str()), read_split(entry.path(), n));
  }
  return ds;
}

void save_dataset(const fs::path& dir, const Dataset& dataset) {
  fs::create_directories(dir);
  const Graph& g = dataset.graph;
  const bool symmetric = g.is_symmetric();
  {
    std::ofstream out(dir / "edges.tsv");
    for (const Edge& e : g.edges()) {
      if (symmetric && e.dst < e.src) continue;
      out << e.src << '\t' << e.dst << '\n';
    }
  }
  {
    std::ofstream out(dir / "features.csv");
    const Matrix& x = dataset.data.features;
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      for (Eigen::Index c = 0; c < x.cols(); ++c) out << (c ? "," : "") << format_double(x(r, c));
      out << '\n';
    }
  }
  {
    std::ofstream out(dir / "labels.csv");
    for (Label y : dataset.data.labels) out << y << '\n';
  }
  for (const auto& [id, split] : dataset.splits) {
    json doc = {{"train", split.train}, {"val", split.val}, {"test", split.test}};
    std::ofstream out(dir / ("split_" + std::to_string(id) + ".json"));
    out << doc.dump() << '\n';
  }
}

DatasetStats compute_stats(const Dataset& dataset, unsigned workers) {
  DatasetStats s;
  s.nodes = dataset.graph.num_nodes();
  s.edges = dataset.graph.num_edges();
  const SpectralEstimate alpha = spectral_radius(dataset.graph);
  s.alpha = alpha.value;
  s.alpha_converged = alpha.converged;
  try {
    s.edge_homophily = edge_homophily(dataset.graph, dataset.data.labels);
  } catch (const UndefinedStatistic&) {
  }
  try {
    s.node_homophily = node_homophily(dataset.graph, dataset.data.labels);
  } catch (const UndefinedStatistic&) {
  }
  s.features = dataset.data.feature_dim();
  s.classes = dataset.data.num_classes;
  const PathDistribution paths = shortest_path_distribution(dataset.graph, workers);
  s.path_p50 = paths.percentile(0.5);
  s.path_p95 = paths.percentile(0.95);
  s.path_max = paths.max_length();
  return s;
}

std::string describe_stats(const DatasetStats& s) {
  auto opt = [](const std::optional<double>& v) {
    if (!v) return std::string("undefined");
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << *v;
    return os.str();
  };
  std::ostringstream os;
  os << "homophily " << opt(s.edge_homophily) << " | nodes " << s.nodes << " | edges " << s.edges
     << " | radius " << std::fixed << std::setprecision(2) << s.alpha << " | features "
     << s.features << " | classes " << s.classes << " | shortest paths p50/p95/max " << s.path_p50
     << '/' << s.path_p95 << '/' << s.path_max;
  return os.str();
}

void SbmSpec::validate() const {
  if (num_nodes < 1) throw InvalidArgument("SBM needs at least one node");
  if (num_classes < 2) throw InvalidArgument("SBM needs at least two classes");
  if (static_cast<std::size_t>(num_classes) > num_nodes) {
    throw InvalidArgument("SBM needs at least one node per class");
  }
  for (double p : {p_in, p_out}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("SBM probabilities must lie in [0, 1]");
  }
  if (feature_dim < 1) throw InvalidArgument("SBM feature_dim must be >= 1");
  if (!(feature_signal >= 0.0) || !std::isfinite(feature_signal)) {
    throw InvalidArgument("SBM feature_signal must be finite and >= 0");
  }
}

namespace {

Graph draw_sbm_edges(const SbmSpec& spec, const Labels& labels, std::uint64_t seed) {
  Rng rng(splitmix64(seed));
  std::vector<Edge> edges;
  const std::size_t n = spec.num_nodes;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = labels[i] == labels[j] ? spec.p_in : spec.p_out;
      if (uniform01(rng) < p) edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(j)});
    }
  }
  return Graph::ensure_undirected(n, edges);
}

}  // namespace

Dataset generate_sbm(const SbmSpec& spec) {
  spec.validate();
  const std::size_t n = spec.num_nodes;
  const auto classes = static_cast<std::size_t>(spec.num_classes);

  Dataset ds;
  ds.data.num_classes = spec.num_classes;
  ds.data.labels.reserve(n);
  const std::size_t base = n / classes;
  const std::size_t rem = n % classes;
  for (std::size_t c = 0; c < classes; ++c) {
    const std::size_t size = base + (c < rem ? 1 : 0);
    ds.data.labels.insert(ds.data.labels.end(), size, static_cast<Label>(c));
  }

  ds.graph = draw_sbm_edges(spec, ds.data.labels, derive_seed(spec.seed, {0}));
  const bool wants_edges = spec.p_in > 0.0 || spec.p_out > 0.0;
  if (wants_edges && ds.graph.num_edges() == 0) {
    ds.graph = draw_sbm_edges(spec, ds.data.labels, derive_seed(spec.seed, {0, 1}));
    if (ds.graph.num_edges() == 0) {
      throw NumericError("SBM draw produced no edges twice; raise p_in or p_out");
    }
  }

  Rng rng(splitmix64(derive_seed(spec.seed, {1})));
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto x = static_cast<Eigen::Index>(spec.feature_dim);
  ds.data.features.resize(static_cast<Eigen::Index>(n), x);
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = static_cast<Eigen::Index>(v);
    for (Eigen::Index j = 0; j < x; ++j) ds.data.features(r, j) = noise(rng);
    ds.data.features(r, static_cast<Eigen::Index>(ds.data.labels[v]) % x) += spec.feature_signal;
  }
  return ds;
}

std::map<std::size_t, Split> stratified_splits(const Labels& labels, int num_classes,
                                               std::size_t count, std::uint64_t seed,
                                               SplitFractions fractions) {
  if (num_classes < 1) throw InvalidArgument("num_classes must be positive");
  if (!(fractions.train >= 0.0 && fractions.val >= 0.0 && fractions.train + fractions.val <= 1.0)) {
    throw InvalidArgument("split fractions must be non-negative and sum to at most 1");
  }
  std::vector<NodeIndex> members(static_cast<std::size_t>(num_classes));
  for (std::size_t v = 0; v < labels.size(); ++v) {
    if (labels[v] < 0 || labels[v] >= num_classes) throw InvalidArgument("label out of range");
    members[static_cast<std::size_t>(labels[v])].push_back(static_cast<NodeId>(v));
  }

  std::map<std::size_t, Split> out;
  for (std::size_t s = 0; s < count; ++s) {
    Rng rng(splitmix64(derive_seed(seed, {s})));
    Split split;
    for (NodeIndex cls : members) {
      for (std::size_t i = cls.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(uniform01(rng) * static_cast<double>(i));
        std::swap(cls[i - 1], cls[std::min(j, i - 1)]);
      }
      const auto nc = static_cast<double>(cls.size());
      const auto n_train = static_cast<std::size_t>(std::llround(fractions.train * nc));
      const auto n_head =
          std::min(cls.size(), static_cast<std::size_t>(std::llround((fractions.train + fractions.val) * nc)));
      split.train.insert(split.train.end(), cls.begin(), cls.begin() + static_cast<std::ptrdiff_t>(n_train));
      split.val.insert(split.val.end(), cls.begin() + static_cast<std::ptrdiff_t>(n_train),
                       cls.begin() + static_cast<std::ptrdiff_t>(n_head));
      split.test.insert(split.test.end(), cls.begin() + static_cast<std::ptrdiff_t>(n_head), cls.end());
    }
    std::sort(split.train.begin(), split.train.end());
    std::sort(split.val.begin(), split.val.end());
    std::sort(split.test.begin(), split.test.end());
    out.emplace(s, std::move(split));
  }
  return out;
}

}  // namespace gesn
