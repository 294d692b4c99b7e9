// Copyright 2026 The Azana Authors.
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

#include "azana/analysis.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "azana/error.h"
#include "azana/smoothing.h"

namespace azana {
namespace {

using nlohmann::json;

// Runs one pipeline stage, tagging errors that do not carry a stage yet.
template <typename F>
auto Stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (!e.stage().empty()) throw;
    throw Error(e.kind(), name, e.what());
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::kInput, name, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    throw Error(ErrorKind::kInput, name, e.what());
  }
}

// Sensor ids that are both integers compare numerically, others as strings.
bool SensorIdLess(const std::string& a, const std::string& b) {
  const auto ia = ParseDouble(a);
  const auto ib = ParseDouble(b);
  const bool int_a = ia && a.find_first_not_of("-0123456789") == std::string::npos;
  const bool int_b = ib && b.find_first_not_of("-0123456789") == std::string::npos;
  if (int_a && int_b && *ia != *ib) return *ia < *ib;
  if (int_a != int_b) return int_a;
  return a < b;
}

std::vector<ShortlistEntry> TopEntries(std::vector<ShortlistEntry> entries,
                                       const std::vector<std::string>& sensors,
                                       int limit) {
  auto less = [&](const ShortlistEntry& x, const ShortlistEntry& y) {
    const double ax = std::fabs(x.score);
    const double ay = std::fabs(y.score);
    if (ax != ay) return ax > ay;
    if (x.sensor != y.sensor) {
      if (!x.sensor || !y.sensor) return !x.sensor;
      const std::string& sx = sensors[*x.sensor];
      const std::string& sy = sensors[*y.sensor];
      if (SensorIdLess(sx, sy)) return true;
      if (SensorIdLess(sy, sx)) return false;
      return *x.sensor < *y.sensor;
    }
    if (x.t_begin != y.t_begin) return x.t_begin < y.t_begin;
    if (x.t_end != y.t_end) return x.t_end < y.t_end;
    return x.lambda < y.lambda;
  };
  std::sort(entries.begin(), entries.end(), less);
  if (entries.size() > static_cast<std::size_t>(limit)) entries.resize(limit);
  return entries;
}

json OptionalNumber(const std::optional<double>& x) {
  return x ? json(*x) : json(nullptr);
}

std::string ScoreCell(const StatisticResult& r) {
  return r.defined() ? FormatDouble(r.value) : std::string(kUndefinedSentinel);
}

std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

const WhitenessTestResult* FindTest(const AnalysisReport& report,
                                    double lambda) {
  for (std::size_t i = 0; i < report.config.lambdas.size(); ++i) {
    if (report.config.lambdas[i] == lambda &&
        report.global_tests[i].statistic.defined()) {
      return &report.global_tests[i];
    }
  }
  return nullptr;
}

Findings DeriveFindings(const AnalysisReport& report) {
  Findings f;
  const WhitenessTestResult* half = FindTest(report, 0.5);
  const WhitenessTestResult* spatial = FindTest(report, 1.0);
  const WhitenessTestResult* temporal = FindTest(report, 0.0);
  if (half) f.correlation_present = half->reject;
  if (spatial) f.spatial_correlation = spatial->reject;
  if (temporal) f.temporal_correlation = temporal->reject;
  if (spatial && temporal) {
    const double c0 = std::fabs(temporal->statistic.value);
    const double c1 = std::fabs(spatial->statistic.value);
    if (c0 > c1 && temporal->reject) {
      f.dominant = "temporal";
    } else if (c1 > c0 && spatial->reject) {
      f.dominant = "spatial";
    } else {
      f.dominant = "none";
    }
  }
  return f;
}

json StatisticJson(const StatisticResult& r) {
  return json{{"c_sp", r.c_sp},
              {"c_tm", r.c_tm},
              {"w_sp", r.w_sp_norm},
              {"w_tm", r.w_tm_norm},
              {"n_spatial_edges", r.n_spatial_edges},
              {"n_temporal_edges", r.n_temporal_edges}};
}

json ShortlistJson(const std::vector<ShortlistEntry>& entries,
                   const std::vector<std::string>& sensors) {
  json out = json::array();
  for (const ShortlistEntry& e : entries) {
    json item{{"lambda", e.lambda}};
    if (e.sensor) item["sensor"] = sensors[*e.sensor];
    if (e.t_begin && e.t_end && *e.t_begin == *e.t_end) {
      item["t"] = *e.t_begin;
    } else if (e.t_begin) {
      item["t_begin"] = *e.t_begin;
      item["t_end"] = *e.t_end;
    }
    item["score"] = e.score;
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace

std::optional<Centering> ParseCentering(std::string_view name) {
  if (name == "none") return Centering::kNone;
  if (name == "global_median") return Centering::kGlobalMedian;
  if (name == "per_node_median") return Centering::kPerNodeMedian;
  return std::nullopt;
}

std::string_view ToString(Centering centering) {
  switch (centering) {
    case Centering::kNone:
      return "none";
    case Centering::kGlobalMedian:
      return "global_median";
    case Centering::kPerNodeMedian:
      return "per_node_median";
  }
  return "none";
}

std::optional<ComponentMode> ParseComponentMode(std::string_view name) {
  if (name == "vector") return ComponentMode::kVector;
  if (name == "per_component") return ComponentMode::kPerComponent;
  return std::nullopt;
}

std::string_view ToString(ComponentMode mode) {
  return mode == ComponentMode::kVector ? "vector" : "per_component";
}

void AnalysisConfig::Validate() const {
  if (lambdas.empty()) throw InputError("config: at least one lambda required");
  for (double l : lambdas) {
    if (!(l >= 0.0 && l <= 1.0)) {
      throw InputError("config: lambda " + FormatDouble(l) + " outside [0, 1]");
    }
  }
  if (!(spacetime_lambda >= 0.0 && spacetime_lambda <= 1.0)) {
    throw InputError("config: spacetime_lambda outside [0, 1]");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("config: alpha must lie in (0, 1)");
  }
  if (k < 1) throw InputError("config: k must be >= 1");
  if (iterations < 1) throw InputError("config: iterations must be >= 1");
  if (shortlist_size < 0) throw InputError("config: shortlist_size must be >= 0");
  if (window_width < 0) throw InputError("config: window_width must be >= 0");
  if (!(median_iqr_fraction >= 0.0)) {
    throw InputError("config: median_iqr_fraction must be >= 0");
  }
  if (temporal_weight && !(*temporal_weight > 0.0 && std::isfinite(*temporal_weight))) {
    throw InputError("config: temporal_weight must be positive and finite");
  }
  if (target_paths.empty() != prediction_paths.empty()) {
    throw InputError("config: targets and predictions must be given together");
  }
}

AnalysisConfig ConfigFromJson(const json& doc, AnalysisConfig base) {
  if (!doc.is_object()) throw InputError("config: expected a JSON object");
  auto paths = [](const json& v) {
    if (v.is_string()) return std::vector<std::string>{v.get<std::string>()};
    return v.get<std::vector<std::string>>();
  };
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "lambdas") {
        base.lambdas = value.is_number() ? std::vector<double>{value.get<double>()}
                                         : value.get<std::vector<double>>();
      } else if (key == "alpha") {
        base.alpha = value.get<double>();
      } else if (key == "k") {
        base.k = value.get<int>();
      } else if (key == "iterations") {
        base.iterations = value.get<int>();
      } else if (key == "spacetime_lambda") {
        base.spacetime_lambda = value.get<double>();
      } else if (key == "center") {
        auto c = ParseCentering(value.get<std::string>());
        if (!c) throw InputError("config: unknown centering '" + value.get<std::string>() + "'");
        base.centering = *c;
      } else if (key == "component_mode") {
        auto m = ParseComponentMode(value.get<std::string>());
        if (!m) throw InputError("config: unknown component_mode '" + value.get<std::string>() + "'");
        base.component_mode = *m;
      } else if (key == "residuals") {
        base.residual_paths = paths(value);
      } else if (key == "residual_format") {
        auto f = ParseResidualFormat(value.get<std::string>());
        if (!f) throw InputError("config: unknown residual_format '" + value.get<std::string>() + "'");
        base.residual_format = *f;
      } else if (key == "edges") {
        base.edges_path = value.get<std::string>();
      } else if (key == "targets") {
        base.target_paths = paths(value);
      } else if (key == "predictions") {
        base.prediction_paths = paths(value);
      } else if (key == "output_dir") {
        base.output_dir = value.get<std::string>();
      } else if (key == "shortlist_size") {
        base.shortlist_size = value.get<int>();
      } else if (key == "window_width") {
        base.window_width = value.get<int>();
      } else if (key == "median_iqr_fraction") {
        base.median_iqr_fraction = value.get<double>();
      } else if (key == "temporal_weight") {
        if (value.is_null()) {
          base.temporal_weight.reset();
        } else {
          base.temporal_weight = value.get<double>();
        }
      } else {
        throw InputError("config: unknown key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  return base;
}

AnalysisConfig LoadConfigFile(const std::string& path, AnalysisConfig base) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("config '" + path + "': " + e.what());
  }
  return ConfigFromJson(doc, std::move(base));
}

json ConfigToJson(const AnalysisConfig& c) {
  json out{{"lambdas", c.lambdas},
           {"alpha", c.alpha},
           {"k", c.k},
           {"iterations", c.iterations},
           {"spacetime_lambda", c.spacetime_lambda},
           {"center", ToString(c.centering)},
           {"component_mode", ToString(c.component_mode)},
           {"residuals", c.residual_paths},
           {"residual_format", ToString(c.residual_format)},
           {"edges", c.edges_path},
           {"targets", c.target_paths},
           {"predictions", c.prediction_paths},
           {"shortlist_size", c.shortlist_size},
           {"window_width", c.window_width},
           {"median_iqr_fraction", c.median_iqr_fraction},
           {"temporal_weight", OptionalNumber(c.temporal_weight)}};
  return out;
}

std::vector<std::pair<int, int>> TileWindows(int num_steps, int width) {
  std::vector<std::pair<int, int>> windows;
  if (num_steps < 2) return windows;
  width = std::max(width, 2);
  for (int begin = 1; begin <= num_steps; begin += width) {
    windows.emplace_back(begin, std::min(begin + width - 1, num_steps));
  }
  if (windows.size() > 1 && windows.back().first == windows.back().second) {
    windows.pop_back();
    windows.back().second = num_steps;
  }
  if (windows.back().first == windows.back().second) windows.clear();
  return windows;
}

MaeTables ComputeMae(const ResidualField& targets,
                     const ResidualField& predictions) {
  if (targets.num_steps() != predictions.num_steps() ||
      targets.sensors() != predictions.sensors() ||
      targets.component_dim() != predictions.component_dim()) {
    throw InputError("targets and predictions have different layouts");
  }
  const int steps = targets.num_steps();
  const int sensors = targets.num_sensors();
  std::vector<double> node_sum(sensors, 0.0);
  std::vector<double> time_sum(steps, 0.0);
  MaeTables mae;
  mae.node_count.assign(sensors, 0);
  mae.time_count.assign(steps, 0);
  for (int t = 1; t <= steps; ++t) {
    for (int s = 0; s < sensors; ++s) {
      if (!targets.available(t, s) || !predictions.available(t, s)) continue;
      const auto y = targets.at(t, s);
      const auto y_hat = predictions.at(t, s);
      double err = 0.0;
      for (std::size_t c = 0; c < y.size(); ++c) err += std::fabs(y[c] - y_hat[c]);
      err /= static_cast<double>(y.size());
      node_sum[s] += err;
      time_sum[t - 1] += err;
      ++mae.node_count[s];
      ++mae.time_count[t - 1];
    }
  }
  for (int s = 0; s < sensors; ++s) {
    mae.node_mae.push_back(mae.node_count[s] > 0
                               ? std::optional(node_sum[s] / mae.node_count[s])
                               : std::nullopt);
  }
  for (int t = 0; t < steps; ++t) {
    mae.time_mae.push_back(mae.time_count[t] > 0
                               ? std::optional(time_sum[t] / mae.time_count[t])
                               : std::nullopt);
  }
  return mae;
}

AnalysisReport AnalyzeResiduals(const ResidualField& residuals,
                                const std::vector<GraphSnapshot>& snapshots,
                                const AnalysisConfig& config) {
  Stage("config", [&] { config.Validate(); });
  AnalysisReport report;
  report.config = config;
  report.sensors = residuals.sensors();

  const MultiplexGraph graph =
      PrepareGraph(residuals, snapshots, config, &report.centering_warnings);
  report.graph = {graph.num_steps(),
                  graph.num_sensors(),
                  graph.num_nodes(),
                  graph.num_spatial_edges(),
                  graph.num_temporal_edges(),
                  graph.dropped_spatial_edges(),
                  graph.temporal_weight(),
                  graph.spatial_norm(),
                  graph.temporal_norm()};

  report.assumptions = Stage("validate", [&] {
    return ValidateAssumptions(graph, config.median_iqr_fraction);
  });

  Stage("global", [&] {
    for (double lambda : config.lambdas) {
      report.global_tests.push_back(WhitenessTest(graph, lambda, config.alpha));
    }
  });

  const int width = config.window_width > 0
                        ? config.window_width
                        : std::max(2, graph.num_steps() / 10);
  const auto windows = TileWindows(graph.num_steps(), width);
  Stage("scores", [&] {
    for (double lambda : config.lambdas) {
      report.node_scores.push_back(ComputeNodeScores(graph, lambda));
      report.time_scores.push_back(ComputeTimeScores(graph, lambda));
      WindowScores ws;
      ws.lambda = lambda;
      ws.windows = windows;
      for (const auto& [b, e] : windows) {
        ws.results.push_back(WindowScore(graph, b, e, lambda));
      }
      report.window_scores.push_back(std::move(ws));
    }
  });

  report.spacetime_raw = Stage("spacetime", [&] {
    return ComputeSpaceTimeScores(graph, config.k, config.spacetime_lambda);
  });
  report.spacetime_smoothed = Stage("smoothing", [&] {
    return SpatioTemporalFilter(report.spacetime_raw, graph,
                                {config.iterations, config.spacetime_lambda});
  });

  report.findings = DeriveFindings(report);

  std::vector<ShortlistEntry> nodes, times, wins, cells;
  for (std::size_t i = 0; i < config.lambdas.size(); ++i) {
    const double lambda = config.lambdas[i];
    const NodeScores& ns = report.node_scores[i];
    for (std::size_t j = 0; j < ns.sensors.size(); ++j) {
      if (ns.results[j].defined()) {
        nodes.push_back({lambda, ns.sensors[j], {}, {}, ns.results[j].value});
      }
    }
    const TimeScores& ts = report.time_scores[i];
    for (std::size_t t = 0; t < ts.results.size(); ++t) {
      if (ts.results[t].defined()) {
        const int step = static_cast<int>(t) + 1;
        times.push_back({lambda, {}, step, step, ts.results[t].value});
      }
    }
    const WindowScores& ws = report.window_scores[i];
    for (std::size_t j = 0; j < ws.windows.size(); ++j) {
      if (ws.results[j].defined()) {
        wins.push_back({lambda, {}, ws.windows[j].first, ws.windows[j].second,
                        ws.results[j].value});
      }
    }
  }
  const SpaceTimeScores& sm = report.spacetime_smoothed;
  for (int t = 1; t <= sm.num_steps; ++t) {
    for (int s = 0; s < sm.num_sensors; ++s) {
      if (auto z = sm.at(t, s)) cells.push_back({sm.lambda, s, t, t, *z});
    }
  }
  const int top = config.shortlist_size;
  // Node and time families are ranked per lambda.
  for (double lambda : config.lambdas) {
    auto pick = [&](const std::vector<ShortlistEntry>& all) {
      std::vector<ShortlistEntry> subset;
      for (const auto& e : all) {
        if (e.lambda == lambda) subset.push_back(e);
      }
      return TopEntries(std::move(subset), report.sensors, top);
    };
    for (auto& e : pick(nodes)) report.top_nodes.push_back(e);
    for (auto& e : pick(times)) report.top_times.push_back(e);
    for (auto& e : pick(wins)) report.top_windows.push_back(e);
  }
  report.top_cells = TopEntries(std::move(cells), report.sensors, top);
  return report;
}

AnalysisInputs LoadInputs(const AnalysisConfig& config) {
  Stage("config", [&] { config.Validate(); });
  return Stage("load", [&]() -> AnalysisInputs {
    std::optional<ResidualField> residuals;
    std::optional<MaeTables> mae;
    if (!config.target_paths.empty()) {
      ResidualField y = LoadResiduals(config.target_paths, config.residual_format);
      ResidualField y_hat =
          LoadResiduals(config.prediction_paths, config.residual_format);
      mae = ComputeMae(y, y_hat);
      if (config.residual_paths.empty()) {
        ResidualField diff(y.num_steps(), y.component_dim(), y.sensors());
        std::vector<double> buffer(y.component_dim());
        for (int t = 1; t <= y.num_steps(); ++t) {
          for (int s = 0; s < y.num_sensors(); ++s) {
            if (!y.available(t, s) || !y_hat.available(t, s)) continue;
            for (int c = 0; c < y.component_dim(); ++c) {
              buffer[c] = y.at(t, s)[c] - y_hat.at(t, s)[c];
            }
            diff.Set(t, s, buffer);
          }
        }
        residuals = std::move(diff);
      }
    }
    if (!residuals) {
      if (config.residual_paths.empty()) {
        throw InputError("no residual input given");
      }
      residuals = LoadResiduals(config.residual_paths, config.residual_format);
    }
    if (config.edges_path.empty()) throw InputError("no edge file given");
    if (mae && mae->node_mae.size() !=
                   static_cast<std::size_t>(residuals->num_sensors())) {
      throw InputError("targets and residuals cover different sensors");
    }
    auto snapshots = LoadEdges(config.edges_path, residuals->num_steps());
    return {std::move(*residuals), std::move(snapshots), std::move(mae)};
  });
}

MultiplexGraph PrepareGraph(const ResidualField& residuals,
                            const std::vector<GraphSnapshot>& snapshots,
                            const AnalysisConfig& config,
                            std::vector<std::string>* warnings) {
  CenteringResult centered = Stage(
      "centering", [&] { return CenterResiduals(residuals, config.centering); });
  if (warnings) *warnings = centered.warnings;
  MultiplexOptions options;
  options.temporal_weight = config.temporal_weight;
  return Stage("build", [&] {
    return BuildMultiplex(snapshots, centered.residuals, options);
  });
}

std::vector<AnalysisReport> RunAnalysis(const AnalysisConfig& config) {
  AnalysisInputs inputs = LoadInputs(config);
  std::vector<AnalysisReport> reports;
  if (config.component_mode == ComponentMode::kPerComponent) {
    for (int c = 0; c < inputs.residuals.component_dim(); ++c) {
      AnalysisReport r = AnalyzeResiduals(inputs.residuals.Component(c),
                                          inputs.snapshots, config);
      r.component = c;
      r.mae = inputs.mae;
      reports.push_back(std::move(r));
    }
  } else {
    reports.push_back(
        AnalyzeResiduals(inputs.residuals, inputs.snapshots, config));
    reports.back().mae = inputs.mae;
  }
  return reports;
}

bool IsDegenerate(const AnalysisReport& report) {
  return std::none_of(
      report.global_tests.begin(), report.global_tests.end(),
      [](const WhitenessTestResult& t) { return t.statistic.defined(); });
}

json ReportToJson(const AnalysisReport& report) {
  json doc;
  doc["version"] = std::string("azana ") + std::string(kVersion);
  doc["component"] = report.component ? json(*report.component) : json(nullptr);
  doc["config"] = ConfigToJson(report.config);

  const GraphSummary& g = report.graph;
  doc["graph"] = {{"num_steps", g.num_steps},
                  {"num_sensors", g.num_sensors},
                  {"num_nodes", g.num_nodes},
                  {"num_spatial_edges", g.num_spatial_edges},
                  {"num_temporal_edges", g.num_temporal_edges},
                  {"dropped_spatial_edges", g.dropped_spatial_edges},
                  {"temporal_weight", g.temporal_weight},
                  {"spatial_norm", g.spatial_norm},
                  {"temporal_norm", g.temporal_norm}};

  json tests = json::array();
  for (const WhitenessTestResult& t : report.global_tests) {
    const StatisticResult& s = t.statistic;
    json item{{"lambda", s.lambda}, {"alpha", t.alpha}, {"gamma", t.gamma}};
    if (s.defined()) {
      item["statistic"] = s.value;
      item["p_value"] = t.p_value;
      item["reject"] = t.reject;
      item["undefined_reason"] = nullptr;
    } else {
      item["statistic"] = nullptr;
      item["p_value"] = nullptr;
      item["reject"] = nullptr;
      item["undefined_reason"] = ToString(s.undefined);
    }
    item["decomposition"] = StatisticJson(s);
    tests.push_back(std::move(item));
  }
  doc["global_tests"] = std::move(tests);

  const Findings& f = report.findings;
  auto opt_bool = [](const std::optional<bool>& b) {
    return b ? json(*b) : json(nullptr);
  };
  doc["findings"] = {{"correlation_present", opt_bool(f.correlation_present)},
                     {"spatial_correlation", opt_bool(f.spatial_correlation)},
                     {"temporal_correlation", opt_bool(f.temporal_correlation)},
                     {"dominant", f.dominant}};

  doc["shortlists"] = {
      {"nodes", ShortlistJson(report.top_nodes, report.sensors)},
      {"times", ShortlistJson(report.top_times, report.sensors)},
      {"windows", ShortlistJson(report.top_windows, report.sensors)},
      {"cells", ShortlistJson(report.top_cells, report.sensors)}};

  const AssumptionReport& a = report.assumptions;
  json components = json::array();
  for (const ComponentMedianCheck& c : a.components) {
    components.push_back({{"median", c.median},
                          {"q1", c.q1},
                          {"q3", c.q3},
                          {"flagged", c.flagged}});
  }
  doc["assumptions"] = {
      {"num_nodes", a.num_nodes},
      {"zero_residuals", a.zero_residuals},
      {"spatial_weight_min", OptionalNumber(a.spatial_weight_min)},
      {"spatial_weight_max", OptionalNumber(a.spatial_weight_max)},
      {"temporal_weight", OptionalNumber(a.temporal_weight)},
      {"weights_positive", a.weights_positive},
      {"median_iqr_fraction", a.median_iqr_fraction},
      {"components", std::move(components)},
      {"warnings", a.warnings}};
  doc["centering"] = {{"strategy", ToString(report.config.centering)},
                      {"warnings", report.centering_warnings}};
  doc["spacetime"] = {{"lambda", report.spacetime_raw.lambda},
                      {"k", report.spacetime_raw.k},
                      {"iterations", report.config.iterations},
                      {"undefined_sentinel", kUndefinedSentinel}};
  return doc;
}

std::string FormatScoreMatrix(const SpaceTimeScores& scores,
                              const std::vector<std::string>& sensors,
                              bool absolute) {
  std::ostringstream out;
  out << "t";
  for (const auto& id : sensors) out << ',' << CsvField(id);
  out << '\n';
  for (int t = 1; t <= scores.num_steps; ++t) {
    out << t;
    for (int s = 0; s < scores.num_sensors; ++s) {
      out << ',';
      if (auto z = scores.at(t, s)) {
        out << FormatDouble(absolute ? std::fabs(*z) : *z);
      } else {
        out << kUndefinedSentinel;
      }
    }
    out << '\n';
  }
  return out.str();
}

void EmitReport(const AnalysisReport& report, const std::string& output_dir) {
  Stage("emit", [&] {
    namespace fs = std::filesystem;
    const fs::path dir(output_dir);
    fs::create_directories(dir);

    WriteFile(dir / "report.json", ReportToJson(report).dump(2) + "\n");

    std::ostringstream nodes;
    nodes << "sensor,lambda,score,n_edges\n";
    for (const NodeScores& ns : report.node_scores) {
      for (std::size_t j = 0; j < ns.sensors.size(); ++j) {
        nodes << CsvField(report.sensors[ns.sensors[j]]) << ','
              << FormatDouble(ns.lambda) << ',' << ScoreCell(ns.results[j])
              << ',' << ns.results[j].n_edges() << '\n';
      }
    }
    WriteFile(dir / "node_scores.csv", nodes.str());

    std::ostringstream times;
    times << "t,lambda,score,n_edges\n";
    for (const TimeScores& ts : report.time_scores) {
      for (std::size_t t = 0; t < ts.results.size(); ++t) {
        times << t + 1 << ',' << FormatDouble(ts.lambda) << ','
              << ScoreCell(ts.results[t]) << ',' << ts.results[t].n_edges()
              << '\n';
      }
    }
    WriteFile(dir / "time_scores.csv", times.str());

    std::ostringstream wins;
    wins << "t_begin,t_end,lambda,score,n_edges\n";
    for (const WindowScores& ws : report.window_scores) {
      for (std::size_t j = 0; j < ws.windows.size(); ++j) {
        wins << ws.windows[j].first << ',' << ws.windows[j].second << ','
             << FormatDouble(ws.lambda) << ',' << ScoreCell(ws.results[j])
             << ',' << ws.results[j].n_edges() << '\n';
      }
    }
    WriteFile(dir / "window_scores.csv", wins.str());

    WriteFile(dir / "spacetime_raw.csv",
              FormatScoreMatrix(report.spacetime_raw, report.sensors));
    WriteFile(dir / "spacetime_smoothed.csv",
              FormatScoreMatrix(report.spacetime_smoothed, report.sensors));
    WriteFile(dir / "spacetime_heatmap.csv",
              FormatScoreMatrix(report.spacetime_smoothed, report.sensors,
                                /*absolute=*/true));

    if (report.mae) {
      const MaeTables& mae = *report.mae;
      std::ostringstream mn;
      mn << "sensor,mae,n\n";
      for (std::size_t s = 0; s < mae.node_mae.size(); ++s) {
        mn << CsvField(report.sensors[s]) << ','
           << (mae.node_mae[s] ? FormatDouble(*mae.node_mae[s])
                               : std::string(kUndefinedSentinel))
           << ',' << mae.node_count[s] << '\n';
      }
      WriteFile(dir / "mae_nodes.csv", mn.str());
      std::ostringstream mt;
      mt << "t,mae,n\n";
      for (std::size_t t = 0; t < mae.time_mae.size(); ++t) {
        mt << t + 1 << ','
           << (mae.time_mae[t] ? FormatDouble(*mae.time_mae[t])
                               : std::string(kUndefinedSentinel))
           << ',' << mae.time_count[t] << '\n';
      }
      WriteFile(dir / "mae_times.csv", mt.str());
    }
  });
}

void EmitReports(const std::vector<AnalysisReport>& reports,
                 const std::string& output_dir) {
  if (reports.size() == 1 && !reports.front().component) {
    EmitReport(reports.front(), output_dir);
    return;
  }
  for (const AnalysisReport& r : reports) {
    EmitReport(r, (std::filesystem::path(output_dir) /
                   ("component_" + std::to_string(r.component.value_or(0))))
                      .string());
  }
}

}  // namespace azana
