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

// Command-line front end for residual correlation analysis.
//
//   azana analyze --residuals r.csv --edges e.csv --out report/
//   azana synth --seed 0 --out data/
//   azana calibrate --trials 200 --lambda 0 --lambda 0.5 --lambda 1

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "azana/analysis.h"
#include "azana/csv_io.h"
#include "azana/error.h"
#include "azana/scores.h"
#include "azana/smoothing.h"
#include "azana/statistic.h"
#include "azana/synth.h"

namespace {

using azana::AnalysisConfig;
using nlohmann::json;

// Raw flag values; only flags given on the command line override the config
// file.
struct InputFlags {
  std::string config_path;
  std::vector<std::string> residuals;
  std::string format;
  std::string edges;
  std::vector<std::string> targets;
  std::vector<std::string> predictions;
  std::string center;
  std::string component_mode;
  std::optional<double> temporal_weight;
};

struct AnalysisFlags {
  std::vector<double> lambdas;
  std::optional<double> alpha;
  std::optional<int> k;
  std::optional<int> iters;
  std::optional<double> st_lambda;
  std::optional<int> window;
  std::optional<int> top;
  std::string out;
};

void AddInputOptions(CLI::App* cmd, InputFlags& f) {
  cmd->add_option("--config", f.config_path, "Flat JSON config file");
  cmd->add_option("--residuals", f.residuals,
                  "Residual file(s); dense format takes one file per component");
  cmd->add_option("--format", f.format, "Residual format: long | dense");
  cmd->add_option("--edges", f.edges, "Edge CSV (time,src,dst,weight,directed)");
  cmd->add_option("--targets", f.targets, "Target file(s) for MAE tables");
  cmd->add_option("--predictions", f.predictions,
                  "Prediction file(s) for MAE tables");
  cmd->add_option("--center", f.center,
                  "Centering: none | global_median | per_node_median");
  cmd->add_option("--component-mode", f.component_mode,
                  "vector | per_component");
  cmd->add_option("--temporal-weight", f.temporal_weight,
                  "Fixed temporal edge weight instead of the balanced one");
}

AnalysisConfig MakeConfig(const InputFlags& in, const AnalysisFlags& an) {
  AnalysisConfig config;
  if (!in.config_path.empty()) {
    config = azana::LoadConfigFile(in.config_path, config);
  }
  if (!in.residuals.empty()) config.residual_paths = in.residuals;
  if (!in.format.empty()) {
    auto f = azana::ParseResidualFormat(in.format);
    if (!f) throw azana::InputError("unknown residual format '" + in.format + "'");
    config.residual_format = *f;
  }
  if (!in.edges.empty()) config.edges_path = in.edges;
  if (!in.targets.empty()) config.target_paths = in.targets;
  if (!in.predictions.empty()) config.prediction_paths = in.predictions;
  if (!in.center.empty()) {
    auto c = azana::ParseCentering(in.center);
    if (!c) throw azana::InputError("unknown centering '" + in.center + "'");
    config.centering = *c;
  }
  if (!in.component_mode.empty()) {
    auto m = azana::ParseComponentMode(in.component_mode);
    if (!m) {
      throw azana::InputError("unknown component mode '" + in.component_mode + "'");
    }
    config.component_mode = *m;
  }
  if (in.temporal_weight) config.temporal_weight = in.temporal_weight;
  if (!an.lambdas.empty()) config.lambdas = an.lambdas;
  if (an.alpha) config.alpha = *an.alpha;
  if (an.k) config.k = *an.k;
  if (an.iters) config.iterations = *an.iters;
  if (an.st_lambda) config.spacetime_lambda = *an.st_lambda;
  if (an.window) config.window_width = *an.window;
  if (an.top) config.shortlist_size = *an.top;
  if (!an.out.empty()) config.output_dir = an.out;
  config.Validate();
  return config;
}

void WriteOutput(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw azana::InputError("cannot write '" + path + "'");
  out << content;
}

std::string Score(const azana::StatisticResult& r) {
  return r.defined() ? azana::FormatDouble(r.value) : "NA";
}

int RunAnalyze(const AnalysisConfig& config) {
  const auto reports = azana::RunAnalysis(config);
  azana::EmitReports(reports, config.output_dir);
  bool degenerate = false;
  for (const auto& report : reports) {
    if (report.component) std::cout << "component " << *report.component << "\n";
    for (const auto& test : report.global_tests) {
      std::cout << "  C_" << azana::FormatDouble(test.statistic.lambda) << " = "
                << Score(test.statistic);
      if (test.statistic.defined()) {
        std::cout << "  p=" << test.p_value
                  << (test.reject ? "  reject" : "  accept");
      }
      std::cout << "\n";
    }
    std::cout << "  dominant: " << report.findings.dominant << "\n";
    degenerate = degenerate || azana::IsDegenerate(report);
  }
  std::cout << "report written to " << config.output_dir << "\n";
  if (degenerate) {
    std::cerr << "error: no global statistic is defined on this graph\n";
    return 2;
  }
  return 0;
}

int RunTestGlobal(const AnalysisConfig& config) {
  const auto inputs = azana::LoadInputs(config);
  const auto graph = azana::PrepareGraph(inputs.residuals, inputs.snapshots, config);
  json out = json::array();
  bool undefined = false;
  for (double lambda : config.lambdas) {
    const auto test = azana::WhitenessTest(graph, lambda, config.alpha);
    json item{{"lambda", lambda}, {"alpha", test.alpha}, {"gamma", test.gamma}};
    if (test.statistic.defined()) {
      item["statistic"] = test.statistic.value;
      item["p_value"] = test.p_value;
      item["reject"] = test.reject;
    } else {
      item["statistic"] = nullptr;
      item["undefined_reason"] = azana::ToString(test.statistic.undefined);
      undefined = true;
    }
    out.push_back(std::move(item));
  }
  std::cout << out.dump(2) << "\n";
  return undefined ? 2 : 0;
}

int RunScoresNode(const AnalysisConfig& config, const std::string& out) {
  const auto inputs = azana::LoadInputs(config);
  const auto graph = azana::PrepareGraph(inputs.residuals, inputs.snapshots, config);
  std::string csv = "sensor,lambda,score,n_edges\n";
  for (double lambda : config.lambdas) {
    const auto scores = azana::ComputeNodeScores(graph, lambda);
    for (std::size_t i = 0; i < scores.sensors.size(); ++i) {
      csv += graph.residuals().sensors()[scores.sensors[i]] + "," +
             azana::FormatDouble(lambda) + "," + Score(scores.results[i]) + "," +
             std::to_string(scores.results[i].n_edges()) + "\n";
    }
  }
  WriteOutput(out, csv);
  return 0;
}

int RunScoresTime(const AnalysisConfig& config, const std::string& out) {
  const auto inputs = azana::LoadInputs(config);
  const auto graph = azana::PrepareGraph(inputs.residuals, inputs.snapshots, config);
  std::string csv = "t,lambda,score,n_edges\n";
  for (double lambda : config.lambdas) {
    const auto scores = azana::ComputeTimeScores(graph, lambda);
    for (std::size_t t = 0; t < scores.results.size(); ++t) {
      csv += std::to_string(t + 1) + "," + azana::FormatDouble(lambda) + "," +
             Score(scores.results[t]) + "," +
             std::to_string(scores.results[t].n_edges()) + "\n";
    }
  }
  WriteOutput(out, csv);
  return 0;
}

int RunScoresSpaceTime(const AnalysisConfig& config, const std::string& out) {
  const auto inputs = azana::LoadInputs(config);
  const auto graph = azana::PrepareGraph(inputs.residuals, inputs.snapshots, config);
  const auto raw =
      azana::ComputeSpaceTimeScores(graph, config.k, config.spacetime_lambda);
  const auto smoothed = azana::SpatioTemporalFilter(
      raw, graph, {config.iterations, config.spacetime_lambda});
  const auto& sensors = graph.residuals().sensors();
  if (out.empty()) {
    std::cout << azana::FormatScoreMatrix(smoothed, sensors);
    return 0;
  }
  std::filesystem::create_directories(out);
  WriteOutput((std::filesystem::path(out) / "spacetime_raw.csv").string(),
              azana::FormatScoreMatrix(raw, sensors));
  WriteOutput((std::filesystem::path(out) / "spacetime_smoothed.csv").string(),
              azana::FormatScoreMatrix(smoothed, sensors));
  return 0;
}

struct SynthFlags {
  std::uint64_t seed = 0;
  int steps = 400;
  int communities = 3;
  int per_community = 20;
  double p_in = 0.3;
  double p_out = 0.02;
  std::string format = "long";
  std::string out = "synthetic";
};

json RegionJson(const azana::Region& r) {
  // Zero-based generator indices; files use time t + 1 and sensor id "v".
  return {{"t_begin", r.t_begin + 1}, {"t_end", r.t_end + 1},
          {"sensor_begin", r.v_begin}, {"sensor_end", r.v_end}};
}

int RunSynth(const SynthFlags& f) {
  azana::SyntheticConfig config;
  config.num_steps = f.steps;
  config.graph = {f.communities, f.per_community, f.p_in, f.p_out};
  config.num_nodes = config.graph.num_nodes();
  config.seed = f.seed;
  if (config.num_steps != 400 || config.num_nodes != 60) {
    // Scale the default regions to the requested grid.
    auto scale = [](int x, int from, int to) {
      return static_cast<int>(static_cast<long long>(x) * to / from);
    };
    for (azana::Region* r : {&config.region_a, &config.region_b}) {
      r->t_begin = scale(r->t_begin, 400, config.num_steps);
      r->t_end = scale(r->t_end + 1, 400, config.num_steps) - 1;
      r->v_begin = scale(r->v_begin, 60, config.num_nodes);
      r->v_end = scale(r->v_end + 1, 60, config.num_nodes) - 1;
    }
  }
  const auto data = azana::GenerateSynthetic(config);
  const std::filesystem::path dir(f.out);
  std::filesystem::create_directories(dir);
  const auto format = azana::ParseResidualFormat(f.format);
  if (!format) throw azana::InputError("unknown residual format '" + f.format + "'");
  std::vector<std::string> residual_files;
  if (*format == azana::ResidualFormat::kLongCsv) {
    residual_files.push_back((dir / "residuals.csv").string());
    azana::WriteResidualsLong(data.residuals, residual_files.back());
  } else {
    residual_files =
        azana::WriteResidualsDense(data.residuals, (dir / "residuals.csv").string());
  }
  azana::WriteEdges(data.snapshots, (dir / "edges.csv").string());
  json meta{{"seed", f.seed},
            {"num_steps", config.num_steps},
            {"num_nodes", config.num_nodes},
            {"graph",
             {{"num_communities", f.communities},
              {"nodes_per_community", f.per_community},
              {"p_in", f.p_in},
              {"p_out", f.p_out},
              {"num_edges", data.graph.edges.size()}}},
            {"region_a", RegionJson(config.region_a)},
            {"region_b", RegionJson(config.region_b)},
            {"residual_format", f.format},
            {"residual_files", residual_files}};
  WriteOutput((dir / "synth.json").string(), meta.dump(2) + "\n");
  std::cout << "wrote " << config.num_steps << " x " << config.num_nodes
            << " synthetic residuals to " << dir.string() << "\n";
  return 0;
}

struct CalibrateFlags {
  std::uint64_t seed = 0;
  int trials = 200;
  int steps = 400;
  int communities = 3;
  int per_community = 20;
  double p_in = 0.3;
  double p_out = 0.02;
  std::vector<double> lambdas{0.0, 0.5, 1.0};
  double alpha = 0.05;
  std::string out;
};

int RunCalibrate(const CalibrateFlags& f) {
  const azana::CommunityGraphSpec spec{f.communities, f.per_community, f.p_in,
                                       f.p_out};
  const auto summaries =
      azana::MonteCarloNull(spec, f.steps, f.lambdas, f.trials, f.seed, f.alpha);
  json out = json::array();
  for (const auto& s : summaries) {
    out.push_back({{"lambda", s.lambda},
                   {"trials", s.trials},
                   {"alpha", s.alpha},
                   {"mean", s.mean},
                   {"std", s.stddev},
                   {"rejection_rate", s.rejection_rate},
                   {"histogram", {{"range", {-4.0, 4.0}}, {"counts", s.histogram}}}});
  }
  WriteOutput(f.out, out.dump(2) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Residual correlation analysis on space-time graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(azana::kVersion));

  InputFlags in;
  AnalysisFlags an;
  std::string out_file;

  auto add_analysis = [&](CLI::App* cmd, bool spacetime) {
    AddInputOptions(cmd, in);
    cmd->add_option("--lambda", an.lambdas, "Lambda value(s) in [0, 1]");
    cmd->add_option("--alpha", an.alpha, "Significance level");
    if (spacetime) {
      cmd->add_option("--k", an.k, "Hop radius of local subgraphs");
      cmd->add_option("--iters", an.iters, "Smoothing iterations");
      cmd->add_option("--st-lambda", an.st_lambda,
                      "Lambda of local scores and smoothing");
    }
  };

  auto* analyze = app.add_subcommand("analyze", "Full analysis with report files");
  add_analysis(analyze, true);
  analyze->add_option("--window", an.window, "Window width for window scores");
  analyze->add_option("--top", an.top, "Shortlist length");
  analyze->add_option("--out", an.out, "Output directory");

  auto* test_global = app.add_subcommand("test-global", "Global whiteness tests");
  add_analysis(test_global, false);

  auto* scores_node = app.add_subcommand("scores-node", "Per-sensor scores (CSV)");
  add_analysis(scores_node, false);
  scores_node->add_option("--out", out_file, "Output CSV (default stdout)");

  auto* scores_time = app.add_subcommand("scores-time", "Per-step scores (CSV)");
  add_analysis(scores_time, false);
  scores_time->add_option("--out", out_file, "Output CSV (default stdout)");

  auto* scores_st =
      app.add_subcommand("scores-st", "Local space-time scores and smoothing");
  add_analysis(scores_st, true);
  scores_st->add_option("--out", out_file,
                        "Output directory (default: smoothed matrix to stdout)");

  SynthFlags synth_flags;
  auto* synth = app.add_subcommand("synth", "Generate the synthetic benchmark");
  synth->add_option("--seed", synth_flags.seed, "RNG seed");
  synth->add_option("--steps", synth_flags.steps, "Number of time steps");
  synth->add_option("--communities", synth_flags.communities);
  synth->add_option("--per-community", synth_flags.per_community);
  synth->add_option("--p-in", synth_flags.p_in);
  synth->add_option("--p-out", synth_flags.p_out);
  synth->add_option("--format", synth_flags.format, "long | dense");
  synth->add_option("--out", synth_flags.out, "Output directory");

  CalibrateFlags cal;
  auto* calibrate =
      app.add_subcommand("calibrate", "Monte Carlo null calibration");
  calibrate->add_option("--seed", cal.seed, "RNG seed");
  calibrate->add_option("--trials", cal.trials, "Number of trials (>= 50)");
  calibrate->add_option("--steps", cal.steps, "Number of time steps");
  calibrate->add_option("--communities", cal.communities);
  calibrate->add_option("--per-community", cal.per_community);
  calibrate->add_option("--p-in", cal.p_in);
  calibrate->add_option("--p-out", cal.p_out);
  calibrate->add_option("--lambda", cal.lambdas, "Lambda value(s)");
  calibrate->add_option("--alpha", cal.alpha, "Significance level");
  calibrate->add_option("--out", cal.out, "Output JSON (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*synth) return RunSynth(synth_flags);
    if (*calibrate) return RunCalibrate(cal);
    const AnalysisConfig config = MakeConfig(in, an);
    if (*analyze) return RunAnalyze(config);
    if (*test_global) return RunTestGlobal(config);
    if (*scores_node) return RunScoresNode(config, out_file);
    if (*scores_time) return RunScoresTime(config, out_file);
    if (*scores_st) return RunScoresSpaceTime(config, out_file);
  } catch (const azana::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
