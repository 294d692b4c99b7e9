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

#ifndef AZANA_ANALYSIS_H_
#define AZANA_ANALYSIS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "azana/csv_io.h"
#include "azana/multiplex.h"
#include "azana/residual_field.h"
#include "azana/scores.h"
#include "azana/statistic.h"

namespace azana {

inline constexpr std::string_view kVersion = "1.0.0";

// Written into score files for masked or undefined cells.
inline constexpr std::string_view kUndefinedSentinel = "NA";

enum class ComponentMode { kVector, kPerComponent };

std::optional<Centering> ParseCentering(std::string_view name);
std::string_view ToString(Centering centering);
std::optional<ComponentMode> ParseComponentMode(std::string_view name);
std::string_view ToString(ComponentMode mode);

struct AnalysisConfig {
  std::vector<double> lambdas{0.0, 0.5, 1.0};
  double alpha = 0.05;
  int k = 1;
  int iterations = 5;
  double spacetime_lambda = 0.5;
  Centering centering = Centering::kNone;
  ComponentMode component_mode = ComponentMode::kVector;

  std::vector<std::string> residual_paths;
  ResidualFormat residual_format = ResidualFormat::kLongCsv;
  std::string edges_path;
  // Optional targets and predictions in the residual format. With both given
  // the report carries MAE tables, and residuals default to their difference.
  std::vector<std::string> target_paths;
  std::vector<std::string> prediction_paths;
  std::string output_dir = "azana_report";

  int shortlist_size = 10;
  int window_width = 0;  // 0 picks max(2, T / 10)
  double median_iqr_fraction = 0.1;
  std::optional<double> temporal_weight;

  // Throws InputError naming the first invalid field.
  void Validate() const;
};

// Flat JSON document; keys absent from `json` keep their value from `base`.
// Unknown keys are rejected.
AnalysisConfig ConfigFromJson(const nlohmann::json& json,
                              AnalysisConfig base = {});
AnalysisConfig LoadConfigFile(const std::string& path,
                              AnalysisConfig base = {});
// Echo of the analysis settings and inputs. The output directory is left out
// so that reports written to different places stay identical.
nlohmann::json ConfigToJson(const AnalysisConfig& config);

struct WindowScores {
  double lambda = 0.5;
  std::vector<std::pair<int, int>> windows;  // inclusive [t_begin, t_end]
  std::vector<StatisticResult> results;
};

// Consecutive non-overlapping windows of the given width covering 1..T; a
// trailing remainder shorter than two steps is merged into the last window.
std::vector<std::pair<int, int>> TileWindows(int num_steps, int width);

struct MaeTables {
  std::vector<std::optional<double>> node_mae;  // per sensor index
  std::vector<std::size_t> node_count;
  std::vector<std::optional<double>> time_mae;  // per step, index t - 1
  std::vector<std::size_t> time_count;
};

// Mean absolute error over cells available in both fields, averaged across
// components.
MaeTables ComputeMae(const ResidualField& targets,
                     const ResidualField& predictions);

struct Findings {
  // Per-lambda rejection decisions; nullopt when the lambda was not evaluated
  // or its statistic is undefined.
  std::optional<bool> correlation_present;   // lambda = 1/2
  std::optional<bool> spatial_correlation;   // lambda = 1
  std::optional<bool> temporal_correlation;  // lambda = 0
  // "temporal" when |C_0| > |C_1| and C_0 rejects, "spatial" for the mirror
  // case, "none" otherwise, "unknown" without both endpoint statistics.
  std::string dominant = "unknown";
};

struct ShortlistEntry {
  double lambda = 0.5;
  std::optional<int> sensor;
  std::optional<int> t_begin;
  std::optional<int> t_end;
  double score = 0.0;
};

struct GraphSummary {
  int num_steps = 0;
  int num_sensors = 0;
  int num_nodes = 0;
  std::size_t num_spatial_edges = 0;
  std::size_t num_temporal_edges = 0;
  std::size_t dropped_spatial_edges = 0;
  double temporal_weight = 1.0;
  double spatial_norm = 0.0;
  double temporal_norm = 0.0;
};

struct AnalysisReport {
  AnalysisConfig config;
  std::optional<int> component;
  std::vector<std::string> sensors;
  GraphSummary graph;
  std::vector<std::string> centering_warnings;
  AssumptionReport assumptions;
  std::vector<WhitenessTestResult> global_tests;  // aligned with lambdas
  std::vector<NodeScores> node_scores;
  std::vector<TimeScores> time_scores;
  std::vector<WindowScores> window_scores;
  SpaceTimeScores spacetime_raw;
  SpaceTimeScores spacetime_smoothed;
  Findings findings;
  std::vector<ShortlistEntry> top_nodes;
  std::vector<ShortlistEntry> top_times;
  std::vector<ShortlistEntry> top_windows;
  std::vector<ShortlistEntry> top_cells;
  std::optional<MaeTables> mae;
};

struct AnalysisInputs {
  ResidualField residuals;
  std::vector<GraphSnapshot> snapshots;
  std::optional<MaeTables> mae;
};

// Loads residuals (or targets minus predictions), edges and MAE tables.
AnalysisInputs LoadInputs(const AnalysisConfig& config);

// Centers the residuals per config and builds the space-time graph.
MultiplexGraph PrepareGraph(const ResidualField& residuals,
                            const std::vector<GraphSnapshot>& snapshots,
                            const AnalysisConfig& config,
                            std::vector<std::string>* warnings = nullptr);

// Runs the pipeline on in-memory data: centering, assumption checks, graph
// construction, global tests, node, time and window scores, local scores and
// smoothing. Errors carry the failing stage.
AnalysisReport AnalyzeResiduals(const ResidualField& residuals,
                                const std::vector<GraphSnapshot>& snapshots,
                                const AnalysisConfig& config);

// Loads inputs from config paths and analyzes them. Per-component mode yields
// one report per residual component.
std::vector<AnalysisReport> RunAnalysis(const AnalysisConfig& config);

// True when no requested global statistic is defined, e.g. for a graph
// without edges. Such reports are still emitted.
bool IsDegenerate(const AnalysisReport& report);

nlohmann::json ReportToJson(const AnalysisReport& report);

// Writes report.json, node_scores.csv, time_scores.csv, window_scores.csv,
// spacetime_raw.csv, spacetime_smoothed.csv, spacetime_heatmap.csv and, when
// available, mae_nodes.csv and mae_times.csv.
void EmitReport(const AnalysisReport& report, const std::string& output_dir);

// Single report into output_dir, several into output_dir/component_<i>.
void EmitReports(const std::vector<AnalysisReport>& reports,
                 const std::string& output_dir);

// Dense (time x sensor) matrix with a header row of sensor ids.
std::string FormatScoreMatrix(const SpaceTimeScores& scores,
                              const std::vector<std::string>& sensors,
                              bool absolute = false);

}  // namespace azana

#endif  // AZANA_ANALYSIS_H_
