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

#ifndef AZANA_SYNTH_H_
#define AZANA_SYNTH_H_

#include <cstdint>
#include <utility>
#include <vector>

#include "azana/multiplex.h"
#include "azana/residual_field.h"

namespace azana {

// Stochastic block model with equal-size communities. Node v belongs to
// community v / nodes_per_community.
struct CommunityGraphSpec {
  int num_communities = 3;
  int nodes_per_community = 20;
  double p_in = 0.3;
  double p_out = 0.02;

  int num_nodes() const { return num_communities * nodes_per_community; }
};

struct StaticGraph {
  int num_nodes = 0;
  std::vector<std::pair<int, int>> edges;  // u < v, sorted
  std::vector<std::vector<int>> neighbors;
};

// Samples the block model, redrawing until the graph is connected.
StaticGraph SampleCommunityGraph(const CommunityGraphSpec& spec,
                                 std::uint64_t seed);

// Inclusive zero-based rectangle of time steps x nodes.
struct Region {
  int t_begin = 0;
  int t_end = 0;
  int v_begin = 0;
  int v_end = 0;

  bool Contains(int t, int v) const {
    return t >= t_begin && t <= t_end && v >= v_begin && v <= v_end;
  }
};

struct SyntheticConfig {
  int num_steps = 400;
  int num_nodes = 60;
  Region region_a{200, 399, 15, 44};  // spatial correlation
  Region region_b{100, 299, 30, 59};  // temporal correlation
  CommunityGraphSpec graph;
  std::uint64_t seed = 0;
};

// Synthetic benchmark. Internally time is zero-based (0..T-1) and so are node
// ids; the returned residual field and snapshots use time t + 1 and sensor
// ids "0".."n-1".
struct SyntheticData {
  StaticGraph graph;
  std::vector<double> noise;  // eps[t * num_nodes + v]
  std::vector<GraphSnapshot> snapshots;
  ResidualField residuals;
};

// Residuals are white noise eps outside A and B; inside A the mean of the
// neighbours' noise is added, inside B the mean of the node's own noise at
// t-1 and t+1 (a missing lag at the sequence boundary counts as zero).
SyntheticData GenerateSynthetic(const SyntheticConfig& config);

// Unit-weight undirected snapshots for times 1..num_steps.
std::vector<GraphSnapshot> StaticSnapshots(const StaticGraph& graph,
                                           int num_steps);

struct CalibrationSummary {
  double lambda = 0.5;
  int trials = 0;
  double alpha = 0.05;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double rejection_rate = 0.0;
  std::vector<double> values;
  // Counts over [-4, 4] in 16 equal bins; values outside fall in the first or
  // last bin.
  std::vector<int> histogram;
};

// Null calibration of C_lambda on a fixed block-model topology with i.i.d.
// N(0, 1) scalar residuals. Trial i draws from its own stream seeded by
// (seed, i), so results do not depend on scheduling.
std::vector<CalibrationSummary> MonteCarloNull(
    const CommunityGraphSpec& spec, int num_steps,
    const std::vector<double>& lambdas, int trials, std::uint64_t seed,
    double alpha = 0.05);

CalibrationSummary MonteCarloNull(const CommunityGraphSpec& spec,
                                  int num_steps, double lambda, int trials,
                                  std::uint64_t seed, double alpha = 0.05);

}  // namespace azana

#endif  // AZANA_SYNTH_H_
