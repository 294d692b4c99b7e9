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

#include "azana/synth.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "azana/error.h"
#include "azana/statistic.h"

namespace azana {
namespace {

constexpr int kMaxGraphDraws = 1000;
constexpr int kHistogramBins = 16;
constexpr double kHistogramRange = 4.0;

std::mt19937_64 MakeEngine(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

bool IsConnected(const StaticGraph& g) {
  if (g.num_nodes == 0) return true;
  std::vector<bool> seen(g.num_nodes, false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : g.neighbors[v]) {
      if (!seen[u]) {
        seen[u] = true;
        ++count;
        stack.push_back(u);
      }
    }
  }
  return count == g.num_nodes;
}

void CheckSpec(const CommunityGraphSpec& spec) {
  if (spec.num_communities < 1 || spec.nodes_per_community < 1) {
    throw InputError("community graph needs at least one node per community");
  }
  if (!(spec.p_in > spec.p_out && spec.p_out > 0.0 && spec.p_in <= 1.0)) {
    throw InputError("community graph needs 1 >= p_in > p_out > 0");
  }
}

void CheckRegion(const Region& r, int steps, int nodes, const char* name) {
  if (r.t_begin < 0 || r.t_end >= steps || r.t_begin > r.t_end ||
      r.v_begin < 0 || r.v_end >= nodes || r.v_begin > r.v_end) {
    throw InputError(std::string("region ") + name + " lies outside the grid");
  }
}

}  // namespace

StaticGraph SampleCommunityGraph(const CommunityGraphSpec& spec,
                                 std::uint64_t seed) {
  CheckSpec(spec);
  std::mt19937_64 engine = MakeEngine(seed, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int n = spec.num_nodes();
  for (int draw = 0; draw < kMaxGraphDraws; ++draw) {
    StaticGraph g;
    g.num_nodes = n;
    g.neighbors.assign(n, {});
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        const bool same = u / spec.nodes_per_community ==
                          v / spec.nodes_per_community;
        if (unit(engine) < (same ? spec.p_in : spec.p_out)) {
          g.edges.emplace_back(u, v);
          g.neighbors[u].push_back(v);
          g.neighbors[v].push_back(u);
        }
      }
    }
    if (IsConnected(g)) return g;
  }
  throw InputError("could not draw a connected community graph");
}

std::vector<GraphSnapshot> StaticSnapshots(const StaticGraph& graph,
                                           int num_steps) {
  GraphSnapshot base;
  for (int v = 0; v < graph.num_nodes; ++v) {
    base.nodes.push_back(std::to_string(v));
  }
  for (const auto& [u, v] : graph.edges) {
    base.edges.push_back({std::to_string(u), std::to_string(v), 1.0, false});
  }
  std::vector<GraphSnapshot> snapshots(num_steps, base);
  for (int t = 0; t < num_steps; ++t) snapshots[t].time = t + 1;
  return snapshots;
}

SyntheticData GenerateSynthetic(const SyntheticConfig& config) {
  const int steps = config.num_steps;
  const int nodes = config.num_nodes;
  if (steps < 1) throw InputError("synthetic data needs T >= 1");
  if (nodes != config.graph.num_nodes()) {
    throw InputError("node count does not match the community graph");
  }
  CheckRegion(config.region_a, steps, nodes, "A");
  CheckRegion(config.region_b, steps, nodes, "B");

  StaticGraph graph = SampleCommunityGraph(config.graph, config.seed);

  std::mt19937_64 engine = MakeEngine(config.seed, 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> eps(static_cast<std::size_t>(steps) * nodes);
  for (double& e : eps) e = normal(engine);
  auto noise = [&](int t, int v) {
    return eps[static_cast<std::size_t>(t) * nodes + v];
  };

  std::vector<std::string> sensors;
  for (int v = 0; v < nodes; ++v) sensors.push_back(std::to_string(v));
  ResidualField residuals(steps, 1, sensors);
  for (int t = 0; t < steps; ++t) {
    for (int v = 0; v < nodes; ++v) {
      double r = noise(t, v);
      if (config.region_a.Contains(t, v)) {
        const auto& nbrs = graph.neighbors[v];
        double sum = 0.0;
        for (int u : nbrs) sum += noise(t, u);
        if (!nbrs.empty()) r += sum / static_cast<double>(nbrs.size());
      }
      if (config.region_b.Contains(t, v)) {
        double lag_lead = 0.0;
        if (t > 0) lag_lead += noise(t - 1, v);
        if (t + 1 < steps) lag_lead += noise(t + 1, v);
        r += lag_lead / 2.0;
      }
      residuals.Set(t + 1, v, r);
    }
  }

  SyntheticData data{std::move(graph), std::move(eps), {}, std::move(residuals)};
  data.snapshots = StaticSnapshots(data.graph, steps);
  return data;
}

std::vector<CalibrationSummary> MonteCarloNull(
    const CommunityGraphSpec& spec, int num_steps,
    const std::vector<double>& lambdas, int trials, std::uint64_t seed,
    double alpha) {
  if (trials < 50) throw InputError("calibration needs at least 50 trials");
  if (num_steps < 1) throw InputError("calibration needs T >= 1");
  CriticalValue(alpha);  // rejects alpha outside (0, 1)

  const StaticGraph topology = SampleCommunityGraph(spec, seed);
  const int nodes = topology.num_nodes;
  std::vector<std::string> sensors;
  for (int v = 0; v < nodes; ++v) sensors.push_back(std::to_string(v));
  ResidualField ones(num_steps, 1, sensors);
  for (int t = 1; t <= num_steps; ++t) {
    for (int v = 0; v < nodes; ++v) ones.Set(t, v, 1.0);
  }
  const MultiplexGraph base =
      BuildMultiplex(StaticSnapshots(topology, num_steps), ones);

  std::vector<std::vector<double>> values(
      lambdas.size(), std::vector<double>(trials, 0.0));
  std::vector<std::vector<bool>> rejected(
      lambdas.size(), std::vector<bool>(trials, false));

  for (int trial = 0; trial < trials; ++trial) {
    std::mt19937_64 engine = MakeEngine(seed, 2, trial);
    std::normal_distribution<double> normal(0.0, 1.0);
    ResidualField field(num_steps, 1, sensors);
    for (int t = 1; t <= num_steps; ++t) {
      for (int v = 0; v < nodes; ++v) field.Set(t, v, normal(engine));
    }
    const MultiplexGraph graph = base.WithResiduals(std::move(field));
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const WhitenessTestResult test = WhitenessTest(graph, lambdas[i], alpha);
      if (!test.statistic.defined()) {
        throw Error(ErrorKind::kDegenerate, "calibrate",
                    "statistic undefined for lambda " +
                        std::to_string(lambdas[i]) + ": " +
                        std::string(ToString(test.statistic.undefined)));
      }
      values[i][trial] = test.statistic.value;
      rejected[i][trial] = test.reject;
    }
  }

  std::vector<CalibrationSummary> out;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    CalibrationSummary s;
    s.lambda = lambdas[i];
    s.trials = trials;
    s.alpha = alpha;
    s.values = values[i];
    const double n = static_cast<double>(trials);
    s.mean = std::accumulate(s.values.begin(), s.values.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : s.values) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / (n - 1.0));
    s.rejection_rate =
        static_cast<double>(std::count(rejected[i].begin(), rejected[i].end(),
                                       true)) /
        n;
    s.histogram.assign(kHistogramBins, 0);
    for (double x : s.values) {
      const double pos = (x + kHistogramRange) / (2.0 * kHistogramRange) *
                         kHistogramBins;
      const int bin = std::clamp(static_cast<int>(std::floor(pos)), 0,
                                 kHistogramBins - 1);
      ++s.histogram[bin];
    }
    out.push_back(std::move(s));
  }
  return out;
}

CalibrationSummary MonteCarloNull(const CommunityGraphSpec& spec,
                                  int num_steps, double lambda, int trials,
                                  std::uint64_t seed, double alpha) {
  return MonteCarloNull(spec, num_steps, std::vector<double>{lambda}, trials,
                        seed, alpha)
      .front();
}

}  // namespace azana
