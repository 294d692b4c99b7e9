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

#include "azana/scores.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "gtest/gtest.h"

#include "azana/error.h"
#include "azana/synth.h"
#include "reference.h"

namespace azana {
namespace {

// Path a-b-c-d over three steps with hand-chosen scalar residuals.
MultiplexGraph PathGraph() {
  const std::vector<std::string> ids{"a", "b", "c", "d"};
  const double values[3][4] = {{1, 2, -1, 3}, {-1, 1, 2, 1}, {-2, -3, -1, -2}};
  ResidualField f(3, 1, ids);
  std::vector<GraphSnapshot> snaps;
  for (int t = 1; t <= 3; ++t) {
    for (int s = 0; s < 4; ++s) f.Set(t, s, values[t - 1][s]);
    snaps.push_back({t, ids,
                     {{"a", "b", 1.0, false},
                      {"b", "c", 1.0, false},
                      {"c", "d", 1.0, false}}});
  }
  return BuildMultiplex(snaps, f);
}

TEST(NodeSetScoreTest, PathMiddleNodeSpatialOnly) {
  // Edges touching b: (a,b) signs +,-,+ and (b,c) signs -,+,+. C_sp = 2.
  const auto r = NodeSetScore(PathGraph(), {1}, 1.0);
  ASSERT_TRUE(r.defined());
  EXPECT_EQ(r.c_sp, 2.0);
  EXPECT_EQ(r.w_sp_norm, 6.0);
  EXPECT_DOUBLE_EQ(r.value, 2.0 / std::sqrt(6.0));
}

TEST(NodeSetScoreTest, AllSensorsEqualsGlobal) {
  const auto g = PathGraph();
  for (double lambda : {0.0, 0.5, 1.0}) {
    EXPECT_EQ(NodeSetScore(g, {0, 1, 2, 3}, lambda).value,
              GlobalStatistic(g, lambda).value);
  }
}

TEST(NodeSetScoreTest, IsolatedSensorIsUndefined) {
  ResidualField f(1, 1, {"a", "b", "z"});
  for (int s = 0; s < 3; ++s) f.Set(1, s, 1.0);
  const auto g = BuildMultiplex({{1, {"a", "b", "z"}, {{"a", "b", 1.0, false}}}}, f);
  EXPECT_FALSE(NodeSetScore(g, {2}, 0.5).defined());
  EXPECT_FALSE(NodeSetScore(g, {}, 0.5).defined());
}

TEST(NodeScoresTest, TemporalOnlyNodeUndefinedAtLambdaOne) {
  ResidualField f(3, 1, {"a"});
  for (int t = 1; t <= 3; ++t) f.Set(t, 0, 1.0);
  std::vector<GraphSnapshot> snaps{{1, {"a"}, {}}, {2, {"a"}, {}}, {3, {"a"}, {}}};
  const auto g = BuildMultiplex(snaps, f);
  const auto scores = ComputeNodeScores(g, 1.0);
  ASSERT_EQ(scores.results.size(), 1u);
  EXPECT_FALSE(scores.results[0].defined());
  EXPECT_TRUE(ComputeNodeScores(g, 0.0).results[0].defined());
}

TEST(TimeScoresTest, SingleStepAtLambdaZeroIsUndefined) {
  ResidualField f(1, 1, {"a", "b"});
  f.Set(1, 0, 1.0);
  f.Set(1, 1, 2.0);
  const auto g = BuildMultiplex({{1, {"a", "b"}, {{"a", "b", 1.0, false}}}}, f);
  EXPECT_FALSE(TimeScore(g, 1, 0.0).defined());
  EXPECT_TRUE(TimeScore(g, 1, 1.0).defined());
}

TEST(WindowScoreTest, FullWindowAndSingleStep) {
  const auto g = PathGraph();
  for (double lambda : {0.0, 0.5, 1.0}) {
    EXPECT_EQ(WindowScore(g, 1, 3, lambda).value,
              GlobalStatistic(g, lambda).value);
    for (int t = 1; t <= 3; ++t) {
      EXPECT_EQ(WindowScore(g, t, t, lambda).value, TimeScore(g, t, lambda).value);
    }
  }
  EXPECT_THROW(WindowScore(g, 2, 1, 0.5), Error);
  EXPECT_THROW(WindowScore(g, 0, 2, 0.5), Error);
  EXPECT_THROW(WindowScore(g, 1, 4, 0.5), Error);
}

TEST(LocalScoreTest, TwoSpatialAndTwoTemporalNeighbors) {
  // Middle sensor b at t=2 of a path a-b-c over three steps, all residuals +1.
  const std::vector<std::string> ids{"a", "b", "c"};
  ResidualField f(3, 1, ids);
  std::vector<GraphSnapshot> snaps;
  for (int t = 1; t <= 3; ++t) {
    for (int s = 0; s < 3; ++s) f.Set(t, s, 1.0);
    snaps.push_back({t, ids, {{"a", "b", 1.0, false}, {"b", "c", 1.0, false}}});
  }
  MultiplexOptions options;
  options.temporal_weight = 1.0;
  const auto g = BuildMultiplex(snaps, f, options);
  const auto r = LocalScore(g, *g.node(2, 1), 1, 0.5);
  EXPECT_EQ(r.c_sp, 2.0);
  EXPECT_EQ(r.c_tm, 2.0);
  EXPECT_EQ(r.value, 2.0);
  EXPECT_EQ(ComputeSpaceTimeScores(g, 1, 0.5).at(2, 1), 2.0);
}

TEST(LocalScoreTest, IsolatedNodeIsUndefined) {
  ResidualField f(1, 1, {"a"});
  f.Set(1, 0, 1.0);
  const auto g = BuildMultiplex({{1, {"a"}, {}}}, f);
  EXPECT_FALSE(LocalScore(g, 0, 1, 0.5).defined());
  EXPECT_FALSE(ComputeSpaceTimeScores(g, 1, 0.5).at(1, 0).has_value());
  EXPECT_THROW(ComputeSpaceTimeScores(g, 0, 0.5), Error);
}

std::set<std::pair<int, std::string>> SensorCells(const MultiplexGraph& g,
                                                  const std::vector<int>& sensors,
                                                  int t_begin, int t_end) {
  std::set<std::pair<int, std::string>> cells;
  for (int t = t_begin; t <= t_end; ++t) {
    for (int s : sensors) {
      if (g.residuals().available(t, s)) cells.insert({t, g.residuals().sensors()[s]});
    }
  }
  return cells;
}

void ExpectMatches(const StatisticResult& got, const std::optional<double>& want) {
  ASSERT_EQ(got.defined(), want.has_value());
  if (want) EXPECT_NEAR(got.value, *want, 1e-12);
}

TEST(ScoresOracleTest, MatchBruteForceOnRandomInstances) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto inst = reference::RandomInstance(rng);
    const auto g = BuildMultiplex(inst.snapshots, inst.residuals);
    const auto ref = reference::Build(inst.snapshots, inst.residuals);
    const int steps = g.num_steps();
    std::vector<int> all(g.num_sensors());
    for (int s = 0; s < g.num_sensors(); ++s) all[s] = s;
    for (double lambda : {0.0, 0.5, 1.0}) {
      const auto nodes = ComputeNodeScores(g, lambda);
      for (std::size_t i = 0; i < nodes.sensors.size(); ++i) {
        const auto cells = SensorCells(g, {nodes.sensors[i]}, 1, steps);
        ExpectMatches(nodes.results[i],
                      reference::Statistic(
                          ref, [&](const auto& c) { return cells.count(c) > 0; },
                          lambda));
      }
      const auto times = ComputeTimeScores(g, lambda);
      for (int t = 1; t <= steps; ++t) {
        ExpectMatches(times.results[t - 1],
                      reference::Statistic(
                          ref, [&](const auto& c) { return c.first == t; }, lambda));
      }
      std::uniform_int_distribution<int> pick(1, steps);
      int t1 = pick(rng), t2 = pick(rng);
      if (t1 > t2) std::swap(t1, t2);
      ExpectMatches(WindowScore(g, t1, t2, lambda),
                    reference::Statistic(
                        ref,
                        [&](const auto& c) { return c.first >= t1 && c.first <= t2; },
                        lambda));
      const auto local = ComputeSpaceTimeScores(g, 1, lambda);
      for (NodeId n = 0; n < g.num_nodes(); ++n) {
        const reference::Cell center{g.time_of(n),
                                     g.residuals().sensors()[g.sensor_of(n)]};
        const auto want = reference::Statistic(
            ref, [&](const auto& c) { return c == center; }, lambda);
        const auto got = local.at(g.time_of(n), g.sensor_of(n));
        ASSERT_EQ(got.has_value(), want.has_value());
        if (want) EXPECT_NEAR(*got, *want, 1e-12);
      }
    }
  }
}

TEST(ScoresPropertyTest, SharedScansMatchPerDefinition) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = reference::RandomInstance(rng);
    const auto g = BuildMultiplex(inst.snapshots, inst.residuals);
    for (double lambda : {0.0, 0.5, 1.0}) {
      const auto nodes = ComputeNodeScores(g, lambda);
      for (std::size_t i = 0; i < nodes.sensors.size(); ++i) {
        const auto direct = NodeSetScore(g, {nodes.sensors[i]}, lambda);
        EXPECT_EQ(nodes.results[i].value, direct.value);
        EXPECT_EQ(nodes.results[i].undefined, direct.undefined);
      }
      const auto times = ComputeTimeScores(g, lambda);
      for (int t = 1; t <= g.num_steps(); ++t) {
        EXPECT_EQ(times.results[t - 1].value, TimeScore(g, t, lambda).value);
      }
      for (int k = 1; k <= 3; ++k) {
        const auto local = ComputeSpaceTimeScores(g, k, lambda);
        for (NodeId n = 0; n < g.num_nodes(); ++n) {
          const auto direct = LocalScore(g, n, k, lambda);
          const auto got = local.at(g.time_of(n), g.sensor_of(n));
          ASSERT_EQ(got.has_value(), direct.defined());
          if (got) EXPECT_EQ(*got, direct.value);
        }
      }
    }
  }
}

TEST(ScoresPropertyTest, SubgraphContainment) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = reference::RandomInstance(rng);
    const auto g = BuildMultiplex(inst.snapshots, inst.residuals);
    std::vector<int> small, large;
    std::bernoulli_distribution coin(0.5);
    for (int s = 0; s < g.num_sensors(); ++s) {
      if (coin(rng)) {
        large.push_back(s);
        if (coin(rng)) small.push_back(s);
      }
    }
    const auto a = InducedEdgeSubgraph(g, NodesOfSensors(g, small)).edges;
    const auto b = InducedEdgeSubgraph(g, NodesOfSensors(g, large)).edges;
    EXPECT_TRUE(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  }
}

TEST(ScoresNullTest, PooledMeansNearZero) {
  const CommunityGraphSpec spec;
  const auto graph = SampleCommunityGraph(spec, 1);
  const int steps = 50;
  const int trials = 20;
  const auto snaps = StaticSnapshots(graph, steps);
  std::vector<std::string> ids;
  for (int v = 0; v < graph.num_nodes; ++v) ids.push_back(std::to_string(v));
  std::mt19937_64 rng(99);
  std::normal_distribution<double> normal;
  double node_sum = 0.0, time_sum = 0.0;
  std::vector<double> local;
  for (int i = 0; i < trials; ++i) {
    ResidualField f(steps, 1, ids);
    for (int t = 1; t <= steps; ++t) {
      for (int v = 0; v < graph.num_nodes; ++v) f.Set(t, v, normal(rng));
    }
    const auto g = BuildMultiplex(snaps, f);
    for (const auto& r : ComputeNodeScores(g, 0.5).results) node_sum += r.value;
    for (int t = 2; t < steps; ++t) time_sum += TimeScore(g, t, 0.0).value;
    const auto st = ComputeSpaceTimeScores(g, 1, 0.5);
    for (const auto& v : st.values) {
      if (v) local.push_back(*v);
    }
  }
  const double n_nodes = graph.num_nodes * trials;
  EXPECT_LE(std::fabs(node_sum / n_nodes), 3.0 / std::sqrt(n_nodes));
  const double n_times = (steps - 2) * trials;
  EXPECT_LE(std::fabs(time_sum / n_times), 3.0 / std::sqrt(n_times));
  double mean = 0.0;
  for (double x : local) mean += x;
  mean /= local.size();
  double var = 0.0;
  for (double x : local) var += (x - mean) * (x - mean);
  const double sd = std::sqrt(var / (local.size() - 1));
  EXPECT_GE(mean, -0.3);
  EXPECT_LE(mean, 0.3);
  EXPECT_GE(sd, 0.7);
  EXPECT_LE(sd, 1.3);
}

TEST(ScoresNullTest, DisjointWindowsAreUncorrelated) {
  const auto graph = SampleCommunityGraph(CommunityGraphSpec{}, 2);
  const int steps = 40;
  const auto snaps = StaticSnapshots(graph, steps);
  std::vector<std::string> ids;
  for (int v = 0; v < graph.num_nodes; ++v) ids.push_back(std::to_string(v));
  ResidualField base(steps, 1, ids);
  for (int t = 1; t <= steps; ++t) {
    for (int v = 0; v < graph.num_nodes; ++v) base.Set(t, v, 1.0);
  }
  const auto g0 = BuildMultiplex(snaps, base);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  std::vector<double> xs, ys;
  for (int i = 0; i < 200; ++i) {
    ResidualField f(steps, 1, ids);
    for (int t = 1; t <= steps; ++t) {
      for (int v = 0; v < graph.num_nodes; ++v) f.Set(t, v, normal(rng));
    }
    const auto g = g0.WithResiduals(f);
    xs.push_back(WindowScore(g, 1, 10, 0.5).value);
    ys.push_back(WindowScore(g, 21, 30, 0.5).value);
  }
  double mx = 0, my = 0;
  for (int i = 0; i < 200; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= 200;
  my /= 200;
  double sxy = 0, sxx = 0, syy = 0;
  for (int i = 0; i < 200; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  EXPECT_LE(std::fabs(sxy / std::sqrt(sxx * syy)), 0.1);
}

}  // namespace
}  // namespace azana
