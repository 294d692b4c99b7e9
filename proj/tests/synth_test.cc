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

#include <cmath>
#include <queue>

#include "gtest/gtest.h"

#include "azana/error.h"

namespace azana {
namespace {

double Eps(const SyntheticData& d, int t, int v) {
  return d.noise[static_cast<std::size_t>(t) * d.graph.num_nodes + v];
}

double R(const SyntheticData& d, int t, int v) {
  return d.residuals.at(t + 1, v)[0];
}

TEST(SampleCommunityGraphTest, ConnectedAndDeterministic) {
  const CommunityGraphSpec spec;
  const auto g = SampleCommunityGraph(spec, 3);
  EXPECT_EQ(g.num_nodes, 60);
  std::vector<bool> seen(g.num_nodes, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int reached = 1;
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int v : g.neighbors[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        q.push(v);
      }
    }
  }
  EXPECT_EQ(reached, g.num_nodes);
  EXPECT_EQ(SampleCommunityGraph(spec, 3).edges, g.edges);
  EXPECT_NE(SampleCommunityGraph(spec, 4).edges, g.edges);
  EXPECT_THROW(SampleCommunityGraph({3, 20, 0.01, 0.02}, 1), Error);
}

TEST(GenerateSyntheticTest, RegionFormulas) {
  SyntheticConfig config;
  config.seed = 9;
  const auto d = GenerateSynthetic(config);
  const auto& a = config.region_a;
  const auto& b = config.region_b;
  const int steps = config.num_steps;
  for (int t = 0; t < steps; ++t) {
    for (int v = 0; v < config.num_nodes; ++v) {
      double want = Eps(d, t, v);
      if (a.Contains(t, v)) {
        const auto& nb = d.graph.neighbors[v];
        double sum = 0.0;
        for (int u : nb) sum += Eps(d, t, u);
        if (!nb.empty()) want += sum / nb.size();
      }
      if (b.Contains(t, v)) {
        const double prev = t > 0 ? Eps(d, t - 1, v) : 0.0;
        const double next = t + 1 < steps ? Eps(d, t + 1, v) : 0.0;
        want += (prev + next) / 2.0;
      }
      ASSERT_NEAR(R(d, t, v), want, 1e-12) << "t=" << t << " v=" << v;
      if (!a.Contains(t, v) && !b.Contains(t, v)) {
        ASSERT_EQ(R(d, t, v), Eps(d, t, v));
      }
    }
  }
  EXPECT_EQ(R(d, 0, 0), Eps(d, 0, 0));
}

TEST(GenerateSyntheticTest, SeedDeterminism) {
  SyntheticConfig config;
  config.num_steps = 50;
  config.region_a = {10, 49, 15, 44};
  config.region_b = {5, 30, 30, 59};
  config.seed = 1;
  const auto x = GenerateSynthetic(config);
  const auto y = GenerateSynthetic(config);
  EXPECT_EQ(x.residuals, y.residuals);
  config.seed = 2;
  EXPECT_NE(GenerateSynthetic(config).residuals, x.residuals);
}

TEST(GenerateSyntheticTest, RejectsRegionOutsideGrid) {
  SyntheticConfig config;
  config.num_steps = 100;
  EXPECT_THROW(GenerateSynthetic(config), Error);
}

TEST(StaticSnapshotsTest, UnitWeightUndirected) {
  StaticGraph g{3, {{0, 1}, {1, 2}}, {{1}, {0, 2}, {1}}};
  const auto snaps = StaticSnapshots(g, 2);
  ASSERT_EQ(snaps.size(), 2u);
  EXPECT_EQ(snaps[1].time, 2);
  ASSERT_EQ(snaps[0].edges.size(), 2u);
  EXPECT_EQ(snaps[0].edges[0].weight, 1.0);
  EXPECT_FALSE(snaps[0].edges[0].directed);
}

TEST(MonteCarloNullTest, SummaryIsConsistent) {
  const auto s = MonteCarloNull(CommunityGraphSpec{}, 40, 0.5, 50, 4);
  EXPECT_EQ(s.trials, 50);
  ASSERT_EQ(s.values.size(), 50u);
  int total = 0;
  for (int c : s.histogram) total += c;
  EXPECT_EQ(total, 50);
  double mean = 0.0;
  for (double x : s.values) mean += x;
  EXPECT_NEAR(s.mean, mean / 50, 1e-12);
  EXPECT_LE(std::fabs(s.mean), 0.6);
  const auto again = MonteCarloNull(CommunityGraphSpec{}, 40, 0.5, 50, 4);
  EXPECT_EQ(again.values, s.values);
  EXPECT_THROW(MonteCarloNull(CommunityGraphSpec{}, 40, 0.5, 49, 4), Error);
}

}  // namespace
}  // namespace azana
