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

#include "azana/error.h"

namespace azana {
namespace {

void CheckWindow(const MultiplexGraph& graph, int t_begin, int t_end) {
  if (t_begin < 1 || t_end > graph.num_steps() || t_begin > t_end) {
    throw InputError("time window [" + std::to_string(t_begin) + ", " +
                     std::to_string(t_end) + "] outside 1.." +
                     std::to_string(graph.num_steps()));
  }
}

// Tallies edges incident to the radius-(k-1) ball around center. The stamp
// vector marks ball membership and must be all different from `stamp` on
// entry.
EdgeTally LocalTally(const MultiplexGraph& graph, NodeId center, int k,
                     std::vector<int>& marks, int stamp,
                     std::vector<NodeId>& ball) {
  ball.assign(1, center);
  marks[center] = stamp;
  std::size_t frontier_begin = 0;
  for (int hop = 0; hop + 1 < k; ++hop) {
    const std::size_t frontier_end = ball.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const Incidence& inc : graph.incident(ball[i])) {
        if (marks[inc.neighbor] != stamp) {
          marks[inc.neighbor] = stamp;
          ball.push_back(inc.neighbor);
        }
      }
    }
    if (ball.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }
  EdgeTally tally;
  for (NodeId n : ball) {
    for (const Incidence& inc : graph.incident(n)) {
      if (marks[inc.neighbor] == stamp && inc.neighbor < n) continue;
      tally.AddEdge(graph, inc.edge);
    }
  }
  return tally;
}

}  // namespace

std::vector<NodeId> NodesOfSensors(const MultiplexGraph& graph,
                                   const std::vector<int>& sensors) {
  std::vector<NodeId> nodes;
  for (int s : sensors) {
    if (s < 0 || s >= graph.num_sensors()) {
      throw InputError("unknown sensor index " + std::to_string(s));
    }
    for (int t = 1; t <= graph.num_steps(); ++t) {
      if (auto n = graph.node(t, s)) nodes.push_back(*n);
    }
  }
  return nodes;
}

std::vector<NodeId> NodesOfWindow(const MultiplexGraph& graph, int t_begin,
                                  int t_end) {
  CheckWindow(graph, t_begin, t_end);
  std::vector<NodeId> nodes;
  const NodeId first = graph.nodes_at(t_begin).first;
  const NodeId last = graph.nodes_at(t_end).second;
  for (NodeId n = first; n < last; ++n) nodes.push_back(n);
  return nodes;
}

StatisticResult NodeSetScore(const MultiplexGraph& graph,
                             const std::vector<int>& sensors, double lambda) {
  return ComputeStatistic(
      graph, InducedEdgeSubgraph(graph, NodesOfSensors(graph, sensors)),
      lambda);
}

NodeScores ComputeNodeScores(const MultiplexGraph& graph, double lambda) {
  std::vector<EdgeTally> tallies(graph.num_sensors());
  std::vector<bool> observed(graph.num_sensors(), false);
  for (NodeId n = 0; n < graph.num_nodes(); ++n) {
    observed[graph.sensor_of(n)] = true;
  }
  // Spatial edges join distinct sensors and count once for each; temporal
  // edges join two observations of the same sensor and count once.
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const Edge& edge = graph.edge(static_cast<EdgeId>(e));
    const int su = graph.sensor_of(edge.u);
    const int sv = graph.sensor_of(edge.v);
    tallies[su].AddEdge(graph, static_cast<EdgeId>(e));
    if (sv != su) tallies[sv].AddEdge(graph, static_cast<EdgeId>(e));
  }
  NodeScores scores;
  scores.lambda = lambda;
  for (int s = 0; s < graph.num_sensors(); ++s) {
    if (!observed[s]) continue;
    scores.sensors.push_back(s);
    scores.results.push_back(tallies[s].Finish(lambda, graph.temporal_weight()));
  }
  return scores;
}

StatisticResult TimeScore(const MultiplexGraph& graph, int t, double lambda) {
  return WindowScore(graph, t, t, lambda);
}

TimeScores ComputeTimeScores(const MultiplexGraph& graph, double lambda) {
  const int steps = graph.num_steps();
  // spatial[t - 1]: edges within step t; temporal[t - 1]: edges t -> t + 1.
  std::vector<EdgeTally> spatial(steps);
  std::vector<EdgeTally> temporal(steps);
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    const Edge& edge = graph.edge(static_cast<EdgeId>(e));
    const int t = graph.time_of(edge.u);
    (edge.kind == EdgeKind::kSpatial ? spatial : temporal)[t - 1].AddEdge(
        graph, static_cast<EdgeId>(e));
  }
  TimeScores scores;
  scores.lambda = lambda;
  scores.results.reserve(steps);
  for (int t = 1; t <= steps; ++t) {
    EdgeTally tally = spatial[t - 1];
    if (t > 1) tally.Merge(temporal[t - 2]);
    tally.Merge(temporal[t - 1]);
    scores.results.push_back(tally.Finish(lambda, graph.temporal_weight()));
  }
  return scores;
}

StatisticResult WindowScore(const MultiplexGraph& graph, int t_begin,
                            int t_end, double lambda) {
  return ComputeStatistic(
      graph, InducedEdgeSubgraph(graph, NodesOfWindow(graph, t_begin, t_end)),
      lambda);
}

StatisticResult LocalScore(const MultiplexGraph& graph, NodeId center, int k,
                           double lambda) {
  if (k < 1) throw InputError("hop radius k must be >= 1");
  return ComputeStatistic(
      graph, InducedEdgeSubgraph(graph, KHopNeighborhood(graph, center, k - 1)),
      lambda);
}

SpaceTimeScores ComputeSpaceTimeScores(const MultiplexGraph& graph, int k,
                                       double lambda) {
  if (k < 1) throw InputError("hop radius k must be >= 1");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InputError("lambda must lie in [0, 1]");
  }
  SpaceTimeScores scores;
  scores.lambda = lambda;
  scores.k = k;
  scores.num_steps = graph.num_steps();
  scores.num_sensors = graph.num_sensors();
  scores.values.assign(
      static_cast<std::size_t>(scores.num_steps) * scores.num_sensors,
      std::nullopt);

  const int n = graph.num_nodes();
#pragma omp parallel
  {
    std::vector<int> marks(n, -1);
    std::vector<NodeId> ball;
#pragma omp for schedule(static)
    for (NodeId center = 0; center < n; ++center) {
      const StatisticResult r =
          LocalTally(graph, center, k, marks, center, ball)
              .Finish(lambda, graph.temporal_weight());
      if (r.defined()) {
        scores.at(graph.time_of(center), graph.sensor_of(center)) = r.value;
      }
    }
  }
  return scores;
}

}  // namespace azana
