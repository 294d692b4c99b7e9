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

#ifndef AZANA_SCORES_H_
#define AZANA_SCORES_H_

#include <optional>
#include <vector>

#include "azana/multiplex.h"
#include "azana/statistic.h"

namespace azana {

// c_lambda(v) for every sensor with at least one available residual.
struct NodeScores {
  double lambda = 0.5;
  std::vector<int> sensors;               // sensor indices, ascending
  std::vector<StatisticResult> results;   // aligned with sensors
};

// c_lambda(t) for t = 1..T; results[t - 1].
struct TimeScores {
  double lambda = 0.5;
  std::vector<StatisticResult> results;
};

// Dense (time x sensor) field of local scores. Cells that are masked or whose
// local statistic is undefined hold nullopt.
struct SpaceTimeScores {
  double lambda = 0.5;
  int k = 1;
  int num_steps = 0;
  int num_sensors = 0;
  std::vector<std::optional<double>> values;  // (t - 1) * num_sensors + s

  std::optional<double> at(int t, int sensor) const {
    return values[static_cast<std::size_t>(t - 1) * num_sensors + sensor];
  }
  std::optional<double>& at(int t, int sensor) {
    return values[static_cast<std::size_t>(t - 1) * num_sensors + sensor];
  }
};

// Space-time nodes {v_t : v in sensors, t = 1..T}.
std::vector<NodeId> NodesOfSensors(const MultiplexGraph& graph,
                                   const std::vector<int>& sensors);
// Space-time nodes {v_t : t in [t_begin, t_end]}.
std::vector<NodeId> NodesOfWindow(const MultiplexGraph& graph, int t_begin,
                                  int t_end);

// c_lambda(phi) on the edges touching any observation of the given sensors.
StatisticResult NodeSetScore(const MultiplexGraph& graph,
                             const std::vector<int>& sensors, double lambda);

// All singleton scores in one pass over the edges.
NodeScores ComputeNodeScores(const MultiplexGraph& graph, double lambda);

StatisticResult TimeScore(const MultiplexGraph& graph, int t, double lambda);

// All time-slice scores in one pass over the edges.
TimeScores ComputeTimeScores(const MultiplexGraph& graph, double lambda);

// c_lambda(omega) for omega = {t_begin, ..., t_end}.
StatisticResult WindowScore(const MultiplexGraph& graph, int t_begin,
                            int t_end, double lambda);

// Local score c_lambda(t, v): the interest set is the ball of radius k - 1
// around v_t, so k = 1 uses exactly the edges incident to v_t.
StatisticResult LocalScore(const MultiplexGraph& graph, NodeId center, int k,
                           double lambda);

SpaceTimeScores ComputeSpaceTimeScores(const MultiplexGraph& graph, int k,
                                       double lambda);

}  // namespace azana

#endif  // AZANA_SCORES_H_
