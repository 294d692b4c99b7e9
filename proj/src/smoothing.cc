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

#include "azana/smoothing.h"

#include "azana/error.h"

namespace azana {

SpaceTimeScores SpatioTemporalFilter(const SpaceTimeScores& raw,
                                     const MultiplexGraph& graph,
                                     const FilterConfig& config) {
  if (config.iterations < 1) {
    throw InputError("filter iterations must be >= 1");
  }
  if (!(config.lambda >= 0.0 && config.lambda <= 1.0)) {
    throw InputError("filter lambda must lie in [0, 1]");
  }
  if (raw.num_steps != graph.num_steps() ||
      raw.num_sensors != graph.num_sensors() ||
      raw.values.size() != static_cast<std::size_t>(raw.num_steps) *
                               static_cast<std::size_t>(raw.num_sensors)) {
    throw InputError("score field does not match the graph layout");
  }
  const double lambda = config.lambda;
  SpaceTimeScores prev = raw;
  SpaceTimeScores next = raw;
  for (int l = 0; l < config.iterations; ++l) {
#pragma omp parallel for schedule(static)
    for (NodeId n = 0; n < graph.num_nodes(); ++n) {
      const int t = graph.time_of(n);
      const int s = graph.sensor_of(n);
      const std::optional<double> self = prev.at(t, s);
      if (!self) continue;

      // Means are taken over differences from the cell's own value, which
      // keeps a constant field exactly fixed.
      double num = 0.0;
      double den = 0.0;
      for (const Incidence& inc : graph.incident(n)) {
        const Edge& edge = graph.edge(inc.edge);
        if (edge.kind != EdgeKind::kSpatial) continue;
        const auto z = prev.at(t, graph.sensor_of(inc.neighbor));
        if (!z) continue;
        num += (*z - *self) * edge.weight;
        den += edge.weight;
      }
      const double d_sp = den > 0.0 ? num / den : 0.0;

      double lag_sum = 0.0;
      int lags = 0;
      for (int lag = 2; lag >= 1; --lag) {
        if (t - lag < 1) continue;
        if (const auto z = prev.at(t - lag, s)) {
          lag_sum += *z - *self;
          ++lags;
        }
      }
      const double d_tm = lags > 0 ? lag_sum / lags : 0.0;

      next.at(t, s) = *self + (lambda * d_sp + (1.0 - lambda) * d_tm) / 2.0;
    }
    std::swap(prev, next);
  }
  return prev;
}

}  // namespace azana
