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

#ifndef AZANA_SMOOTHING_H_
#define AZANA_SMOOTHING_H_

#include "azana/multiplex.h"
#include "azana/scores.h"

namespace azana {

struct FilterConfig {
  int iterations = 5;
  double lambda = 0.5;
};

// Iterated space-time smoothing of local scores. Each iteration sets
//
//   z_sp = weighted mean of z at spatial neighbours (same step)
//   z_tm = mean of z at steps t-2 and t-1 (same sensor)
//   z'   = (z + lambda * z_sp + (1 - lambda) * z_tm) / 2
//
// Undefined cells stay undefined and are skipped in every mean. When no term
// of a mean is available the cell's own previous value stands in for it.
SpaceTimeScores SpatioTemporalFilter(const SpaceTimeScores& raw,
                                     const MultiplexGraph& graph,
                                     const FilterConfig& config);

}  // namespace azana

#endif  // AZANA_SMOOTHING_H_
