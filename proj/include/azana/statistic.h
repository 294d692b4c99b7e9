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

#ifndef AZANA_STATISTIC_H_
#define AZANA_STATISTIC_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "azana/exact_sum.h"
#include "azana/multiplex.h"
#include "azana/residual_field.h"

namespace azana {

// Sign of the inner product of two residual vectors: -1, 0 or +1. The sign is
// that of the exact dot product, so it is unaffected by positive rescaling of
// either argument.
int EdgeSign(std::span<const double> a, std::span<const double> b);

enum class UndefinedReason : std::uint8_t {
  kNone,
  kEmptySubgraph,    // no edges at all
  kZeroDenominator,  // lambda^2 W_sp + (1-lambda)^2 W_tm == 0
};

std::string_view ToString(UndefinedReason reason);

struct StatisticResult {
  double value = 0.0;
  double c_sp = 0.0;       // sum of w_e * sign over spatial edges
  double c_tm = 0.0;       // sum of w_tm * sign over temporal edges
  double w_sp_norm = 0.0;  // sum of w_e^2 over spatial edges
  double w_tm_norm = 0.0;  // |E_tm| * w_tm^2
  std::size_t n_spatial_edges = 0;
  std::size_t n_temporal_edges = 0;
  double lambda = 0.5;
  UndefinedReason undefined = UndefinedReason::kNone;

  bool defined() const { return undefined == UndefinedReason::kNone; }
  std::size_t n_edges() const { return n_spatial_edges + n_temporal_edges; }
};

// Running sums for C_lambda over an edge multiset. Sums are exact, so tallies
// may be filled and merged in any order with identical results.
class EdgeTally {
 public:
  void AddSpatial(double weight, int sign);
  void AddTemporal(int sign);
  void AddEdge(const MultiplexGraph& graph, EdgeId e);
  void Merge(const EdgeTally& other);

  StatisticResult Finish(double lambda, double temporal_weight) const;

 private:
  ExactSum c_sp_;
  ExactSum w_sp_;
  std::int64_t tm_sign_sum_ = 0;
  std::size_t n_spatial_ = 0;
  std::size_t n_temporal_ = 0;
};

// C_lambda on a subgraph, using the graph-wide temporal weight. Throws for
// lambda outside [0, 1]; degenerate subgraphs yield an undefined result.
StatisticResult ComputeStatistic(const MultiplexGraph& graph,
                                 const Subgraph& subgraph, double lambda);

// C_lambda on the whole graph.
StatisticResult GlobalStatistic(const MultiplexGraph& graph, double lambda);

double NormalCdf(double x);
// P(|Z| >= |x|) for standard Gaussian Z.
double TwoSidedPValue(double x);
// gamma with P(|Z| >= gamma) = alpha.
double CriticalValue(double alpha);

struct WhitenessTestResult {
  StatisticResult statistic;
  double alpha = 0.05;
  double gamma = 0.0;
  double p_value = 1.0;  // meaningful only when statistic.defined()
  bool reject = false;
};

WhitenessTestResult WhitenessTest(const MultiplexGraph& graph, double lambda,
                                  double alpha);

enum class Centering { kNone, kGlobalMedian, kPerNodeMedian };

struct CenteringResult {
  ResidualField residuals;
  // offsets[unit][component]; one unit for the global strategy, one per sensor
  // for the per-node strategy, none for kNone.
  std::vector<std::vector<double>> offsets;
  std::vector<std::string> warnings;
};

// Subtracts per-component medians computed over available entries.
CenteringResult CenterResiduals(const ResidualField& residuals,
                                Centering strategy);

}  // namespace azana

#endif  // AZANA_STATISTIC_H_
