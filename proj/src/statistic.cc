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

#include "azana/statistic.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/math/special_functions/erf.hpp>

#include "azana/error.h"

namespace azana {
namespace {

void CheckLambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InputError("lambda must lie in [0, 1], got " + std::to_string(lambda));
  }
}

int Sign(double x) { return (x > 0.0) - (x < 0.0); }

double Median(std::vector<double>& values) {
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + mid, values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + mid);
  return lower + (upper - lower) / 2.0;
}

}  // namespace

int EdgeSign(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw InputError("residual vectors of different or zero length");
  }
  if (a.size() == 1) return Sign(a[0]) * Sign(b[0]);
  // Products split into rounded value and exact error term.
  ExactSum dot;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double p = a[i] * b[i];
    dot.Add(p);
    dot.Add(std::fma(a[i], b[i], -p));
  }
  return Sign(dot.Value());
}

std::string_view ToString(UndefinedReason reason) {
  switch (reason) {
    case UndefinedReason::kNone:
      return "none";
    case UndefinedReason::kEmptySubgraph:
      return "empty subgraph";
    case UndefinedReason::kZeroDenominator:
      return "zero denominator";
  }
  return "unknown";
}

void EdgeTally::AddSpatial(double weight, int sign) {
  if (sign != 0) c_sp_.Add(sign * weight);
  w_sp_.Add(weight * weight);
  ++n_spatial_;
}

void EdgeTally::AddTemporal(int sign) {
  tm_sign_sum_ += sign;
  ++n_temporal_;
}

void EdgeTally::AddEdge(const MultiplexGraph& graph, EdgeId e) {
  const Edge& edge = graph.edge(e);
  if (edge.kind == EdgeKind::kSpatial) {
    AddSpatial(edge.weight, graph.edge_sign(e));
  } else {
    AddTemporal(graph.edge_sign(e));
  }
}

void EdgeTally::Merge(const EdgeTally& other) {
  c_sp_.Add(other.c_sp_);
  w_sp_.Add(other.w_sp_);
  tm_sign_sum_ += other.tm_sign_sum_;
  n_spatial_ += other.n_spatial_;
  n_temporal_ += other.n_temporal_;
}

StatisticResult EdgeTally::Finish(double lambda, double temporal_weight) const {
  CheckLambda(lambda);
  StatisticResult r;
  r.lambda = lambda;
  r.n_spatial_edges = n_spatial_;
  r.n_temporal_edges = n_temporal_;
  r.c_sp = c_sp_.Value();
  r.w_sp_norm = w_sp_.Value();
  if (n_temporal_ > 0) {
    r.c_tm = temporal_weight * static_cast<double>(tm_sign_sum_);
    r.w_tm_norm =
        static_cast<double>(n_temporal_) * temporal_weight * temporal_weight;
  }
  if (n_spatial_ + n_temporal_ == 0) {
    r.undefined = UndefinedReason::kEmptySubgraph;
    return r;
  }
  const double mu = 1.0 - lambda;
  const double denom2 = lambda * lambda * r.w_sp_norm + mu * mu * r.w_tm_norm;
  if (!(denom2 > 0.0)) {
    r.undefined = UndefinedReason::kZeroDenominator;
    return r;
  }
  r.value = (lambda * r.c_sp + mu * r.c_tm) / std::sqrt(denom2);
  return r;
}

StatisticResult ComputeStatistic(const MultiplexGraph& graph,
                                 const Subgraph& subgraph, double lambda) {
  CheckLambda(lambda);
  EdgeTally tally;
  for (EdgeId e : subgraph.edges) tally.AddEdge(graph, e);
  return tally.Finish(lambda, graph.temporal_weight());
}

StatisticResult GlobalStatistic(const MultiplexGraph& graph, double lambda) {
  CheckLambda(lambda);
  EdgeTally tally;
  for (std::size_t e = 0; e < graph.edges().size(); ++e) {
    tally.AddEdge(graph, static_cast<EdgeId>(e));
  }
  return tally.Finish(lambda, graph.temporal_weight());
}

double NormalCdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double TwoSidedPValue(double x) {
  return std::erfc(std::fabs(x) / std::sqrt(2.0));
}

double CriticalValue(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("alpha must lie in (0, 1), got " + std::to_string(alpha));
  }
  return std::sqrt(2.0) * boost::math::erfc_inv(alpha);
}

WhitenessTestResult WhitenessTest(const MultiplexGraph& graph, double lambda,
                                  double alpha) {
  WhitenessTestResult result;
  result.alpha = alpha;
  result.gamma = CriticalValue(alpha);
  result.statistic = GlobalStatistic(graph, lambda);
  if (!result.statistic.defined()) {
    result.p_value = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  result.p_value = TwoSidedPValue(result.statistic.value);
  result.reject = result.p_value <= alpha;
  return result;
}

CenteringResult CenterResiduals(const ResidualField& residuals,
                                Centering strategy) {
  CenteringResult out{residuals, {}, {}};
  if (strategy == Centering::kNone) return out;

  const int dim = residuals.component_dim();
  const int steps = residuals.num_steps();
  if (dim > 1) {
    out.warnings.push_back(
        "components centered independently; if the median condition still "
        "fails, analyze each component separately");
  }

  auto center_unit = [&](int sensor_begin, int sensor_end) {
    std::vector<double> offsets(dim, 0.0);
    std::vector<double> sample;
    for (int c = 0; c < dim; ++c) {
      sample.clear();
      for (int t = 1; t <= steps; ++t) {
        for (int s = sensor_begin; s < sensor_end; ++s) {
          if (residuals.available(t, s)) sample.push_back(residuals.at(t, s)[c]);
        }
      }
      if (sample.empty()) return std::optional<std::vector<double>>{};
      offsets[c] = Median(sample);
    }
    std::vector<double> shifted(dim);
    for (int t = 1; t <= steps; ++t) {
      for (int s = sensor_begin; s < sensor_end; ++s) {
        if (!residuals.available(t, s)) continue;
        const auto r = residuals.at(t, s);
        for (int c = 0; c < dim; ++c) shifted[c] = r[c] - offsets[c];
        out.residuals.Set(t, s, shifted);
      }
    }
    return std::optional<std::vector<double>>{offsets};
  };

  if (strategy == Centering::kGlobalMedian) {
    auto offsets = center_unit(0, residuals.num_sensors());
    if (!offsets) throw InputError("no available residuals to center");
    out.offsets.push_back(*offsets);
  } else {
    for (int s = 0; s < residuals.num_sensors(); ++s) {
      auto offsets = center_unit(s, s + 1);
      if (!offsets) {
        out.warnings.push_back("sensor '" + residuals.sensors()[s] +
                               "' has no available residuals; left uncentered");
        out.offsets.emplace_back(dim, 0.0);
      } else {
        out.offsets.push_back(*offsets);
      }
    }
  }
  return out;
}

}  // namespace azana
