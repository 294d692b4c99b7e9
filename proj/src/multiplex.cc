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

#include "azana/multiplex.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>
#include <unordered_set>
#include <utility>

#include "azana/error.h"
#include "azana/exact_sum.h"
#include "azana/statistic.h"

namespace azana {
namespace {

std::string EdgeName(int t, const SnapshotEdge& e) {
  return "edge (" + e.src + (e.directed ? " -> " : " -- ") + e.dst +
         ") at t=" + std::to_string(t);
}

// Accumulates the snapshot rows touching one unordered sensor pair.
struct PairState {
  std::optional<double> undirected;
  std::optional<double> forward;   // first -> second of the ordered key
  std::optional<double> backward;  // second -> first
};

double MergedWeight(const PairState& p) {
  if (p.undirected) return *p.undirected;
  return p.forward.value_or(0.0) + p.backward.value_or(0.0);
}

}  // namespace

std::optional<double> ComputeTemporalWeight(double spatial_norm,
                                            std::size_t num_temporal_edges) {
  if (num_temporal_edges == 0) return std::nullopt;
  if (spatial_norm == 0.0) return 1.0;
  return std::sqrt(spatial_norm / static_cast<double>(num_temporal_edges));
}

std::optional<NodeId> MultiplexGraph::node(int t, int sensor) const {
  if (t < 1 || t > num_steps() || sensor < 0 || sensor >= num_sensors()) {
    return std::nullopt;
  }
  const NodeId n =
      cell_to_node_[static_cast<std::size_t>(t - 1) * num_sensors() + sensor];
  if (n < 0) return std::nullopt;
  return n;
}

void MultiplexGraph::ComputeSigns() {
  signs_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    signs_[e] = static_cast<std::int8_t>(
        EdgeSign(residual(edges_[e].u), residual(edges_[e].v)));
  }
}

MultiplexGraph MultiplexGraph::WithResiduals(ResidualField residuals) const {
  if (residuals.num_steps() != num_steps() ||
      residuals.sensors() != residuals_.sensors() ||
      residuals.component_dim() != residuals_.component_dim()) {
    throw InputError("replacement residuals do not match the graph layout");
  }
  for (int t = 1; t <= num_steps(); ++t) {
    for (int s = 0; s < num_sensors(); ++s) {
      if (residuals.available(t, s) != residuals_.available(t, s)) {
        throw InputError("replacement residuals have a different mask");
      }
    }
  }
  MultiplexGraph out = *this;
  out.residuals_ = std::move(residuals);
  out.ComputeSigns();
  return out;
}

MultiplexGraph BuildMultiplex(const std::vector<GraphSnapshot>& snapshots,
                              const ResidualField& residuals,
                              const MultiplexOptions& options) {
  const int num_steps = residuals.num_steps();
  const int num_sensors = residuals.num_sensors();

  std::vector<const GraphSnapshot*> by_time(num_steps, nullptr);
  for (const GraphSnapshot& snap : snapshots) {
    if (snap.time < 1 || snap.time > num_steps) {
      throw InputError("snapshot time " + std::to_string(snap.time) +
                       " outside 1.." + std::to_string(num_steps));
    }
    if (by_time[snap.time - 1] != nullptr) {
      throw InputError("duplicate snapshot for t=" + std::to_string(snap.time));
    }
    by_time[snap.time - 1] = &snap;
  }
  for (int t = 1; t <= num_steps; ++t) {
    if (by_time[t - 1] == nullptr) {
      throw InputError("missing snapshot for t=" + std::to_string(t));
    }
  }

  MultiplexGraph g(residuals);

  g.cell_to_node_.assign(static_cast<std::size_t>(num_steps) * num_sensors, -1);
  g.step_offsets_.assign(num_steps + 1, 0);
  for (int t = 1; t <= num_steps; ++t) {
    g.step_offsets_[t - 1] = static_cast<NodeId>(g.node_time_.size());
    for (int s = 0; s < num_sensors; ++s) {
      if (!residuals.available(t, s)) continue;
      g.cell_to_node_[static_cast<std::size_t>(t - 1) * num_sensors + s] =
          static_cast<NodeId>(g.node_time_.size());
      g.node_time_.push_back(t);
      g.node_sensor_.push_back(s);
    }
  }
  g.step_offsets_[num_steps] = static_cast<NodeId>(g.node_time_.size());

  // Spatial edges.
  for (int t = 1; t <= num_steps; ++t) {
    const GraphSnapshot& snap = *by_time[t - 1];
    std::unordered_set<std::string> nodes(snap.nodes.begin(), snap.nodes.end());
    std::map<std::pair<std::string, std::string>, PairState> pairs;
    for (const SnapshotEdge& e : snap.edges) {
      if (e.src == e.dst) {
        throw InputError("self-loop " + EdgeName(t, e));
      }
      if (!std::isfinite(e.weight) || e.weight <= 0.0) {
        throw InputError("weight " + std::to_string(e.weight) + " of " +
                         EdgeName(t, e) + " is not positive and finite");
      }
      if (!nodes.contains(e.src) || !nodes.contains(e.dst)) {
        throw InputError(EdgeName(t, e) + " has an endpoint outside V_t");
      }
      const bool ordered = e.src < e.dst;
      PairState& p = pairs[ordered ? std::make_pair(e.src, e.dst)
                                   : std::make_pair(e.dst, e.src)];
      if (!e.directed) {
        if (p.undirected || p.forward || p.backward) {
          throw InputError("duplicate or conflicting " + EdgeName(t, e));
        }
        p.undirected = e.weight;
      } else {
        std::optional<double>& slot = ordered ? p.forward : p.backward;
        if (p.undirected || slot) {
          throw InputError("duplicate or conflicting " + EdgeName(t, e));
        }
        slot = e.weight;
      }
    }
    for (const auto& [key, state] : pairs) {
      const auto a = residuals.FindSensor(key.first);
      const auto b = residuals.FindSensor(key.second);
      std::optional<NodeId> u = a ? g.node(t, *a) : std::nullopt;
      std::optional<NodeId> v = b ? g.node(t, *b) : std::nullopt;
      if (!u || !v) {
        ++g.dropped_spatial_edges_;
        continue;
      }
      if (*u > *v) std::swap(u, v);
      g.edges_.push_back({*u, *v, EdgeKind::kSpatial, MergedWeight(state)});
    }
  }
  std::sort(g.edges_.begin(), g.edges_.end(),
            [](const Edge& x, const Edge& y) {
              return std::tie(x.u, x.v) < std::tie(y.u, y.v);
            });
  g.num_spatial_ = g.edges_.size();

  ExactSum w_sp;
  for (const Edge& e : g.edges_) w_sp.Add(e.weight * e.weight);
  g.spatial_norm_ = w_sp.Value();

  // Temporal edges.
  for (int t = 1; t < num_steps; ++t) {
    for (int s = 0; s < num_sensors; ++s) {
      const auto a = g.node(t, s);
      const auto b = g.node(t + 1, s);
      if (a && b) g.edges_.push_back({*a, *b, EdgeKind::kTemporal, 0.0});
    }
  }
  const std::size_t num_temporal = g.edges_.size() - g.num_spatial_;
  if (options.temporal_weight) {
    if (!std::isfinite(*options.temporal_weight) ||
        *options.temporal_weight <= 0.0) {
      throw InputError("temporal weight must be positive and finite");
    }
    g.temporal_weight_ = *options.temporal_weight;
  } else {
    g.temporal_weight_ =
        ComputeTemporalWeight(g.spatial_norm_, num_temporal).value_or(1.0);
  }
  for (std::size_t e = g.num_spatial_; e < g.edges_.size(); ++e) {
    g.edges_[e].weight = g.temporal_weight_;
  }
  g.temporal_norm_ = static_cast<double>(num_temporal) * g.temporal_weight_ *
                     g.temporal_weight_;

  // Incidence lists in CSR form.
  const int n = g.num_nodes();
  g.incidence_offsets_.assign(n + 1, 0);
  for (const Edge& e : g.edges_) {
    ++g.incidence_offsets_[e.u + 1];
    ++g.incidence_offsets_[e.v + 1];
  }
  for (int i = 0; i < n; ++i) {
    g.incidence_offsets_[i + 1] += g.incidence_offsets_[i];
  }
  g.incidence_.resize(g.incidence_offsets_[n]);
  std::vector<std::size_t> cursor(g.incidence_offsets_.begin(),
                                  g.incidence_offsets_.end() - 1);
  for (std::size_t e = 0; e < g.edges_.size(); ++e) {
    const Edge& edge = g.edges_[e];
    g.incidence_[cursor[edge.u]++] = {edge.v, static_cast<EdgeId>(e)};
    g.incidence_[cursor[edge.v]++] = {edge.u, static_cast<EdgeId>(e)};
  }

  g.ComputeSigns();
  return g;
}

std::vector<NodeId> KHopNeighborhood(const MultiplexGraph& graph,
                                     NodeId center, int k) {
  if (center < 0 || center >= graph.num_nodes()) {
    throw InputError("unknown node id " + std::to_string(center));
  }
  if (k < 0) throw InputError("hop radius must be non-negative");
  std::vector<NodeId> ball{center};
  std::set<NodeId> seen{center};
  std::size_t frontier_begin = 0;
  for (int hop = 0; hop < k; ++hop) {
    const std::size_t frontier_end = ball.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const Incidence& inc : graph.incident(ball[i])) {
        if (seen.insert(inc.neighbor).second) ball.push_back(inc.neighbor);
      }
    }
    if (ball.size() == frontier_end) break;
    frontier_begin = frontier_end;
  }
  std::sort(ball.begin(), ball.end());
  return ball;
}

Subgraph InducedEdgeSubgraph(const MultiplexGraph& graph,
                             std::vector<NodeId> interest_nodes) {
  std::sort(interest_nodes.begin(), interest_nodes.end());
  interest_nodes.erase(
      std::unique(interest_nodes.begin(), interest_nodes.end()),
      interest_nodes.end());
  Subgraph sub;
  for (NodeId n : interest_nodes) {
    if (n < 0 || n >= graph.num_nodes()) {
      throw InputError("interest node " + std::to_string(n) +
                       " is not in the graph");
    }
    for (const Incidence& inc : graph.incident(n)) {
      // An edge inside the interest set is seen twice; keep it once.
      if (inc.neighbor < n && std::binary_search(interest_nodes.begin(),
                                                 interest_nodes.end(),
                                                 inc.neighbor)) {
        continue;
      }
      sub.edges.push_back(inc.edge);
    }
  }
  std::sort(sub.edges.begin(), sub.edges.end());
  sub.interest_nodes = std::move(interest_nodes);
  return sub;
}

namespace {

// Linear-interpolation quantile of a sorted sample.
double SortedQuantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

}  // namespace

AssumptionReport ValidateAssumptions(const MultiplexGraph& graph,
                                     double median_iqr_fraction) {
  AssumptionReport report;
  report.num_nodes = static_cast<std::size_t>(graph.num_nodes());
  report.median_iqr_fraction = median_iqr_fraction;

  for (NodeId n = 0; n < graph.num_nodes(); ++n) {
    const auto r = graph.residual(n);
    if (std::all_of(r.begin(), r.end(), [](double x) { return x == 0.0; })) {
      ++report.zero_residuals;
    }
  }
  if (report.zero_residuals > 0) {
    report.warnings.push_back(
        std::to_string(report.zero_residuals) +
        " residual vectors are exactly zero; their edges carry sign 0");
  }

  for (std::size_t e = 0; e < graph.num_spatial_edges(); ++e) {
    const double w = graph.edge(static_cast<EdgeId>(e)).weight;
    report.spatial_weight_min = std::min(report.spatial_weight_min.value_or(w), w);
    report.spatial_weight_max = std::max(report.spatial_weight_max.value_or(w), w);
    if (!(w > 0.0)) report.weights_positive = false;
  }
  if (graph.num_temporal_edges() > 0) {
    report.temporal_weight = graph.temporal_weight();
    if (!(graph.temporal_weight() > 0.0)) report.weights_positive = false;
  }
  if (!report.weights_positive) {
    report.warnings.push_back("non-positive edge weights present");
  }

  const int dim = graph.residuals().component_dim();
  std::vector<double> sample;
  sample.reserve(report.num_nodes);
  for (int c = 0; c < dim; ++c) {
    sample.clear();
    for (NodeId n = 0; n < graph.num_nodes(); ++n) {
      sample.push_back(graph.residual(n)[c]);
    }
    ComponentMedianCheck check;
    if (!sample.empty()) {
      std::sort(sample.begin(), sample.end());
      check.median = SortedQuantile(sample, 0.5);
      check.q1 = SortedQuantile(sample, 0.25);
      check.q3 = SortedQuantile(sample, 0.75);
      check.flagged =
          std::fabs(check.median) > median_iqr_fraction * (check.q3 - check.q1);
      if (check.flagged) {
        report.warnings.push_back("component " + std::to_string(c) +
                                  " median is far from zero relative to its "
                                  "IQR; consider centering");
      }
    }
    report.components.push_back(check);
  }
  return report;
}

}  // namespace azana
