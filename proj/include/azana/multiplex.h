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

#ifndef AZANA_MULTIPLEX_H_
#define AZANA_MULTIPLEX_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "azana/residual_field.h"

namespace azana {

struct SnapshotEdge {
  std::string src;
  std::string dst;
  double weight = 1.0;
  bool directed = false;
};

// Sensor graph at one time step. Every edge endpoint must be listed in nodes.
struct GraphSnapshot {
  int time = 1;
  std::vector<std::string> nodes;
  std::vector<SnapshotEdge> edges;
};

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

enum class EdgeKind : std::uint8_t { kSpatial, kTemporal };

// Undirected edge of the space-time graph, stored with u < v.
struct Edge {
  NodeId u;
  NodeId v;
  EdgeKind kind;
  double weight;
};

struct Incidence {
  NodeId neighbor;
  EdgeId edge;
};

struct MultiplexOptions {
  // Overrides the balanced temporal weight when set.
  std::optional<double> temporal_weight;
};

// Static space-time graph stacking the per-step sensor graphs and linking
// each available (t, v) to (t+1, v). Nodes are the available residual cells,
// ordered by time and then by sensor index. Spatial edges come first in
// edges(), followed by temporal edges. Immutable after construction.
class MultiplexGraph {
 public:
  int num_steps() const { return residuals_.num_steps(); }
  int num_sensors() const { return residuals_.num_sensors(); }
  const ResidualField& residuals() const { return residuals_; }

  int num_nodes() const { return static_cast<int>(node_time_.size()); }
  std::optional<NodeId> node(int t, int sensor) const;
  int time_of(NodeId n) const { return node_time_[n]; }
  int sensor_of(NodeId n) const { return node_sensor_[n]; }
  std::span<const double> residual(NodeId n) const {
    return residuals_.at(node_time_[n], node_sensor_[n]);
  }
  // Node ids at time t form the contiguous range [first, last).
  std::pair<NodeId, NodeId> nodes_at(int t) const {
    return {step_offsets_[t - 1], step_offsets_[t]};
  }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  int edge_sign(EdgeId e) const { return signs_[e]; }
  std::size_t num_spatial_edges() const { return num_spatial_; }
  std::size_t num_temporal_edges() const { return edges_.size() - num_spatial_; }
  std::span<const Incidence> incident(NodeId n) const {
    return {incidence_.data() + incidence_offsets_[n],
            incidence_.data() + incidence_offsets_[n + 1]};
  }

  double temporal_weight() const { return temporal_weight_; }
  // W_sp = sum of squared spatial weights; W_tm = |E_tm| * w_tm^2.
  double spatial_norm() const { return spatial_norm_; }
  double temporal_norm() const { return temporal_norm_; }
  bool temporal_only() const { return num_spatial_ == 0; }
  bool spatial_only() const { return num_temporal_edges() == 0; }

  // Snapshot edges dropped because an endpoint had no available residual.
  std::size_t dropped_spatial_edges() const { return dropped_spatial_edges_; }

  // Same topology and mask with different residual values.
  MultiplexGraph WithResiduals(ResidualField residuals) const;

 private:
  friend MultiplexGraph BuildMultiplex(const std::vector<GraphSnapshot>&,
                                       const ResidualField&,
                                       const MultiplexOptions&);
  explicit MultiplexGraph(ResidualField residuals)
      : residuals_(std::move(residuals)) {}

  void ComputeSigns();

  ResidualField residuals_;
  std::vector<int> node_time_;
  std::vector<int> node_sensor_;
  std::vector<NodeId> cell_to_node_;  // -1 when masked
  std::vector<NodeId> step_offsets_;
  std::vector<Edge> edges_;
  std::vector<std::int8_t> signs_;
  std::size_t num_spatial_ = 0;
  std::vector<std::size_t> incidence_offsets_;
  std::vector<Incidence> incidence_;
  double temporal_weight_ = 1.0;
  double spatial_norm_ = 0.0;
  double temporal_norm_ = 0.0;
  std::size_t dropped_spatial_edges_ = 0;
};

// Builds g* from snapshots for times 1..T (one per step) and the residual
// field. Masked cells are not nodes. Directed edges (u,v) and (v,u) at the same
// step merge into one spatial edge whose weight is the sum of both.
MultiplexGraph BuildMultiplex(const std::vector<GraphSnapshot>& snapshots,
                              const ResidualField& residuals,
                              const MultiplexOptions& options = {});

// Weight w_tm with |E_tm| * w_tm^2 == W_sp. Returns 1 when W_sp is zero and
// nullopt when there are no temporal edges.
std::optional<double> ComputeTemporalWeight(double spatial_norm,
                                            std::size_t num_temporal_edges);

// Nodes within hop distance k of center (center included), counting spatial
// and temporal edges alike. Sorted by node id.
std::vector<NodeId> KHopNeighborhood(const MultiplexGraph& graph,
                                     NodeId center, int k);

// Edges of g* with at least one endpoint among the interest nodes.
struct Subgraph {
  std::vector<NodeId> interest_nodes;  // sorted, unique
  std::vector<EdgeId> edges;           // sorted
};

Subgraph InducedEdgeSubgraph(const MultiplexGraph& graph,
                             std::vector<NodeId> interest_nodes);

struct ComponentMedianCheck {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  bool flagged = false;  // |median| > fraction * IQR
};

struct AssumptionReport {
  std::size_t zero_residuals = 0;
  std::size_t num_nodes = 0;
  std::optional<double> spatial_weight_min;
  std::optional<double> spatial_weight_max;
  std::optional<double> temporal_weight;
  bool weights_positive = true;
  double median_iqr_fraction = 0.1;
  std::vector<ComponentMedianCheck> components;
  std::vector<std::string> warnings;
};

// Diagnostic only: never throws on violated assumptions.
AssumptionReport ValidateAssumptions(const MultiplexGraph& graph,
                                     double median_iqr_fraction = 0.1);

}  // namespace azana

#endif  // AZANA_MULTIPLEX_H_
