// Copyright 2026 The liecoll Authors
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

#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "liecoll/geodesics.hpp"

namespace liecoll {

/// Undirected communication graph on agents 0..s-1. Edges are stored with j < k.
class Graph {
 public:
  using Edge = std::pair<int, int>;

  Graph() = default;
  /// Throws kValidation on self-loops, duplicates or out-of-range agents.
  Graph(int agent_count, const std::vector<Edge>& edges);
  /// Graph with every pair of agents connected.
  static Graph complete(int agent_count);

  int agent_count() const { return agent_count_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& neighbors(int j) const { return neighbors_.at(static_cast<std::size_t>(j)); }
  bool connected(int j, int k) const;

 private:
  int agent_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> neighbors_;
};

enum class PotentialFamily {
  kZero,
  /// k / (x + eps)
  kInverseShifted,
  /// k * exp(-x / sigma^2)
  kGaussian,
  /// k * x. Not repulsive; only meant for checking gradients against d^2.
  kLinear,
};

const char* to_string(PotentialFamily family);

/// A scalar profile f applied to the squared distance between two agents.
struct PotentialSpec {
  PotentialFamily family = PotentialFamily::kZero;
  double gain = 0.0;
  double shape = 1.0;

  void validate() const;
  double value(double squared_distance) const;
  double derivative(double squared_distance) const;
  bool is_zero() const { return family == PotentialFamily::kZero || gain == 0.0; }
};

enum class GradientMethod { kAnalytic, kFiniteDifference };

/// Potential assignment for every edge plus the numerical settings that
/// distance and gradient evaluation need.
struct PotentialField {
  PotentialSpec uniform;
  std::map<Graph::Edge, PotentialSpec> overrides;
  GradientMethod gradient = GradientMethod::kAnalytic;
  double fd_step = 1e-5;
  GeodesicSettings geodesic;

  const PotentialSpec& for_edge(int j, int k) const;
  /// True when no edge of `graph` carries a non-zero potential.
  bool all_zero(const Graph& graph) const;
};

/// f(d(e, h)^2).
double eval_potential(const PotentialSpec& p, const Metric& metric, const GroupElement& h,
                      const GeodesicSettings& settings = {});

/// grad_1 V(e, h) = -2 f'(d^2) log_e(h), as an algebra vector.
Vector grad1_potential(const PotentialSpec& p, const Metric& metric, const GroupElement& h,
                       const GeodesicSettings& settings = {});

/// Same gradient from central differences of u -> V(exp(-u w) h) along each
/// basis direction, raised with the metric.
Vector grad1_potential_fd(const PotentialSpec& p, const Metric& metric, const GroupElement& h,
                          double step, const GeodesicSettings& settings = {});

/**
 * @brief Forcing term of agent j: minus the summed gradients over its neighbors.
 *
 * `relative` must hold h_jr = g_j^-1 g_r for exactly the neighbors r of j.
 */
Vector agent_force(const Graph& graph, const PotentialField& field, const Metric& metric, int j,
                   const std::map<int, GroupElement>& relative);

}  // namespace liecoll
