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

#include <optional>
#include <vector>

#include "liecoll/dynamics.hpp"

namespace liecoll {

/**
 * @brief J = 1/2 sum_j int ( |xi1_j|^2 + sum_{r in N_j} V_jr ) dt on the trajectory grid.
 *
 * Composite Simpson; with an odd number of intervals the last three use the
 * 3/8 rule. Every edge enters twice in the neighbor sums, so each edge
 * contributes int V dt once in total.
 */
double evaluate_J(const Problem& problem, const Trajectory& traj);

/// Node values of one agent at uniform times, with optional endpoint velocities.
struct DiscreteAgentPath {
  std::vector<GroupElement> nodes;
  std::optional<Vector> start_velocity;
  std::optional<Vector> end_velocity;
};

struct DiscretePath {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<DiscreteAgentPath> agents;

  int segments() const {
    return agents.empty() ? 0 : static_cast<int>(agents.front().nodes.size()) - 1;
  }
  double dt() const { return (t1 - t0) / segments(); }
  /// Checks N >= 4, equal node counts, conformance, and logs between neighbors.
  void validate(const LieAlgebra& algebra) const;
};

/**
 * @brief Samples `traj` at N + 1 uniform times.
 *
 * Grid times are taken directly; off-grid times use the geodesic
 * g_i exp(theta log(g_i^-1 g_{i+1})) between neighbors. Endpoint velocities
 * come from the stored xi0.
 */
DiscretePath discretize(const LieAlgebra& algebra, const Trajectory& traj, int segments);

/**
 * @brief Body velocity on segment k, (log(g_k^-1 g_{k+1}))/dt, for k = -1..N.
 *
 * k = -1 and k = N use ghost nodes g_{-1}, g_{N+1} placed so that the
 * central difference at the endpoint reproduces the endpoint velocity.
 */
Vector segment_velocity(const LieAlgebra& algebra, const DiscreteAgentPath& path, double dt, int k);

/// Covariant acceleration at node k: (xi_k - xi_{k-1})/dt + nabla(xibar, xibar).
/// Without endpoint velocities the end values are linearly extrapolated.
Vector node_acceleration(const Metric& metric, const DiscreteAgentPath& path, double dt, int k);

/// Trapezoid weight of node k (1/2 at both ends).
double node_weight(int segments, int k);

/// sum_{r in N_j} V_jr at node k.
double node_potential(const Problem& problem, const DiscretePath& path, int j, int k);

/// Trapezoid discretization of the same functional as evaluate_J.
double discrete_J(const Problem& problem, const DiscretePath& path);

}  // namespace liecoll
