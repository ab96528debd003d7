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
#include <utility>
#include <vector>

#include "liecoll/potentials.hpp"

namespace liecoll {

/**
 * @brief State of one agent: position plus a three-vector algebra jet.
 *
 * In the covariant chart xi0 = g^-1 g', xi1 = g^-1 D_t g', xi2 = g^-1 D_t^2 g'.
 * In the time-derivative chart (bi-invariant metrics only) the same slots
 * hold xi, xi', xi''.
 */
struct AgentJet {
  GroupElement g;
  Vector xi0;
  Vector xi1;
  Vector xi2;
};

struct SystemState {
  double t = 0.0;
  std::vector<AgentJet> jets;
};

enum class RelativePosePolicy { kRecomputeFromG, kIntegrateOde };
enum class Formulation { kLeftInvariant, kBiInvariant };
enum class ChartDirection { kCovariantToDerivative, kDerivativeToCovariant };

struct IntegratorSettings {
  double step = 1e-3;
  RelativePosePolicy relative_pose = RelativePosePolicy::kRecomputeFromG;
  Formulation formulation = Formulation::kLeftInvariant;

  void validate() const;
};

struct JetRates {
  Vector xi0;
  Vector xi1;
  Vector xi2;
};

/// h_jr = g_j^-1 g_r keyed by the ordered pair (j, r), for every edge in both directions.
using RelativePoses = std::map<std::pair<int, int>, GroupElement>;

RelativePoses relative_poses(const LieAlgebra& algebra, const Graph& graph,
                             const std::vector<AgentJet>& jets);

/// Reduced necessary conditions for a left-invariant metric (covariant chart).
std::vector<JetRates> jet_rates_left_invariant(const Metric& metric, const Graph& graph,
                                               const PotentialField& field,
                                               const std::vector<AgentJet>& jets,
                                               const RelativePoses& relative);
std::vector<JetRates> jet_rates_left_invariant(const Metric& metric, const Graph& graph,
                                               const PotentialField& field,
                                               const SystemState& state);

/// Reduced necessary conditions for a bi-invariant metric (time-derivative chart):
/// xi''' = -[xi, xi''] + force. Throws kBiInvariantRequired otherwise.
std::vector<JetRates> jet_rates_bi_invariant(const Metric& metric, const Graph& graph,
                                             const PotentialField& field,
                                             const std::vector<AgentJet>& jets,
                                             const RelativePoses& relative);
std::vector<JetRates> jet_rates_bi_invariant(const Metric& metric, const Graph& graph,
                                             const PotentialField& field,
                                             const SystemState& state);

std::vector<AgentJet> convert_jets(const Metric& metric, ChartDirection direction,
                                   const std::vector<AgentJet>& jets);

/// Time-sampled solution on a uniform grid; jets are always in the covariant chart.
struct Trajectory {
  std::vector<SystemState> samples;
  double step = 0.0;
  /// Max |h_jk - g_j^-1 g_k| seen while integrating relative poses (0 otherwise).
  double relative_pose_drift = 0.0;

  int agent_count() const {
    return samples.empty() ? 0 : static_cast<int>(samples.front().jets.size());
  }
  double start_time() const { return samples.front().t; }
  double end_time() const { return samples.back().t; }
};

/// Number of uniform steps used to cover `duration` with nominal step `step`.
int step_count(double duration, double step);

/**
 * @brief Integrates the reduced system from `initial` (covariant chart) for `duration`.
 *
 * RKMK4: classical RK4 on the algebra jets, with every group element
 * advanced by g <- g exp(u) and stages evaluated at g_n exp(c k).
 */
Trajectory integrate_ivp(const Metric& metric, const Graph& graph, const PotentialField& field,
                         const SystemState& initial, double duration,
                         const IntegratorSettings& settings);

/// <xi2, xi0> - 1/2 <xi1, xi1>; conserved by potential-free solutions.
double first_integral(const Metric& metric, const AgentJet& jet);

/// Everything that defines the multi-agent system apart from boundary data.
struct Problem {
  Metric metric;
  Graph graph;
  PotentialField field;
  IntegratorSettings integrator;

  const LieAlgebra& algebra() const { return metric.algebra(); }
  Trajectory integrate(const SystemState& initial, double duration) const {
    return integrate_ivp(metric, graph, field, initial, duration, integrator);
  }
};

}  // namespace liecoll
