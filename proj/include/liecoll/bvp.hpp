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

#include <cstdint>
#include <vector>

#include "liecoll/dynamics.hpp"

namespace liecoll {

/// Endpoint data of one agent. Velocities are body-frame: xi0(a) and xi0(b).
struct AgentBoundary {
  GroupElement start;
  GroupElement end;
  Vector start_velocity;
  Vector end_velocity;
};

struct BoundaryConditions {
  double t0 = 0.0;
  double t1 = 1.0;
  std::vector<AgentBoundary> agents;

  double duration() const { return t1 - t0; }
  /// Checks the interval, conformance, and that g_a^-1 g_b has a log.
  void validate(const LieAlgebra& algebra) const;
};

struct ShootingSettings {
  double tolerance = 1e-9;
  int max_iterations = 100;
  double damping = 1e-3;
  double jacobian_step = 1e-6;
  int multistart = 1;
  /// Noise scale for extra starts, relative to 1 + max|initial guess|.
  double multistart_noise = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Unknowns are laid out per agent as (xi1(a), xi2(a)), 2 * dim values each.
Vector hermite_initial_guess(const Metric& metric, const BoundaryConditions& bc);

/// Initial state (covariant chart) built from the boundary data and unknowns.
SystemState initial_state(const LieAlgebra& algebra, const BoundaryConditions& bc,
                          const Vector& unknowns);

/// Per agent: (log(g(b)^-1 g_b), xi0(b) - v_b).
Vector shooting_residual(const Problem& problem, const BoundaryConditions& bc,
                         const Vector& unknowns);

struct BvpReport {
  bool converged = false;
  int iterations = 0;
  int residual_evaluations = 0;
  double residual_norm = 0.0;
  double terminal_position_error = 0.0;
  double terminal_velocity_error = 0.0;
  double relative_pose_drift = 0.0;
  /// Max drift of the cubic first integral per agent; empty unless all potentials vanish.
  std::vector<double> first_integral_drift;
  int starts_tried = 0;
  int starts_converged = 0;
  int selected_start = -1;
  /// J of the selected trajectory, used to rank converged starts.
  double functional = 0.0;
};

struct BvpSolution {
  Vector unknowns;
  Trajectory trajectory;
  BvpReport report;
};

/// Raised when no start converges; carries the iterate with the smallest residual.
class BvpNoConvergence : public Error {
 public:
  BvpNoConvergence(const std::string& message, BvpSolution best)
      : Error(ErrorCode::kNoConvergence, message), best_(std::move(best)) {}
  const BvpSolution& best() const { return best_; }

 private:
  BvpSolution best_;
};

/**
 * @brief Levenberg-Marquardt shooting on the initial jets.
 *
 * Start 0 is the Hermite guess; further starts add Gaussian noise to it.
 * Among converged starts the one with the lowest J is returned.
 */
BvpSolution solve_bvp(const Problem& problem, const BoundaryConditions& bc,
                      const ShootingSettings& settings);
BvpSolution solve_bvp(const Problem& problem, const BoundaryConditions& bc,
                      const ShootingSettings& settings, const Vector& initial_guess);

}  // namespace liecoll
