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

#include "liecoll/bvp.hpp"
#include "liecoll/functional.hpp"

namespace liecoll {

/// Norm of the unreduced Euler-Lagrange residual per agent at interior sample times.
struct ResidualReport {
  double h_fd = 0.0;
  std::vector<double> times;
  /// norms[j][i] belongs to agent j at times[i].
  std::vector<std::vector<double>> norms;

  double max_norm() const;
  /// Max over samples with t in [lo, hi].
  double max_norm(double lo, double hi) const;
};

/**
 * @brief Checks D_t^3 q' + R(D_t q', q')q' + sum grad_1 V = 0 from positions alone.
 *
 * xi0 comes from central differences log(g(t-h)^-1 g(t+h)) / 2h; higher
 * jets follow from xi(i+1) = d/dt xi(i) + nabla_xi0 xi(i) with central
 * differences. The stored jets of `traj` are never read. `h_fd` must be a
 * whole multiple of the trajectory step and leave at least one sample
 * 4 h_fd away from both ends; otherwise kInsufficientSamples.
 */
ResidualReport unreduced_residual(const Problem& problem, const Trajectory& traj, double h_fd);

struct ResidualOrder {
  double coarse_step = 0.0;
  double fine_step = 0.0;
  double coarse = 0.0;
  double fine = 0.0;
  double ratio = 0.0;
  /// Estimated roundoff level of the residual at fine_step.
  double noise_floor = 0.0;
  /// False when the fine residual is too close to roundoff for the ratio to mean anything.
  bool measurable = false;
};

/// Residual at h_fd and h_fd / 2, both measured on the window valid for h_fd.
ResidualOrder residual_order(const Problem& problem, const Trajectory& traj, double h_fd);

struct OracleSettings {
  int segments = 200;
  /// Stop once discrete_gradient_norm falls below this.
  double tolerance = 1e-6;
  int max_iterations = 500;
  double fd_step = 1e-6;
  double armijo = 1e-4;
  /// Amplitude of the random perturbation used to seed the oracle in run modes.
  double perturbation = 1e-2;

  void validate() const;
};

/**
 * @brief Central-difference gradient of discrete_J in the node charts g_k exp(u).
 *
 * One covector row per interior node; the result holds one (N-1) x dim
 * block per agent. Requires endpoint velocities on every agent.
 */
std::vector<Matrix> discrete_gradient(const Problem& problem, const DiscretePath& path, double fd_step);

/**
 * @brief Preconditioned descent direction (K^-1 (x) M^-1) applied to `gradient`.
 *
 * K is the Hessian of the flat second-difference energy over the interior
 * nodes. With it the direction approximates the displacement to the
 * nearest discrete critical point instead of scaling like dt^-3.
 */
std::vector<Matrix> sobolev_direction(const Metric& metric, const DiscretePath& path,
                                      const std::vector<Matrix>& gradient);

/// Max node-wise M-norm of the preconditioned gradient.
double discrete_gradient_norm(const Problem& problem, const DiscretePath& path, double fd_step = 1e-6);

/// Max over agents and nodes of the Riemannian distance between corresponding nodes.
double node_distance(const Metric& metric, const DiscretePath& a, const DiscretePath& b,
                     const GeodesicSettings& settings = {});

/// Moves every interior node by exp of Gaussian noise with the given amplitude.
DiscretePath perturb_interior(const LieAlgebra& algebra, const DiscretePath& path, double amplitude,
                              std::uint64_t seed);

struct OracleResult {
  DiscretePath path;
  double initial_value = 0.0;
  double value = 0.0;
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

class OracleMaxIterations : public Error {
 public:
  OracleMaxIterations(const std::string& message, OracleResult best)
      : Error(ErrorCode::kMaxIterations, message), best_(std::move(best)) {}
  const OracleResult& best() const { return best_; }

 private:
  OracleResult best_;
};

/**
 * @brief Minimizes discrete_J over the interior nodes with preconditioned,
 * Armijo-backtracked gradient descent.
 *
 * Endpoints and endpoint velocities are taken from `bc`; `init` must agree
 * with its endpoint nodes. Throws OracleMaxIterations with the last iterate
 * if the gradient norm stays above the tolerance.
 */
OracleResult oracle_minimize(const Problem& problem, const BoundaryConditions& bc,
                             const DiscretePath& init, const OracleSettings& settings);

}  // namespace liecoll
