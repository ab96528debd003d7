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

#include "liecoll/bvp.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <sstream>

#include "liecoll/functional.hpp"

namespace liecoll {

void BoundaryConditions::validate(const LieAlgebra& algebra) const {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0)) {
    fail(ErrorCode::kValidation, "interval must satisfy a < b");
  }
  if (agents.empty()) fail(ErrorCode::kValidation, "boundary conditions need at least one agent");
  for (std::size_t j = 0; j < agents.size(); ++j) {
    const auto& ag = agents[j];
    algebra.check_element(ag.start, "start position");
    algebra.check_element(ag.end, "end position");
    algebra.check_vector(ag.start_velocity, "start velocity");
    algebra.check_vector(ag.end_velocity, "end velocity");
    try {
      algebra.log(algebra.between(ag.start, ag.end));
    } catch (const Error& e) {
      fail(ErrorCode::kValidation, "agent " + std::to_string(j + 1) + ": " + e.what());
    }
  }
}

void ShootingSettings::validate() const {
  if (!(tolerance > 0.0)) fail(ErrorCode::kValidation, "shooting tolerance must be positive");
  if (max_iterations <= 0) fail(ErrorCode::kValidation, "shooting max_iterations must be positive");
  if (!(damping > 0.0)) fail(ErrorCode::kValidation, "shooting damping must be positive");
  if (!(jacobian_step > 0.0)) fail(ErrorCode::kValidation, "shooting jacobian_step must be positive");
  if (multistart <= 0) fail(ErrorCode::kValidation, "shooting multistart must be positive");
  if (!(multistart_noise >= 0.0)) fail(ErrorCode::kValidation, "shooting multistart_noise must be >= 0");
}

Vector hermite_initial_guess(const Metric& metric, const BoundaryConditions& bc) {
  const LieAlgebra& a = metric.algebra();
  const int n = a.dim();
  const double T = bc.duration();
  Vector x(2 * n * static_cast<Eigen::Index>(bc.agents.size()));
  for (std::size_t j = 0; j < bc.agents.size(); ++j) {
    const auto& ag = bc.agents[j];
    // Hermite cubic q(t) in the chart log(g_a^-1 g) with q'(0) = v_a, q'(T) = v_b.
    const Vector delta = a.log(a.between(ag.start, ag.end));
    const Vector c2 = (3.0 * delta - (2.0 * ag.start_velocity + ag.end_velocity) * T) / (T * T);
    const Vector c3 = (-2.0 * delta + (ag.start_velocity + ag.end_velocity) * T) / (T * T * T);
    const Vector& x0 = ag.start_velocity;
    const Vector x0dot = 2.0 * c2;
    const Vector x0ddot = 6.0 * c3;
    // Covariant jets from the chart derivatives via xi(i+1) = d/dt xi(i) + nabla_xi0 xi(i).
    const Vector xi1 = x0dot + metric.connection(x0, x0);
    const Vector xi1dot = x0ddot + metric.connection(x0dot, x0) + metric.connection(x0, x0dot);
    const Vector xi2 = xi1dot + metric.connection(x0, xi1);
    const auto off = static_cast<Eigen::Index>(2 * n * j);
    x.segment(off, n) = xi1;
    x.segment(off + n, n) = xi2;
  }
  return x;
}

SystemState initial_state(const LieAlgebra& algebra, const BoundaryConditions& bc,
                          const Vector& unknowns) {
  const int n = algebra.dim();
  if (unknowns.size() != 2 * n * static_cast<Eigen::Index>(bc.agents.size())) {
    fail(ErrorCode::kInvalidInput, "expected " + std::to_string(2 * n * bc.agents.size()) +
                                       " unknowns, got " + std::to_string(unknowns.size()));
  }
  SystemState s;
  s.t = bc.t0;
  for (std::size_t j = 0; j < bc.agents.size(); ++j) {
    const auto off = static_cast<Eigen::Index>(2 * n * j);
    s.jets.push_back({bc.agents[j].start, bc.agents[j].start_velocity, unknowns.segment(off, n),
                      unknowns.segment(off + n, n)});
  }
  return s;
}

namespace {

Vector terminal_residual(const LieAlgebra& a, const BoundaryConditions& bc, const SystemState& end) {
  const int n = a.dim();
  Vector r(2 * n * static_cast<Eigen::Index>(bc.agents.size()));
  for (std::size_t j = 0; j < bc.agents.size(); ++j) {
    const auto off = static_cast<Eigen::Index>(2 * n * j);
    r.segment(off, n) = a.log(a.between(end.jets[j].g, bc.agents[j].end));
    r.segment(off + n, n) = end.jets[j].xi0 - bc.agents[j].end_velocity;
  }
  return r;
}

struct StartResult {
  BvpSolution solution;
  bool converged = false;
};

class Shooter {
 public:
  Shooter(const Problem& problem, const BoundaryConditions& bc, const ShootingSettings& settings)
      : problem_(problem), bc_(bc), settings_(settings) {}

  int evaluations() const { return evaluations_; }

  std::optional<Vector> residual(const Vector& x) {
    ++evaluations_;
    try {
      const Trajectory traj = problem_.integrate(initial_state(problem_.algebra(), bc_, x), bc_.duration());
      return terminal_residual(problem_.algebra(), bc_, traj.samples.back());
    } catch (const Error& e) {
      // A trial that leaves the injectivity domain or blows up is just a bad step.
      if (e.code() == ErrorCode::kCutLocus || e.code() == ErrorCode::kNonFinite ||
          e.code() == ErrorCode::kNoConvergence) {
        return std::nullopt;
      }
      throw;
    }
  }

  /// Runs LM from x. Returns the final iterate and its residual.
  std::pair<Vector, Vector> run(Vector x, int& iterations) {
    std::optional<Vector> r0 = residual(x);
    if (!r0) return {x, Vector::Constant(x.size(), std::numeric_limits<double>::infinity())};
    Vector r = *r0;
    double lambda = settings_.damping;
    const Eigen::Index m = x.size();
    for (iterations = 0; iterations < settings_.max_iterations; ++iterations) {
      if (r.norm() <= settings_.tolerance) break;
      Matrix jac(r.size(), m);
      bool jac_ok = true;
      for (Eigen::Index c = 0; c < m && jac_ok; ++c) {
        const double step = settings_.jacobian_step * std::max(1.0, std::abs(x(c)));
        Vector xp = x;
        xp(c) += step;
        std::optional<Vector> rp = residual(xp);
        if (!rp) {
          xp(c) = x(c) - step;
          rp = residual(xp);
          if (!rp) {
            jac_ok = false;
            break;
          }
          jac.col(c) = (r - *rp) / step;
        } else {
          jac.col(c) = (*rp - r) / step;
        }
      }
      if (!jac_ok) break;
      const Matrix jtj = jac.transpose() * jac;
      const Vector jtr = jac.transpose() * r;
      bool accepted = false;
      while (lambda < 1e12) {
        const Vector dx = (jtj + lambda * Matrix::Identity(m, m)).ldlt().solve(-jtr);
        const Vector trial = x + dx;
        const std::optional<Vector> rt = residual(trial);
        if (rt && rt->allFinite() && rt->norm() < r.norm()) {
          x = trial;
          r = *rt;
          lambda = std::max(lambda / 10.0, 1e-15);
          accepted = true;
          break;
        }
        lambda *= 10.0;
      }
      if (!accepted) break;
    }
    return {x, r};
  }

 private:
  const Problem& problem_;
  const BoundaryConditions& bc_;
  const ShootingSettings& settings_;
  int evaluations_ = 0;
};

void fill_report(const Problem& problem, const BoundaryConditions& bc, BvpSolution& sol) {
  const LieAlgebra& a = problem.algebra();
  const int n = a.dim();
  const Vector r = terminal_residual(a, bc, sol.trajectory.samples.back());
  sol.report.residual_norm = r.norm();
  double pos = 0.0;
  double vel = 0.0;
  for (std::size_t j = 0; j < bc.agents.size(); ++j) {
    const auto off = static_cast<Eigen::Index>(2 * n * j);
    pos = std::max(pos, r.segment(off, n).norm());
    vel = std::max(vel, r.segment(off + n, n).norm());
  }
  sol.report.terminal_position_error = pos;
  sol.report.terminal_velocity_error = vel;
  sol.report.relative_pose_drift = sol.trajectory.relative_pose_drift;
  sol.report.first_integral_drift.clear();
  if (problem.field.all_zero(problem.graph)) {
    for (std::size_t j = 0; j < bc.agents.size(); ++j) {
      const double i0 = first_integral(problem.metric, sol.trajectory.samples.front().jets[j]);
      double drift = 0.0;
      for (const auto& s : sol.trajectory.samples) {
        drift = std::max(drift, std::abs(first_integral(problem.metric, s.jets[j]) - i0));
      }
      sol.report.first_integral_drift.push_back(drift);
    }
  }
  sol.report.functional = evaluate_J(problem, sol.trajectory);
}

}  // namespace

Vector shooting_residual(const Problem& problem, const BoundaryConditions& bc,
                         const Vector& unknowns) {
  bc.validate(problem.algebra());
  const Trajectory traj =
      problem.integrate(initial_state(problem.algebra(), bc, unknowns), bc.duration());
  return terminal_residual(problem.algebra(), bc, traj.samples.back());
}

BvpSolution solve_bvp(const Problem& problem, const BoundaryConditions& bc,
                      const ShootingSettings& settings) {
  bc.validate(problem.algebra());
  return solve_bvp(problem, bc, settings, hermite_initial_guess(problem.metric, bc));
}

BvpSolution solve_bvp(const Problem& problem, const BoundaryConditions& bc,
                      const ShootingSettings& settings, const Vector& initial_guess) {
  settings.validate();
  problem.integrator.validate();
  bc.validate(problem.algebra());
  if (static_cast<int>(bc.agents.size()) != problem.graph.agent_count()) {
    fail(ErrorCode::kInvalidInput, "boundary data and graph disagree on the agent count");
  }
  const LieAlgebra& a = problem.algebra();
  if (initial_guess.size() != 2 * a.dim() * static_cast<Eigen::Index>(bc.agents.size())) {
    fail(ErrorCode::kInvalidInput, "initial guess has the wrong size");
  }

  Shooter shooter(problem, bc, settings);
  std::mt19937_64 rng(settings.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const double noise = settings.multistart_noise * (1.0 + initial_guess.cwiseAbs().maxCoeff());

  std::optional<BvpSolution> best_converged;
  std::optional<BvpSolution> best_any;
  int converged_count = 0;
  for (int start = 0; start < settings.multistart; ++start) {
    Vector x0 = initial_guess;
    if (start > 0) {
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) += noise * normal(rng);
    }
    int iterations = 0;
    auto [x, r] = shooter.run(x0, iterations);
    if (!r.allFinite()) continue;
    BvpSolution sol;
    sol.unknowns = x;
    try {
      sol.trajectory = problem.integrate(initial_state(a, bc, x), bc.duration());
      fill_report(problem, bc, sol);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::kCutLocus || e.code() == ErrorCode::kNoConvergence) continue;
      throw;
    }
    sol.report.iterations = iterations;
    sol.report.selected_start = start;
    sol.report.converged = sol.report.residual_norm <= settings.tolerance;
    if (sol.report.converged) {
      ++converged_count;
      if (!best_converged || sol.report.functional < best_converged->report.functional) {
        best_converged = sol;
      }
    }
    if (!best_any || sol.report.residual_norm < best_any->report.residual_norm) best_any = std::move(sol);
  }

  BvpSolution out;
  if (best_converged) {
    out = std::move(*best_converged);
  } else if (best_any) {
    out = std::move(*best_any);
  }
  out.report.starts_tried = settings.multistart;
  out.report.starts_converged = converged_count;
  out.report.residual_evaluations = shooter.evaluations();
  if (!best_converged) {
    std::ostringstream os;
    os << "shooting did not converge in " << settings.multistart << " start(s)";
    if (best_any) os << "; best residual " << out.report.residual_norm;
    throw BvpNoConvergence(os.str(), std::move(out));
  }
  return out;
}

}  // namespace liecoll
