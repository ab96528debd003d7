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

#include "liecoll/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace liecoll {

double ResidualReport::max_norm() const {
  double worst = 0.0;
  for (const auto& agent : norms) {
    for (double v : agent) worst = std::max(worst, v);
  }
  return worst;
}

double ResidualReport::max_norm(double lo, double hi) const {
  double worst = 0.0;
  const double slack = 1e-9 * std::max(1.0, std::abs(hi));
  for (const auto& agent : norms) {
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] >= lo - slack && times[i] <= hi + slack) worst = std::max(worst, agent[i]);
    }
  }
  return worst;
}

namespace {

int stride_for(const Trajectory& traj, double h_fd) {
  if (!(h_fd > 0.0) || !std::isfinite(h_fd)) fail(ErrorCode::kInvalidInput, "h_fd must be positive");
  const double ratio = h_fd / traj.step;
  const long m = std::lround(ratio);
  if (m < 1 || std::abs(ratio - static_cast<double>(m)) > 1e-6 * ratio) {
    std::ostringstream os;
    os << "h_fd = " << h_fd << " is not a whole multiple of the trajectory step " << traj.step;
    fail(ErrorCode::kInsufficientSamples, os.str());
  }
  const long n = static_cast<long>(traj.samples.size()) - 1;
  if (n < 8 * m) {
    std::ostringstream os;
    os << "trajectory spans " << n << " steps; h_fd = " << h_fd << " needs at least " << 8 * m;
    fail(ErrorCode::kInsufficientSamples, os.str());
  }
  return static_cast<int>(m);
}

}  // namespace

ResidualReport unreduced_residual(const Problem& problem, const Trajectory& traj, double h_fd) {
  const int m = stride_for(traj, h_fd);
  const LieAlgebra& a = problem.algebra();
  const Metric& metric = problem.metric;
  const int n = static_cast<int>(traj.samples.size()) - 1;
  const auto s = static_cast<std::size_t>(traj.agent_count());
  const double h = m * traj.step;
  const auto at = [&](int i, std::size_t j) -> const GroupElement& {
    return traj.samples[static_cast<std::size_t>(i)].jets[j].g;
  };

  ResidualReport report;
  report.h_fd = h;
  for (int i = 4 * m; i <= n - 4 * m; ++i) report.times.push_back(traj.samples[static_cast<std::size_t>(i)].t);
  report.norms.assign(s, {});

  const auto size = static_cast<std::size_t>(n + 1);
  for (std::size_t j = 0; j < s; ++j) {
    std::vector<Vector> xi0(size), xi1(size), xi2(size);
    for (int i = m; i <= n - m; ++i) {
      xi0[static_cast<std::size_t>(i)] = a.log(a.between(at(i - m, j), at(i + m, j))) / (2.0 * h);
    }
    const auto diff = [&](const std::vector<Vector>& f, int i) {
      return Vector((f[static_cast<std::size_t>(i + m)] - f[static_cast<std::size_t>(i - m)]) / (2.0 * h));
    };
    for (int i = 2 * m; i <= n - 2 * m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      xi1[u] = diff(xi0, i) + metric.connection(xi0[u], xi0[u]);
    }
    for (int i = 3 * m; i <= n - 3 * m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      xi2[u] = diff(xi1, i) + metric.connection(xi0[u], xi1[u]);
    }
    for (int i = 4 * m; i <= n - 4 * m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      std::map<int, GroupElement> rel;
      for (int r : problem.graph.neighbors(static_cast<int>(j))) {
        rel.emplace(r, a.between(at(i, j), at(i, static_cast<std::size_t>(r))));
      }
      const Vector force = agent_force(problem.graph, problem.field, metric, static_cast<int>(j), rel);
      const Vector res = diff(xi2, i) + metric.connection(xi0[u], xi2[u]) +
                         metric.curvature(xi1[u], xi0[u], xi0[u]) - force;
      report.norms[j].push_back(metric.norm(res));
    }
  }
  return report;
}

ResidualOrder residual_order(const Problem& problem, const Trajectory& traj, double h_fd) {
  const ResidualReport coarse = unreduced_residual(problem, traj, h_fd);
  const ResidualReport fine = unreduced_residual(problem, traj, 0.5 * h_fd);
  ResidualOrder out;
  out.coarse_step = coarse.h_fd;
  out.fine_step = fine.h_fd;
  const double lo = coarse.times.front();
  const double hi = coarse.times.back();
  out.coarse = coarse.max_norm(lo, hi);
  out.fine = fine.max_norm(lo, hi);
  out.ratio = out.fine > 0.0 ? out.coarse / out.fine : 0.0;
  // Four nested central differences amplify sample rounding by sqrt(70)/16 / h^4.
  double scale = 0.0;
  for (const auto& s : traj.samples) {
    for (const auto& jet : s.jets) scale = std::max(scale, jet.g.value().cwiseAbs().maxCoeff());
  }
  out.noise_floor = std::sqrt(70.0) / 16.0 * std::numeric_limits<double>::epsilon() *
                    std::max(scale, 1.0) / std::pow(out.fine_step, 4);
  out.measurable = out.fine >= 100.0 * out.noise_floor;
  return out;
}

void OracleSettings::validate() const {
  if (segments < 4) fail(ErrorCode::kValidation, "oracle segments must be >= 4");
  if (!(tolerance > 0.0)) fail(ErrorCode::kValidation, "oracle tolerance must be positive");
  if (max_iterations <= 0) fail(ErrorCode::kValidation, "oracle max_iterations must be positive");
  if (!(fd_step > 0.0)) fail(ErrorCode::kValidation, "oracle fd_step must be positive");
  if (!(armijo > 0.0 && armijo < 1.0)) fail(ErrorCode::kValidation, "oracle armijo must be in (0, 1)");
  if (!(perturbation >= 0.0)) fail(ErrorCode::kValidation, "oracle perturbation must be >= 0");
}

namespace {

void require_velocities(const DiscretePath& path) {
  for (const auto& ag : path.agents) {
    if (!ag.start_velocity || !ag.end_velocity) {
      fail(ErrorCode::kInvalidInput, "the oracle needs endpoint velocities on every agent");
    }
  }
}

/// Terms of discrete_J that change when node k of agent j moves.
double local_value(const Problem& problem, const DiscretePath& path, int j, int k) {
  const int n = path.segments();
  const double dt = path.dt();
  const auto& ag = path.agents[static_cast<std::size_t>(j)];
  double total = 0.0;
  for (int i = std::max(0, k - 1); i <= std::min(n, k + 1); ++i) {
    const Vector acc = node_acceleration(problem.metric, ag, dt, i);
    total += 0.5 * node_weight(n, i) * dt * problem.metric.inner(acc, acc);
  }
  // Each incident edge appears in both endpoint sums with weight 1/2.
  total += node_weight(n, k) * dt * node_potential(problem, path, j, k);
  return total;
}

Matrix stiffness(int segments, double dt) {
  const int n = segments;
  // Second differences at nodes 0..n of the interior unknowns 1..n-1, with
  // the ghost closure doubling the neighbor coefficient at both ends.
  Matrix d = Matrix::Zero(n + 1, n - 1);
  for (int k = 0; k <= n; ++k) {
    for (int off : {-1, 1}) {
      int i = k + off;
      if (i == -1) {
        i = 1;
      } else if (i == n + 1) {
        i = n - 1;
      }
      if (i >= 1 && i <= n - 1) d(k, i - 1) += 1.0;
    }
    if (k >= 1 && k <= n - 1) d(k, k - 1) -= 2.0;
  }
  Vector w = Vector::Ones(n + 1);
  w(0) = 0.5;
  w(n) = 0.5;
  return d.transpose() * w.asDiagonal() * d / (dt * dt * dt);
}

double weighted_dot(const std::vector<Matrix>& g, const std::vector<Matrix>& s) {
  double total = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) total += g[j].cwiseProduct(s[j]).sum();
  return total;
}

double max_node_norm(const Metric& metric, const std::vector<Matrix>& s) {
  double worst = 0.0;
  for (const auto& block : s) {
    for (Eigen::Index i = 0; i < block.rows(); ++i) {
      worst = std::max(worst, metric.norm(block.row(i).transpose()));
    }
  }
  return worst;
}

DiscretePath step_path(const LieAlgebra& a, const DiscretePath& path, const std::vector<Matrix>& dir,
                       double alpha) {
  DiscretePath out = path;
  const int n = path.segments();
  for (std::size_t j = 0; j < out.agents.size(); ++j) {
    for (int k = 1; k < n; ++k) {
      auto& g = out.agents[j].nodes[static_cast<std::size_t>(k)];
      g = a.project(a.compose(g, a.exp(-alpha * dir[j].row(k - 1).transpose())));
    }
  }
  return out;
}

}  // namespace

std::vector<Matrix> discrete_gradient(const Problem& problem, const DiscretePath& path, double fd_step) {
  path.validate(problem.algebra());
  require_velocities(path);
  const LieAlgebra& a = problem.algebra();
  const int n = path.segments();
  const int dim = a.dim();
  DiscretePath work = path;
  std::vector<Matrix> grad(path.agents.size(), Matrix::Zero(n - 1, dim));
  for (std::size_t j = 0; j < path.agents.size(); ++j) {
    for (int k = 1; k < n; ++k) {
      auto& node = work.agents[j].nodes[static_cast<std::size_t>(k)];
      const GroupElement base = node;
      for (int c = 0; c < dim; ++c) {
        const Vector e = Vector::Unit(dim, c);
        node = a.compose(base, a.exp(fd_step * e));
        const double plus = local_value(problem, work, static_cast<int>(j), k);
        node = a.compose(base, a.exp(-fd_step * e));
        const double minus = local_value(problem, work, static_cast<int>(j), k);
        grad[j](k - 1, c) = (plus - minus) / (2.0 * fd_step);
      }
      node = base;
    }
  }
  return grad;
}

std::vector<Matrix> sobolev_direction(const Metric& metric, const DiscretePath& path,
                                      const std::vector<Matrix>& gradient) {
  const int n = path.segments();
  const Eigen::LDLT<Matrix> k(stiffness(n, path.dt()));
  const Matrix m_inv = metric.matrix().inverse();
  std::vector<Matrix> out;
  out.reserve(gradient.size());
  for (const auto& g : gradient) out.push_back(k.solve(g) * m_inv);
  return out;
}

double discrete_gradient_norm(const Problem& problem, const DiscretePath& path, double fd_step) {
  return max_node_norm(problem.metric,
                       sobolev_direction(problem.metric, path, discrete_gradient(problem, path, fd_step)));
}

double node_distance(const Metric& metric, const DiscretePath& a, const DiscretePath& b,
                     const GeodesicSettings& settings) {
  if (a.agents.size() != b.agents.size() || a.segments() != b.segments()) {
    fail(ErrorCode::kInvalidInput, "paths have different shapes");
  }
  double worst = 0.0;
  for (std::size_t j = 0; j < a.agents.size(); ++j) {
    for (std::size_t k = 0; k < a.agents[j].nodes.size(); ++k) {
      worst = std::max(worst, distance(metric, a.agents[j].nodes[k], b.agents[j].nodes[k], settings));
    }
  }
  return worst;
}

DiscretePath perturb_interior(const LieAlgebra& algebra, const DiscretePath& path, double amplitude,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  DiscretePath out = path;
  const int n = path.segments();
  for (auto& ag : out.agents) {
    for (int k = 1; k < n; ++k) {
      Vector u(algebra.dim());
      for (Eigen::Index i = 0; i < u.size(); ++i) u(i) = amplitude * normal(rng);
      auto& g = ag.nodes[static_cast<std::size_t>(k)];
      g = algebra.compose(g, algebra.exp(u));
    }
  }
  return out;
}

OracleResult oracle_minimize(const Problem& problem, const BoundaryConditions& bc,
                             const DiscretePath& init, const OracleSettings& settings) {
  settings.validate();
  const LieAlgebra& a = problem.algebra();
  bc.validate(a);
  if (init.agents.size() != bc.agents.size()) {
    fail(ErrorCode::kInvalidInput, "initial path and boundary data disagree on the agent count");
  }
  if (std::abs(init.t0 - bc.t0) > 1e-12 || std::abs(init.t1 - bc.t1) > 1e-12) {
    fail(ErrorCode::kInvalidInput, "initial path and boundary data disagree on the interval");
  }
  DiscretePath path = init;
  const int n = path.segments();
  for (std::size_t j = 0; j < bc.agents.size(); ++j) {
    auto& ag = path.agents[j];
    const auto& b = bc.agents[j];
    if (ag.nodes.size() < 2 || a.log(a.between(ag.nodes.front(), b.start)).norm() > 1e-9 ||
        a.log(a.between(ag.nodes.back(), b.end)).norm() > 1e-9) {
      fail(ErrorCode::kInvalidInput, "initial path endpoints do not match the boundary data");
    }
    ag.nodes.front() = b.start;
    ag.nodes.back() = b.end;
    ag.start_velocity = b.start_velocity;
    ag.end_velocity = b.end_velocity;
  }
  path.validate(a);

  OracleResult result;
  result.initial_value = discrete_J(problem, path);
  double value = result.initial_value;
  const Eigen::LDLT<Matrix> k(stiffness(n, path.dt()));
  const Matrix m_inv = problem.metric.matrix().inverse();
  auto direction = [&](const std::vector<Matrix>& g) {
    std::vector<Matrix> out;
    for (const auto& block : g) out.push_back(k.solve(block) * m_inv);
    return out;
  };

  double alpha = 1.0;
  for (int iter = 0;; ++iter) {
    const std::vector<Matrix> grad = discrete_gradient(problem, path, settings.fd_step);
    const std::vector<Matrix> dir = direction(grad);
    const double norm = max_node_norm(problem.metric, dir);
    result.path = path;
    result.value = value;
    result.gradient_norm = norm;
    result.iterations = iter;
    if (norm <= settings.tolerance) {
      result.converged = true;
      return result;
    }
    if (iter >= settings.max_iterations) break;
    const double slope = weighted_dot(grad, dir);
    bool accepted = false;
    alpha = std::min(1.0, 2.0 * alpha);
    for (int bt = 0; bt < 40; ++bt, alpha *= 0.5) {
      DiscretePath trial;
      double trial_value = 0.0;
      try {
        trial = step_path(a, path, dir, alpha);
        trial_value = discrete_J(problem, trial);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kCutLocus && e.code() != ErrorCode::kNoConvergence) throw;
        continue;
      }
      if (trial_value <= value - settings.armijo * alpha * slope) {
        path = std::move(trial);
        value = trial_value;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  std::ostringstream os;
  os << "oracle stopped after " << result.iterations << " iterations with gradient norm "
     << result.gradient_norm << " (tolerance " << settings.tolerance << ")";
  throw OracleMaxIterations(os.str(), result);
}

}  // namespace liecoll
