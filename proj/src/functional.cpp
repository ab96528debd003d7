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

#include "liecoll/functional.hpp"

#include <cmath>

namespace liecoll {

namespace {

double integrand(const Problem& problem, const SystemState& s) {
  const LieAlgebra& a = problem.algebra();
  double value = 0.0;
  for (const auto& jet : s.jets) value += 0.5 * problem.metric.inner(jet.xi1, jet.xi1);
  for (auto [j, k] : problem.graph.edges()) {
    const PotentialSpec& p = problem.field.for_edge(j, k);
    if (p.is_zero()) continue;
    const GroupElement h = a.between(s.jets[static_cast<std::size_t>(j)].g, s.jets[static_cast<std::size_t>(k)].g);
    value += eval_potential(p, problem.metric, h, problem.field.geodesic);
  }
  return value;
}

}  // namespace

double evaluate_J(const Problem& problem, const Trajectory& traj) {
  const auto& samples = traj.samples;
  if (samples.size() < 2) fail(ErrorCode::kInvalidInput, "trajectory needs at least two samples");
  const int n = static_cast<int>(samples.size()) - 1;
  const double h = (samples.back().t - samples.front().t) / n;
  std::vector<double> f(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) f[i] = integrand(problem, samples[i]);

  if (n == 1) return 0.5 * h * (f[0] + f[1]);
  double total = 0.0;
  int simpson_end = n;
  if (n % 2 == 1) {
    simpson_end = n - 3;
    const auto m = static_cast<std::size_t>(simpson_end);
    total += 3.0 * h / 8.0 * (f[m] + 3.0 * f[m + 1] + 3.0 * f[m + 2] + f[m + 3]);
  }
  for (int i = 0; i + 2 <= simpson_end; i += 2) {
    const auto m = static_cast<std::size_t>(i);
    total += h / 3.0 * (f[m] + 4.0 * f[m + 1] + f[m + 2]);
  }
  return total;
}

void DiscretePath::validate(const LieAlgebra& algebra) const {
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 > t0)) {
    fail(ErrorCode::kValidation, "discrete path interval must satisfy a < b");
  }
  if (agents.empty()) fail(ErrorCode::kValidation, "discrete path has no agents");
  const int n = segments();
  if (n < 4) fail(ErrorCode::kValidation, "discrete path needs N >= 4 segments");
  for (const auto& ag : agents) {
    if (static_cast<int>(ag.nodes.size()) != n + 1) {
      fail(ErrorCode::kValidation, "all agents need the same number of nodes");
    }
    for (const auto& g : ag.nodes) algebra.check_element(g, "path node");
    if (ag.start_velocity) algebra.check_vector(*ag.start_velocity, "path start velocity");
    if (ag.end_velocity) algebra.check_vector(*ag.end_velocity, "path end velocity");
    for (int k = 0; k < n; ++k) {
      algebra.log(algebra.between(ag.nodes[static_cast<std::size_t>(k)], ag.nodes[static_cast<std::size_t>(k + 1)]));
    }
  }
}

DiscretePath discretize(const LieAlgebra& algebra, const Trajectory& traj, int segments) {
  if (segments < 1) fail(ErrorCode::kInvalidInput, "segment count must be positive");
  if (traj.samples.size() < 2) fail(ErrorCode::kInvalidInput, "trajectory needs at least two samples");
  const auto& samples = traj.samples;
  const int steps = static_cast<int>(samples.size()) - 1;
  DiscretePath path;
  path.t0 = samples.front().t;
  path.t1 = samples.back().t;
  const auto s = samples.front().jets.size();
  path.agents.resize(s);
  for (std::size_t j = 0; j < s; ++j) {
    path.agents[j].start_velocity = samples.front().jets[j].xi0;
    path.agents[j].end_velocity = samples.back().jets[j].xi0;
    path.agents[j].nodes.reserve(static_cast<std::size_t>(segments) + 1);
  }
  for (int k = 0; k <= segments; ++k) {
    const double pos = static_cast<double>(k) * steps / segments;
    const double base = std::floor(pos + 1e-9);
    const int i = std::min(static_cast<int>(base), steps);
    const double theta = pos - i;
    for (std::size_t j = 0; j < s; ++j) {
      const GroupElement& g = samples[static_cast<std::size_t>(i)].jets[j].g;
      if (theta <= 1e-9 || i == steps) {
        path.agents[j].nodes.push_back(g);
      } else {
        const GroupElement& next = samples[static_cast<std::size_t>(i + 1)].jets[j].g;
        path.agents[j].nodes.push_back(algebra.compose(g, algebra.exp(theta * algebra.log(algebra.between(g, next)))));
      }
    }
  }
  return path;
}

Vector segment_velocity(const LieAlgebra& a, const DiscreteAgentPath& path, double dt, int k) {
  const int n = static_cast<int>(path.nodes.size()) - 1;
  const auto node = [&](int i) -> const GroupElement& { return path.nodes[static_cast<std::size_t>(i)]; };
  if (k >= 0 && k < n) return a.log(a.between(node(k), node(k + 1))) / dt;
  if (k == -1 && path.start_velocity) {
    // Ghost g_{-1} = g_0 exp(log(g_0^-1 g_1) - 2 dt v_a).
    const GroupElement ghost = a.compose(node(0), a.exp(a.log(a.between(node(0), node(1))) - 2.0 * dt * *path.start_velocity));
    return a.log(a.between(ghost, node(0))) / dt;
  }
  if (k == n && path.end_velocity) {
    const GroupElement ghost = a.compose(node(n), a.exp(a.log(a.between(node(n), node(n - 1))) + 2.0 * dt * *path.end_velocity));
    return a.log(a.between(node(n), ghost)) / dt;
  }
  fail(ErrorCode::kInvalidInput, "segment index " + std::to_string(k) + " out of range");
}

namespace {

Vector interior_acceleration(const Metric& metric, const DiscreteAgentPath& path, double dt, int k) {
  const LieAlgebra& a = metric.algebra();
  const Vector prev = segment_velocity(a, path, dt, k - 1);
  const Vector next = segment_velocity(a, path, dt, k);
  const Vector mean = 0.5 * (prev + next);
  return (next - prev) / dt + metric.connection(mean, mean);
}

}  // namespace

Vector node_acceleration(const Metric& metric, const DiscreteAgentPath& path, double dt, int k) {
  const int n = static_cast<int>(path.nodes.size()) - 1;
  if (k < 0 || k > n) fail(ErrorCode::kInvalidInput, "node index out of range");
  if (k == 0 && !path.start_velocity) {
    return 2.0 * interior_acceleration(metric, path, dt, 1) - interior_acceleration(metric, path, dt, 2);
  }
  if (k == n && !path.end_velocity) {
    return 2.0 * interior_acceleration(metric, path, dt, n - 1) - interior_acceleration(metric, path, dt, n - 2);
  }
  return interior_acceleration(metric, path, dt, k);
}

double node_weight(int segments, int k) { return k == 0 || k == segments ? 0.5 : 1.0; }

double node_potential(const Problem& problem, const DiscretePath& path, int j, int k) {
  const LieAlgebra& a = problem.algebra();
  const GroupElement& gj = path.agents[static_cast<std::size_t>(j)].nodes[static_cast<std::size_t>(k)];
  double total = 0.0;
  for (int r : problem.graph.neighbors(j)) {
    const PotentialSpec& p = problem.field.for_edge(j, r);
    if (p.is_zero()) continue;
    const GroupElement& gr = path.agents[static_cast<std::size_t>(r)].nodes[static_cast<std::size_t>(k)];
    total += eval_potential(p, problem.metric, a.between(gj, gr), problem.field.geodesic);
  }
  return total;
}

double discrete_J(const Problem& problem, const DiscretePath& path) {
  path.validate(problem.algebra());
  if (static_cast<int>(path.agents.size()) != problem.graph.agent_count()) {
    fail(ErrorCode::kInvalidInput, "path and graph disagree on the agent count");
  }
  const int n = path.segments();
  const double dt = path.dt();
  double total = 0.0;
  for (std::size_t j = 0; j < path.agents.size(); ++j) {
    for (int k = 0; k <= n; ++k) {
      const Vector acc = node_acceleration(problem.metric, path.agents[j], dt, k);
      // 1/2 |a|^2 plus 1/2 of the neighbor sum; edges show up once per endpoint.
      total += node_weight(n, k) * dt *
               0.5 * (problem.metric.inner(acc, acc) + node_potential(problem, path, static_cast<int>(j), k));
    }
  }
  return total;
}

}  // namespace liecoll
