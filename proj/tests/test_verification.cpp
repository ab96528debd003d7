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

#include <numbers>

#include <doctest.h>

#include "liecoll/verification.hpp"
#include "support.hpp"

using namespace liecoll;
using namespace liecoll::testing;

namespace {

constexpr double kPi = std::numbers::pi;

Problem make_problem(const Metric& m, int agents, const std::vector<Graph::Edge>& edges,
                     const PotentialField& field, double step = 1e-3) {
  Problem p{m, Graph(agents, edges), field, IntegratorSettings{}};
  p.integrator.step = step;
  return p;
}

Vector v2(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

Trajectory so3_cubic(const Problem& p) {
  const SystemState s{0.0, {{rotation(vec3(0.2, -0.1, 0.3)), vec3(0.5, -0.2, 0.3), vec3(0.4, 0.6, -0.5),
                             vec3(-0.8, 0.3, 0.5)}}};
  return p.integrate(s, 1.0);
}

/// Planar rest-to-rest problem whose minimizer is the Hermite cubic.
struct PlanarHermite {
  Problem problem = make_problem(Metric::identity(LieAlgebra::abelian(2)), 1, {}, PotentialField{});
  Vector a = v2(-1, 0.5), b = v2(1, 1), va = v2(0.5, -1), vb = v2(0, 1);
  BoundaryConditions bc;

  PlanarHermite() { bc.agents.push_back({GroupElement(Matrix(a)), GroupElement(Matrix(b)), va, vb}); }

  DiscretePath exact(int segments) const {
    DiscretePath path;
    path.agents.resize(1);
    for (int k = 0; k <= segments; ++k) {
      path.agents[0].nodes.push_back(GroupElement(Matrix(hermite(double(k) / segments, a, b, va, vb))));
    }
    path.agents[0].start_velocity = va;
    path.agents[0].end_velocity = vb;
    return path;
  }
};

}  // namespace

TEST_CASE("residual of an exact planar cubic vanishes") {
  const Problem p = make_problem(Metric::identity(LieAlgebra::abelian(2)), 1, {}, PotentialField{}, 1e-2);
  const SystemState s{0.0, {{GroupElement(Matrix(v2(0.1, -0.2))), v2(0.3, 0.1), v2(-0.5, 0.2), v2(1.0, -0.7)}}};
  const ResidualReport r = unreduced_residual(p, p.integrate(s, 1.0), 0.05);
  CHECK(r.h_fd == 0.05);
  CHECK_FALSE(r.times.empty());
  CHECK(r.times.front() >= 0.2 - 1e-12);
  CHECK(r.times.back() <= 0.8 + 1e-12);
  CHECK(r.max_norm() <= 1e-8);
}

TEST_CASE("residual of an SO(3) cubic is second order in the difference step") {
  const Problem p = make_problem(Metric::identity(LieAlgebra::so3(), true), 1, {}, PotentialField{}, 1e-3);
  const ResidualOrder order = residual_order(p, so3_cubic(p), 0.02);
  CHECK(order.measurable);
  CHECK(order.fine_step == doctest::Approx(0.01));
  CHECK(order.ratio == doctest::Approx(4.0).epsilon(0.125));
  CHECK(order.fine < order.coarse);
}

TEST_CASE("residual detects trajectories that are not solutions") {
  const Problem p = make_problem(Metric::identity(LieAlgebra::so3(), true), 1, {}, PotentialField{}, 1e-3);
  const LieAlgebra& a = p.algebra();
  Trajectory bent = so3_cubic(p);
  for (SystemState& s : bent.samples) {
    s.jets[0].g = a.compose(s.jets[0].g, a.exp(1e-2 * std::sin(kPi * s.t) * e(0)));
  }
  CHECK(unreduced_residual(p, bent, 0.01).max_norm() >= 1e-3);

  // A free trajectory checked against a problem with a potential misses the force.
  PotentialField f;
  f.uniform.family = PotentialFamily::kInverseShifted;
  f.uniform.gain = 1.0;
  f.uniform.shape = 0.5;
  const Problem free = make_problem(p.metric, 2, {}, PotentialField{});
  const Problem pushed = make_problem(p.metric, 2, {{0, 1}}, f);
  const SystemState s{0.0, {{a.identity(), vec3(0.2, 0, 0), a.zero(), a.zero()},
                            {rotation(vec3(0, 0.8, 0)), vec3(0, 0, 0.3), a.zero(), a.zero()}}};
  CHECK(unreduced_residual(pushed, free.integrate(s, 1.0), 0.01).max_norm() >= 1e-2);
}

TEST_CASE("residual windows") {
  const Problem p = make_problem(Metric::identity(LieAlgebra::abelian(2)), 1, {}, PotentialField{}, 1e-2);
  const SystemState s{0.0, {{GroupElement(Matrix(v2(0, 0))), v2(1, 0), v2(0, 0), v2(0, 0)}}};
  const Trajectory traj = p.integrate(s, 1.0);
  CHECK(code_of([&] { unreduced_residual(p, traj, 0.015); }) == ErrorCode::kInsufficientSamples);
  CHECK(code_of([&] { unreduced_residual(p, traj, 0.25); }) == ErrorCode::kInsufficientSamples);
  const ResidualReport r = unreduced_residual(p, traj, 0.02);
  CHECK(r.max_norm(0.4, 0.6) <= r.max_norm());
}

TEST_CASE("oracle settings validation") {
  OracleSettings s;
  s.segments = 3;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::kValidation);
  s = OracleSettings{};
  s.tolerance = 0.0;
  CHECK(code_of([&] { s.validate(); }) == ErrorCode::kValidation);
}

TEST_CASE("perturbation keeps endpoints and node distance measures it") {
  const PlanarHermite h;
  const DiscretePath path = h.exact(20);
  const DiscretePath moved = perturb_interior(h.problem.algebra(), path, 1e-2, 3);
  const Metric& m = h.problem.metric;
  CHECK(node_distance(m, path, path) == 0.0);
  CHECK((moved.agents[0].nodes.front().value() - path.agents[0].nodes.front().value()).norm() == 0.0);
  CHECK((moved.agents[0].nodes.back().value() - path.agents[0].nodes.back().value()).norm() == 0.0);
  CHECK(node_distance(m, path, moved) > 1e-3);
  CHECK(node_distance(m, path, moved) < 0.1);
  const DiscretePath again = perturb_interior(h.problem.algebra(), path, 1e-2, 3);
  CHECK(node_distance(m, moved, again) == 0.0);
}

TEST_CASE("oracle recovers the planar Hermite cubic") {
  const PlanarHermite h;
  const DiscretePath exact = h.exact(100);
  OracleSettings s;
  s.segments = 100;
  const DiscretePath start = perturb_interior(h.problem.algebra(), exact, 1e-2, 11);
  const OracleResult r = oracle_minimize(h.problem, h.bc, start, s);
  CHECK(r.converged);
  CHECK(r.gradient_norm <= s.tolerance);
  CHECK(r.value <= r.initial_value);
  CHECK(node_distance(h.problem.metric, r.path, exact) <= 1e-4);
}

TEST_CASE("oracle started at the BVP solution stays there") {
  const Metric m = Metric::identity(LieAlgebra::so3(), true);
  PotentialField f;
  f.uniform.family = PotentialFamily::kInverseShifted;
  f.uniform.gain = 0.1;
  f.uniform.shape = 1.0;
  Problem p = make_problem(m, 2, {{0, 1}}, f, 1e-3);
  const LieAlgebra& a = m.algebra();
  BoundaryConditions bc;
  bc.agents.push_back({a.identity(), rotation(vec3(0.6, 0.2, -0.1)), vec3(0.1, 0, 0), vec3(0, 0.2, 0)});
  bc.agents.push_back({rotation(vec3(0, 0.5, 0)), rotation(vec3(-0.3, 0.1, 0.4)), a.zero(), vec3(0, 0, 0.1)});
  const BvpSolution sol = solve_bvp(p, bc, ShootingSettings{});
  REQUIRE(sol.report.converged);
  OracleSettings s;
  s.segments = 50;
  const DiscretePath init = discretize(a, sol.trajectory, s.segments);
  const OracleResult r = oracle_minimize(p, bc, init, s);
  CHECK(r.converged);
  CHECK(node_distance(m, r.path, init) <= 1e-3);
}

TEST_CASE("oracle on a path at rest") {
  const Metric m = Metric::identity(LieAlgebra::so3(), true);
  const Problem p = make_problem(m, 1, {}, PotentialField{});
  const GroupElement g = rotation(vec3(0.3, 0.2, 0.1));
  BoundaryConditions bc;
  bc.agents.push_back({g, g, m.algebra().zero(), m.algebra().zero()});
  DiscretePath path;
  path.agents.resize(1);
  path.agents[0].nodes.assign(21, g);
  path.agents[0].start_velocity = m.algebra().zero();
  path.agents[0].end_velocity = m.algebra().zero();
  OracleSettings s;
  s.segments = 20;
  const OracleResult r = oracle_minimize(p, bc, path, s);
  CHECK(r.converged);
  CHECK(r.iterations == 0);
  CHECK(r.value <= 1e-24);
}

TEST_CASE("preconditioned gradient decreases under descent and with resolution") {
  const PlanarHermite h;
  const Problem& p = h.problem;
  std::vector<double> norms;
  for (int n : {25, 50, 100}) {
    const DiscretePath start = perturb_interior(p.algebra(), h.exact(n), 1e-2, 13);
    OracleSettings s;
    s.segments = n;
    s.max_iterations = 3;
    s.tolerance = 1e-14;
    try {
      oracle_minimize(p, h.bc, start, s);
    } catch (const OracleMaxIterations& e) {
      CHECK(e.code() == ErrorCode::kMaxIterations);
      CHECK(e.best().value <= e.best().initial_value);
      CHECK(e.best().gradient_norm <= discrete_gradient_norm(p, start));
    }
    // The exact cubic's discrete gradient is a consistency error of the scheme.
    norms.push_back(discrete_gradient_norm(p, h.exact(n)));
  }
  CHECK(norms[1] <= norms[0]);
  CHECK(norms[2] <= norms[1]);
}
