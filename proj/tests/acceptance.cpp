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

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.
// Usage: liecoll_acceptance [SCENARIO_DIR]

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "liecoll/run.hpp"

using namespace liecoll;

namespace {

std::string g_scenarios = LIECOLL_SOURCE_DIR "/scenarios";

Scenario bundled(const std::string& name) { return load_scenario_file(g_scenarios + "/" + name + ".yaml"); }

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* format, double a, double b = 0.0, double c = 0.0, double d = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c, d);
  return buf;
}

Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

Matrix random_spd(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> eig(0.5, 3.0);
  const Eigen::HouseholderQR<Matrix> qr(Matrix::NullaryExpr(n, n, [&] { return eig(rng) - 1.75; }));
  const Matrix q = qr.householderQ();
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = eig(rng);
  return q * d.asDiagonal() * q.transpose();
}

/// Rotation vector of norm at most max_angle.
Vector random_rotation_vector(std::mt19937_64& rng, double max_angle) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const Vector axis = random_vector(rng, 3).normalized();
  return max_angle * std::cbrt(u(rng)) * axis;
}

Vector cross(const Vector& x, const Vector& y) {
  return Eigen::Vector3d(x.head<3>()).cross(Eigen::Vector3d(y.head<3>()));
}

Trajectory solve(const Scenario& sc) { return solve_bvp(sc.problem(), sc.boundary(), sc.shooting).trajectory; }

double max_jet_gap(const Trajectory& x, const Trajectory& y) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.samples.size(); ++i) {
    for (std::size_t j = 0; j < x.samples[i].jets.size(); ++j) {
      const AgentJet& p = x.samples[i].jets[j];
      const AgentJet& q = y.samples[i].jets[j];
      worst = std::max({worst, (p.xi0 - q.xi0).norm(), (p.xi1 - q.xi1).norm(), (p.xi2 - q.xi2).norm()});
    }
  }
  return worst;
}

Outcome hermite() {
  const Scenario sc = bundled("hermite_abelian");
  const double err = hermite_error(sc.boundary(), solve(sc));
  return {err <= 1e-6, fmt("max position error %.3g (bound 1e-6)", err)};
}

Outcome connection_identities() {
  std::mt19937_64 rng(101);
  const LieAlgebra a = LieAlgebra::so3();
  double torsion = 0.0;
  double compat = 0.0;
  for (int k = 0; k < 20; ++k) {
    const Metric m(a, random_spd(rng, 3));
    for (int i = 0; i < 50; ++i) {
      const Vector x = random_vector(rng, 3), y = random_vector(rng, 3), s = random_vector(rng, 3);
      torsion = std::max(torsion, (m.connection(x, y) - m.connection(y, x) - a.bracket(x, y)).norm());
      compat = std::max(compat, std::abs(m.inner(m.connection(s, x), y) + m.inner(x, m.connection(s, y))));
    }
  }
  return {torsion <= 1e-10 && compat <= 1e-10,
          fmt("torsion %.3g, compatibility %.3g over 20 metrics x 50 triples (bound 1e-10)", torsion, compat)};
}

Outcome bi_invariant_forms() {
  std::mt19937_64 rng(102);
  double conn = 0.0, curv = 0.0, sect = 0.0, min_sect = 0.0;
  for (double c : {1.0, 0.3, 4.0}) {
    const Metric m(LieAlgebra::so3(), c * Matrix::Identity(3, 3), true);
    for (int i = 0; i < 1000; ++i) {
      const Vector x = random_vector(rng, 3), y = random_vector(rng, 3), z = random_vector(rng, 3);
      const Vector xy = cross(x, y);
      conn = std::max(conn, (m.connection(x, y) - 0.5 * xy).norm());
      curv = std::max(curv, (m.curvature(x, y, z) + 0.25 * cross(xy, z)).norm());
      const double k = m.inner(m.curvature(x, y, y), x) / c;
      sect = std::max(sect, std::abs(k - 0.25 * xy.squaredNorm()));
      min_sect = std::min(min_sect, k);
    }
  }
  return {conn <= 1e-12 && curv <= 1e-12 && sect <= 1e-10 && min_sect >= 0.0,
          fmt("connection %.3g, curvature %.3g (bound 1e-12), sectional %.3g (bound 1e-10), min %.3g", conn, curv,
              sect, min_sect)};
}

Outcome distance_invariance() {
  std::mt19937_64 rng(103);
  const LieAlgebra a = LieAlgebra::so3();
  double worst = 0.0;
  for (const Metric& m : {Metric::identity(a, true), Metric(a, Matrix(Eigen::Vector3d(1, 2, 3).asDiagonal()))}) {
    for (int i = 0; i < 200; ++i) {
      const GroupElement g = a.exp(random_vector(rng, 3, 2.0));
      const GroupElement p = a.exp(random_vector(rng, 3));
      const GroupElement q = a.compose(p, a.exp(random_rotation_vector(rng, 1.0)));
      worst = std::max(worst, std::abs(distance(m, a.compose(g, p), a.compose(g, q)) - distance(m, p, q)));
    }
  }
  return {worst <= 1e-6, fmt("max |d(gp,gq) - d(p,q)| %.3g over 200 triples x 2 metrics (bound 1e-6)", worst)};
}

Outcome first_integral_conservation() {
  std::mt19937_64 rng(104);
  const Metric m(LieAlgebra::so3(), Matrix(Eigen::Vector3d(1, 2, 3).asDiagonal()));
  IntegratorSettings s;
  s.step = 1e-3;
  const SystemState init{0.0, {{m.algebra().exp(random_vector(rng, 3)), random_vector(rng, 3, 0.5),
                                random_vector(rng, 3, 0.5), random_vector(rng, 3, 0.5)}}};
  const Trajectory traj = integrate_ivp(m, Graph(1, {}), PotentialField{}, init, 1.0, s);
  const double c0 = first_integral(m, traj.samples.front().jets[0]);
  double drift = 0.0;
  for (const SystemState& x : traj.samples) drift = std::max(drift, std::abs(first_integral(m, x.jets[0]) - c0));
  return {drift <= 1e-6, fmt("drift %.3g at h = 1e-3, T = 1 (bound 1e-6)", drift)};
}

Outcome residual_equivalence() {
  const Scenario sc = bundled("so3_crossing");
  const Problem p = sc.problem();
  const Trajectory traj = solve(sc);
  const ResidualOrder order = residual_order(p, traj, sc.verify.h_fd);
  const double at_check = unreduced_residual(p, traj, sc.verify.h_fd_check).max_norm();
  const bool ok = order.measurable && order.ratio >= 3.5 && order.ratio <= 4.5 && at_check <= 1e-4;
  return {ok, fmt("ratio %.4g for h_fd %.3g -> %.3g (in [3.5, 4.5]), residual %.3g at h_fd = 1e-3 (bound 1e-4)",
                  order.ratio, order.coarse_step, order.fine_step, at_check)};
}

Outcome cross_formulation() {
  Scenario sc = bundled("so3_crossing");
  SystemState init = solve_bvp(sc.problem(), sc.boundary(), sc.shooting).trajectory.samples.front();
  Problem left = sc.problem();
  left.integrator.formulation = Formulation::kLeftInvariant;
  Problem bi = sc.problem();
  bi.integrator.formulation = Formulation::kBiInvariant;
  const double gap = max_jet_gap(left.integrate(init, sc.t1 - sc.t0), bi.integrate(init, sc.t1 - sc.t0));
  return {gap <= 1e-8, fmt("max jet difference %.3g on the crossing pair with M = I (bound 1e-8)", gap)};
}

Outcome oracle_agreement() {
  const Scenario sc = bundled("so3_crossing");
  const Problem p = sc.problem();
  const BoundaryConditions bc = sc.boundary();
  OracleSettings os = sc.oracle;
  os.segments = 200;
  os.perturbation = 1e-2;
  const DiscretePath at_solution = discretize(p.algebra(), solve(sc), os.segments);
  const double gn = discrete_gradient_norm(p, at_solution, os.fd_step);
  const DiscretePath start = perturb_interior(p.algebra(), at_solution, os.perturbation, sc.seed);
  double dist = 0.0;
  bool converged = true;
  try {
    dist = node_distance(p.metric, oracle_minimize(p, bc, start, os).path, at_solution);
  } catch (const OracleMaxIterations& e) {
    converged = false;
    dist = node_distance(p.metric, e.best().path, at_solution);
  }
  return {gn <= 1e-3 && converged && dist <= 1e-3,
          fmt("gradient norm %.3g at N = 200 (bound 1e-3), node distance %.3g (bound 1e-3)", gn, dist) +
              (converged ? "" : ", oracle hit its iteration cap")};
}

Outcome avoidance() {
  const Scenario free = bundled("head_on_free");
  const Scenario pushed = bundled("head_on_abelian");
  const double d_free = min_pairwise_distance(free.metric(), solve(free)).distance;
  const double d_pushed = min_pairwise_distance(pushed.metric(), solve(pushed)).distance;
  return {d_free <= 1e-6 && d_pushed > 0.05,
          fmt("min distance %.3g with zero potential (bound 1e-6), %.3g with repulsion (must exceed 0.05)", d_free,
              d_pushed)};
}

Outcome equivariance() {
  const Scenario sc = bundled("so3_crossing");
  const Problem p = sc.problem();
  const LieAlgebra& a = p.algebra();
  std::mt19937_64 rng(105);
  const GroupElement h = a.exp(random_rotation_vector(rng, 3.0));
  BoundaryConditions moved = sc.boundary();
  for (AgentBoundary& b : moved.agents) {
    b.start = a.compose(h, b.start);
    b.end = a.compose(h, b.end);
  }
  const BvpSolution x = solve_bvp(p, sc.boundary(), sc.shooting);
  const BvpSolution y = solve_bvp(p, moved, sc.shooting);
  const double du = (x.unknowns - y.unknowns).norm();
  const double dxi = max_jet_gap(x.trajectory, y.trajectory);
  return {du <= 1e-8 && dxi <= 1e-8, fmt("unknowns differ by %.3g, jet histories by %.3g (bound 1e-8)", du, dxi)};
}

Outcome integrator_order() {
  std::mt19937_64 rng(106);
  const Metric m(LieAlgebra::so3(), Matrix(Eigen::Vector3d(1, 2, 3).asDiagonal()));
  const LieAlgebra& a = m.algebra();
  const SystemState init{0.0, {{a.exp(random_vector(rng, 3)), random_vector(rng, 3), random_vector(rng, 3),
                                random_vector(rng, 3)}}};
  const auto end = [&](double h) {
    IntegratorSettings s;
    s.step = h;
    return integrate_ivp(m, Graph(1, {}), PotentialField{}, init, 1.0, s).samples.back().jets[0];
  };
  const auto gap = [&](const AgentJet& x, const AgentJet& y) {
    return std::max({(x.g.value() - y.g.value()).norm(), (x.xi0 - y.xi0).norm(), (x.xi1 - y.xi1).norm(),
                     (x.xi2 - y.xi2).norm()});
  };
  // Error at h measured against the half-step run.
  const AgentJet j1 = end(0.05), j2 = end(0.025), j3 = end(0.0125), j4 = end(0.00625);
  const double r1 = gap(j1, j2) / gap(j2, j3);
  const double r2 = gap(j2, j3) / gap(j3, j4);
  const bool ok = r1 >= 12.0 && r1 <= 20.0 && r2 >= 12.0 && r2 <= 20.0;
  return {ok, fmt("error ratios %.4g (h = 0.05 / 0.025) and %.4g (h = 0.025 / 0.0125), target 16 +- 25%%", r1, r2)};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_scenarios = argv[1];
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"Euclidean degeneration", hermite},
      {"connection identities", connection_identities},
      {"bi-invariant closed forms", bi_invariant_forms},
      {"distance left-invariance", distance_invariance},
      {"cubic first integral", first_integral_conservation},
      {"reduced/unreduced equivalence", residual_equivalence},
      {"cross-formulation agreement", cross_formulation},
      {"oracle agreement", oracle_agreement},
      {"avoidance behavior", avoidance},
      {"equivariance", equivariance},
      {"integrator order", integrator_order},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const Error& e) {
      o = {false, std::string(to_string(e.code())) + ": " + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.passed) ++failures;
    std::printf("%s %2zu %-30s %s [%.1f s]\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
