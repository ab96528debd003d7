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

#include "liecoll/run.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include <json.hpp>

namespace liecoll {

using nlohmann::json;

namespace {

// Acceptance thresholds that do not live in the scenario file.
constexpr double kTerminalBound = 1e-7;
constexpr double kHermiteBound = 1e-6;
constexpr double kFirstIntegralBound = 1e-6;
constexpr double kRelativePoseBound = 1e-6;
constexpr double kOrderLow = 3.5;
constexpr double kOrderHigh = 4.5;
constexpr double kOracleGradientBound = 1e-3;
constexpr double kOracleDistanceBound = 1e-3;

Check at_most(std::string name, double value, double bound) {
  return {std::move(name), value, bound, "<=", 0.0, std::isfinite(value) && value <= bound};
}

Check within(std::string name, double value, double lo, double hi) {
  return {std::move(name), value, lo, "in", hi, std::isfinite(value) && value >= lo && value <= hi};
}

json vec(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json check_json(const Check& c) {
  json out = {{"name", c.name}, {"value", c.value}, {"comparison", c.comparison}, {"passed", c.passed}};
  if (c.comparison == "in") {
    out["bounds"] = {c.threshold, c.upper};
  } else {
    out["threshold"] = c.threshold;
  }
  return out;
}

std::vector<double> first_integral_drift(const Metric& metric, const Trajectory& traj) {
  std::vector<double> out;
  for (int j = 0; j < traj.agent_count(); ++j) {
    const auto u = static_cast<std::size_t>(j);
    const double i0 = first_integral(metric, traj.samples.front().jets[u]);
    double drift = 0.0;
    for (const auto& s : traj.samples) drift = std::max(drift, std::abs(first_integral(metric, s.jets[u]) - i0));
    out.push_back(drift);
  }
  return out;
}

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

class Runner {
 public:
  Runner(const Scenario& sc, RunMode mode)
      : sc_(sc), mode_(mode), problem_(sc.problem()), bc_(sc.boundary()) {}

  RunResult execute() {
    RunResult result;
    result.mode = mode_;
    summary_["schema"] = "liecoll.summary/1";
    summary_["mode"] = to_string(mode_);
    summary_["scenario"] = {
        {"group", problem_.algebra().name()},
        {"dimension", problem_.algebra().dim()},
        {"agents", problem_.graph.agent_count()},
        {"edges", problem_.graph.edges().size()},
        {"formulation", sc_.formulation == Formulation::kBiInvariant ? "bi-invariant" : "left-invariant"},
        {"potential", to_string(sc_.field.uniform.family)},
        {"interval", {sc_.t0, sc_.t1}},
        {"step", sc_.integrator.step},
        {"seed", sc_.seed},
    };
    try {
      if (mode_ == RunMode::kIntegrate) {
        integrate();
      } else {
        solve();
        if (mode_ == RunMode::kVerify || mode_ == RunMode::kAll) verify();
        if (mode_ == RunMode::kOracle || mode_ == RunMode::kAll) oracle();
      }
    } catch (const Error& e) {
      result.error = e.code();
      result.error_message = e.what();
    }
    if (traj_) {
      describe_trajectory();
      result.trajectory_csv = trajectory_csv(problem_.algebra(), *traj_);
    }
    result.checks = checks_;
    json checks = json::array();
    for (const auto& c : checks_) checks.push_back(check_json(c));
    summary_["checks"] = checks;
    summary_["status"] = result.error ? to_string(*result.error) : "ok";
    summary_["error"] = result.error ? json(result.error_message) : json(nullptr);
    summary_["passed"] = result.passed();
    result.summary_json = summary_.dump(2) + "\n";
    return result;
  }

 private:
  bool zero_potential() const { return problem_.field.all_zero(problem_.graph); }

  void integrate() {
    traj_ = problem_.integrate(sc_.initial_state(), sc_.t1 - sc_.t0);
    if (zero_potential()) {
      checks_.push_back(at_most("first_integral_drift", max_of(first_integral_drift(problem_.metric, *traj_)),
                                kFirstIntegralBound));
    }
    if (sc_.integrator.relative_pose == RelativePosePolicy::kIntegrateOde) {
      checks_.push_back(at_most("relative_pose_drift", traj_->relative_pose_drift, kRelativePoseBound));
    }
  }

  void solve() {
    BvpSolution sol;
    std::optional<BvpNoConvergence> failure;
    try {
      sol = solve_bvp(problem_, bc_, sc_.shooting);
    } catch (const BvpNoConvergence& e) {
      failure = e;
      sol = e.best();
    }
    const BvpReport& r = sol.report;
    json block = {
        {"converged", r.converged},
        {"iterations", r.iterations},
        {"residual_evaluations", r.residual_evaluations},
        {"residual_norm", r.residual_norm},
        {"terminal_position_error", r.terminal_position_error},
        {"terminal_velocity_error", r.terminal_velocity_error},
        {"starts_tried", r.starts_tried},
        {"starts_converged", r.starts_converged},
        {"selected_start", r.selected_start},
        {"unknowns", vec(sol.unknowns)},
        {"hermite_error", nullptr},
    };
    if (!sol.trajectory.samples.empty()) traj_ = sol.trajectory;
    checks_.push_back(at_most("shooting_residual", r.residual_norm, sc_.shooting.tolerance));
    checks_.push_back(at_most("terminal_position_error", r.terminal_position_error, kTerminalBound));
    checks_.push_back(at_most("terminal_velocity_error", r.terminal_velocity_error, kTerminalBound));
    if (traj_ && problem_.algebra().kind() == GroupKind::kAbelian && zero_potential()) {
      const double err = hermite_error(bc_, *traj_);
      block["hermite_error"] = err;
      checks_.push_back(at_most("hermite_error", err, kHermiteBound));
    }
    if (traj_ && zero_potential()) {
      checks_.push_back(at_most("first_integral_drift", max_of(first_integral_drift(problem_.metric, *traj_)),
                                kFirstIntegralBound));
    }
    summary_["solve"] = block;
    if (failure) throw *failure;
  }

  void verify() {
    const ResidualOrder order = residual_order(problem_, *traj_, sc_.verify.h_fd);
    const double check = unreduced_residual(problem_, *traj_, sc_.verify.h_fd_check).max_norm();
    const double j_cont = evaluate_J(problem_, *traj_);
    const double j_disc = discrete_J(problem_, discretize(problem_.algebra(), *traj_, sc_.oracle.segments));
    summary_["verify"] = {
        {"h_fd", order.coarse_step},
        {"h_fd_half", order.fine_step},
        {"residual_coarse", order.coarse},
        {"residual_fine", order.fine},
        {"residual_noise_floor", order.noise_floor},
        {"residual_ratio_measurable", order.measurable},
        {"residual_ratio", order.ratio},
        {"h_fd_check", sc_.verify.h_fd_check},
        {"residual_check", check},
        {"functional", j_cont},
        {"functional_discrete", j_disc},
        {"segments", sc_.oracle.segments},
    };
    if (order.measurable) {
      checks_.push_back(within("residual_order_ratio", order.ratio, kOrderLow, kOrderHigh));
    }
    checks_.push_back(at_most("residual_at_check_step", check, sc_.verify.residual_bound));
  }

  void oracle() {
    const LieAlgebra& a = problem_.algebra();
    const DiscretePath path = discretize(a, *traj_, sc_.oracle.segments);
    const double gn = discrete_gradient_norm(problem_, path, sc_.oracle.fd_step);
    const DiscretePath init = perturb_interior(a, path, sc_.oracle.perturbation, sc_.seed);
    OracleResult res;
    bool converged = true;
    std::string message;
    try {
      res = oracle_minimize(problem_, bc_, init, sc_.oracle);
    } catch (const OracleMaxIterations& e) {
      res = e.best();
      converged = false;
      message = e.what();
    }
    const double dist = node_distance(problem_.metric, res.path, path, problem_.field.geodesic);
    summary_["oracle"] = {
        {"segments", sc_.oracle.segments},
        {"gradient_norm_at_solution", gn},
        {"perturbation", sc_.oracle.perturbation},
        {"initial_value", res.initial_value},
        {"value", res.value},
        {"iterations", res.iterations},
        {"converged", converged},
        {"gradient_norm", res.gradient_norm},
        {"node_distance", dist},
        {"message", converged ? json(nullptr) : json(message)},
    };
    checks_.push_back(at_most("oracle_gradient_norm_at_solution", gn, kOracleGradientBound));
    checks_.push_back(at_most("oracle_gradient_norm", res.gradient_norm, sc_.oracle.tolerance));
    checks_.push_back(at_most("oracle_node_distance", dist, kOracleDistanceBound));
    checks_.push_back(at_most("oracle_descent", res.value - res.initial_value, 0.0));
  }

  void describe_trajectory() {
    const Trajectory& t = *traj_;
    json block = {
        {"samples", t.samples.size()},
        {"rows", t.samples.size() * static_cast<std::size_t>(t.agent_count())},
        {"step", t.step},
        {"relative_pose_drift", t.relative_pose_drift},
        {"first_integral_drift", nullptr},
        {"min_pairwise_distance", nullptr},
        {"functional", nullptr},
    };
    if (zero_potential()) {
      json drift = json::array();
      for (double d : first_integral_drift(problem_.metric, t)) drift.push_back(d);
      block["first_integral_drift"] = drift;
    }
    try {
      if (t.agent_count() >= 2) {
        const ClosestApproach c = min_pairwise_distance(problem_.metric, t, problem_.field.geodesic);
        block["min_pairwise_distance"] = {
            {"distance", c.distance}, {"agents", {c.first + 1, c.second + 1}}, {"time", c.time}};
      }
      block["functional"] = evaluate_J(problem_, t);
    } catch (const Error& e) {
      block["note"] = e.what();
    }
    summary_["trajectory"] = block;
  }

  const Scenario& sc_;
  RunMode mode_;
  Problem problem_;
  BoundaryConditions bc_;
  std::optional<Trajectory> traj_;
  std::vector<Check> checks_;
  json summary_;
};

}  // namespace

RunMode parse_mode(const std::string& name) {
  for (auto m : {RunMode::kIntegrate, RunMode::kSolve, RunMode::kVerify, RunMode::kOracle, RunMode::kAll}) {
    if (name == to_string(m)) return m;
  }
  fail(ErrorCode::kInvalidInput, "unknown mode '" + name + "' (expected integrate, solve, verify, oracle or all)");
}

const char* to_string(RunMode mode) {
  switch (mode) {
    case RunMode::kIntegrate: return "integrate";
    case RunMode::kSolve: return "solve";
    case RunMode::kVerify: return "verify";
    case RunMode::kOracle: return "oracle";
    case RunMode::kAll: return "all";
  }
  return "unknown";
}

bool RunResult::passed() const {
  if (error) return false;
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string trajectory_csv(const LieAlgebra& algebra, const Trajectory& traj) {
  const int n = algebra.dim();
  const Eigen::Index coords = traj.samples.empty() ? 0 : traj.samples.front().jets.front().g.value().size();
  std::string out = "t,agent";
  for (Eigen::Index i = 1; i <= coords; ++i) out += ",g" + std::to_string(i);
  for (int k = 0; k < 3; ++k) {
    for (int i = 1; i <= n; ++i) out += ",xi" + std::to_string(k) + "_" + std::to_string(i);
  }
  out += "\n";
  char buf[40];
  auto put = [&](double v) {
    std::snprintf(buf, sizeof buf, ",%.17g", v);
    out += buf;
  };
  for (const auto& s : traj.samples) {
    for (std::size_t j = 0; j < s.jets.size(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", s.t);
      out += buf;
      out += "," + std::to_string(j + 1);
      const Matrix& g = s.jets[j].g.value();
      for (Eigen::Index r = 0; r < g.rows(); ++r) {
        for (Eigen::Index c = 0; c < g.cols(); ++c) put(g(r, c));
      }
      for (const Vector* v : {&s.jets[j].xi0, &s.jets[j].xi1, &s.jets[j].xi2}) {
        for (Eigen::Index i = 0; i < v->size(); ++i) put((*v)(i));
      }
      out += "\n";
    }
  }
  return out;
}

ClosestApproach min_pairwise_distance(const Metric& metric, const Trajectory& traj,
                                      const GeodesicSettings& settings) {
  ClosestApproach best;
  best.distance = std::numeric_limits<double>::infinity();
  const int s = traj.agent_count();
  if (s < 2) fail(ErrorCode::kInvalidInput, "pairwise distance needs at least two agents");
  const bool cheap = metric.algebra().kind() == GroupKind::kAbelian || (metric.bi_invariant() && settings.closed_form);
  // Shooting-based distances are costly; thin the samples to about 200.
  const std::size_t stride = cheap ? 1 : std::max<std::size_t>(1, traj.samples.size() / 200);
  for (std::size_t i = 0; i < traj.samples.size(); i += stride) {
    const auto& st = traj.samples[i];
    for (int j = 0; j < s; ++j) {
      for (int k = j + 1; k < s; ++k) {
        const double d = distance(metric, st.jets[static_cast<std::size_t>(j)].g, st.jets[static_cast<std::size_t>(k)].g, settings);
        if (d < best.distance) best = {d, j, k, st.t};
      }
    }
  }
  return best;
}

double hermite_error(const BoundaryConditions& bc, const Trajectory& traj) {
  const double T = bc.duration();
  double worst = 0.0;
  for (std::size_t j = 0; j < bc.agents.size(); ++j) {
    const auto& ag = bc.agents[j];
    const Vector q0 = ag.start.value().col(0);
    const Vector delta = ag.end.value().col(0) - q0;
    const Vector c2 = (3.0 * delta - (2.0 * ag.start_velocity + ag.end_velocity) * T) / (T * T);
    const Vector c3 = (-2.0 * delta + (ag.start_velocity + ag.end_velocity) * T) / (T * T * T);
    for (const auto& s : traj.samples) {
      const double tau = s.t - bc.t0;
      const Vector q = q0 + ag.start_velocity * tau + c2 * tau * tau + c3 * tau * tau * tau;
      worst = std::max(worst, (s.jets[j].g.value().col(0) - q).cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

RunResult run(const Scenario& scenario, RunMode mode) {
  scenario.validate();
  return Runner(scenario, mode).execute();
}

void write_run(const RunResult& result, const std::string& directory) {
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  if (ec) fail(ErrorCode::kIo, "cannot create output directory '" + directory + "': " + ec.message());
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = std::filesystem::path(directory) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::kIo, "cannot write '" + path.string() + "'");
    out << text;
    if (!out) fail(ErrorCode::kIo, "write to '" + path.string() + "' failed");
  };
  if (!result.trajectory_csv.empty()) write("trajectory.csv", result.trajectory_csv);
  write("summary.json", result.summary_json);
}

}  // namespace liecoll
