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

#include "liecoll/dynamics.hpp"

#include <cmath>

#include "rkmk.hpp"

namespace liecoll {

void IntegratorSettings::validate() const {
  if (!(step > 0.0) || !std::isfinite(step)) fail(ErrorCode::kValidation, "integrator step must be positive");
}

namespace {

void check_jets(const Metric& metric, const Graph& graph, const std::vector<AgentJet>& jets) {
  if (static_cast<int>(jets.size()) != graph.agent_count()) {
    fail(ErrorCode::kInvalidInput, "state has " + std::to_string(jets.size()) + " agents, graph has " +
                                       std::to_string(graph.agent_count()));
  }
  const LieAlgebra& a = metric.algebra();
  for (const auto& jet : jets) {
    a.check_element(jet.g, "agent position");
    a.check_vector(jet.xi0, "xi0");
    a.check_vector(jet.xi1, "xi1");
    a.check_vector(jet.xi2, "xi2");
  }
}

std::map<int, GroupElement> row(const Graph& graph, const RelativePoses& relative, int j) {
  std::map<int, GroupElement> out;
  for (int r : graph.neighbors(j)) {
    const auto it = relative.find({j, r});
    if (it == relative.end()) {
      fail(ErrorCode::kInvalidInput, "missing relative pose h_" + std::to_string(j + 1) + "," +
                                         std::to_string(r + 1));
    }
    out.emplace(r, it->second);
  }
  return out;
}

void require_bi_invariant(const Metric& metric) {
  if (!metric.bi_invariant()) {
    fail(ErrorCode::kBiInvariantRequired, "this formulation requires a bi-invariant metric");
  }
}

}  // namespace

RelativePoses relative_poses(const LieAlgebra& algebra, const Graph& graph,
                             const std::vector<AgentJet>& jets) {
  RelativePoses out;
  for (auto [j, k] : graph.edges()) {
    const auto& gj = jets.at(static_cast<std::size_t>(j)).g;
    const auto& gk = jets.at(static_cast<std::size_t>(k)).g;
    out.emplace(std::make_pair(j, k), algebra.between(gj, gk));
    out.emplace(std::make_pair(k, j), algebra.between(gk, gj));
  }
  return out;
}

std::vector<JetRates> jet_rates_left_invariant(const Metric& metric, const Graph& graph,
                                               const PotentialField& field,
                                               const std::vector<AgentJet>& jets,
                                               const RelativePoses& relative) {
  check_jets(metric, graph, jets);
  std::vector<JetRates> rates(jets.size());
  for (std::size_t j = 0; j < jets.size(); ++j) {
    const AgentJet& s = jets[j];
    const Vector force = agent_force(graph, field, metric, static_cast<int>(j),
                                     row(graph, relative, static_cast<int>(j)));
    rates[j].xi0 = s.xi1 - metric.connection(s.xi0, s.xi0);
    rates[j].xi1 = s.xi2 - metric.connection(s.xi0, s.xi1);
    rates[j].xi2 = -metric.connection(s.xi0, s.xi2) - metric.curvature(s.xi1, s.xi0, s.xi0) + force;
  }
  return rates;
}

std::vector<JetRates> jet_rates_left_invariant(const Metric& metric, const Graph& graph,
                                               const PotentialField& field,
                                               const SystemState& state) {
  check_jets(metric, graph, state.jets);
  return jet_rates_left_invariant(metric, graph, field, state.jets,
                                  relative_poses(metric.algebra(), graph, state.jets));
}

std::vector<JetRates> jet_rates_bi_invariant(const Metric& metric, const Graph& graph,
                                             const PotentialField& field,
                                             const std::vector<AgentJet>& jets,
                                             const RelativePoses& relative) {
  require_bi_invariant(metric);
  check_jets(metric, graph, jets);
  const LieAlgebra& a = metric.algebra();
  std::vector<JetRates> rates(jets.size());
  for (std::size_t j = 0; j < jets.size(); ++j) {
    const AgentJet& s = jets[j];
    const Vector force = agent_force(graph, field, metric, static_cast<int>(j),
                                     row(graph, relative, static_cast<int>(j)));
    rates[j].xi0 = s.xi1;
    rates[j].xi1 = s.xi2;
    rates[j].xi2 = -a.bracket(s.xi0, s.xi2) + force;
  }
  return rates;
}

std::vector<JetRates> jet_rates_bi_invariant(const Metric& metric, const Graph& graph,
                                             const PotentialField& field,
                                             const SystemState& state) {
  require_bi_invariant(metric);
  check_jets(metric, graph, state.jets);
  return jet_rates_bi_invariant(metric, graph, field, state.jets,
                                relative_poses(metric.algebra(), graph, state.jets));
}

std::vector<AgentJet> convert_jets(const Metric& metric, ChartDirection direction,
                                   const std::vector<AgentJet>& jets) {
  require_bi_invariant(metric);
  const LieAlgebra& a = metric.algebra();
  std::vector<AgentJet> out = jets;
  const double sign = direction == ChartDirection::kCovariantToDerivative ? -0.5 : 0.5;
  for (auto& jet : out) {
    a.check_vector(jet.xi0, "xi0");
    a.check_vector(jet.xi1, "xi1");
    a.check_vector(jet.xi2, "xi2");
    // xi'' = xi2 - 1/2 [xi, xi'] and xi' = xi1.
    jet.xi2 = jet.xi2 + sign * a.bracket(jet.xi0, jet.xi1);
  }
  return out;
}

int step_count(double duration, double step) {
  if (!(duration > 0.0) || !std::isfinite(duration)) fail(ErrorCode::kInvalidInput, "duration must be positive");
  return std::max(1, static_cast<int>(std::llround(duration / step)));
}

double first_integral(const Metric& metric, const AgentJet& jet) {
  return metric.inner(jet.xi2, jet.xi0) - 0.5 * metric.inner(jet.xi1, jet.xi1);
}

Trajectory integrate_ivp(const Metric& metric, const Graph& graph, const PotentialField& field,
                         const SystemState& initial, double duration,
                         const IntegratorSettings& settings) {
  settings.validate();
  check_jets(metric, graph, initial.jets);
  const bool bi = settings.formulation == Formulation::kBiInvariant;
  if (bi) require_bi_invariant(metric);
  const LieAlgebra& a = metric.algebra();
  const int n = a.dim();
  const auto s = static_cast<int>(initial.jets.size());
  const bool track_h = settings.relative_pose == RelativePosePolicy::kIntegrateOde;
  const auto& edges = graph.edges();
  const Eigen::Index h_rows = a.matrix_size();
  const Eigen::Index h_cols = a.kind() == GroupKind::kAbelian ? 1 : a.matrix_size();
  const Eigen::Index h_size = h_rows * h_cols;

  const std::vector<AgentJet> start =
      bi ? convert_jets(metric, ChartDirection::kCovariantToDerivative, initial.jets) : initial.jets;

  detail::LieState state;
  state.flat.resize(3 * n * s + (track_h ? h_size * static_cast<Eigen::Index>(edges.size()) : 0));
  for (int j = 0; j < s; ++j) {
    const auto& jet = start[static_cast<std::size_t>(j)];
    state.groups.push_back(jet.g);
    state.flat.segment(3 * n * j, n) = jet.xi0;
    state.flat.segment(3 * n * j + n, n) = jet.xi1;
    state.flat.segment(3 * n * j + 2 * n, n) = jet.xi2;
  }
  const Eigen::Index h_offset = 3 * n * s;
  auto h_at = [&](const Vector& y, std::size_t e) {
    return GroupElement(Eigen::Map<const Matrix>(y.data() + h_offset + static_cast<Eigen::Index>(e) * h_size,
                                                 h_rows, h_cols));
  };
  if (track_h) {
    const RelativePoses rel = relative_poses(a, graph, start);
    for (std::size_t e = 0; e < edges.size(); ++e) {
      const Matrix& h = rel.at(edges[e]).value();
      state.flat.segment(h_offset + static_cast<Eigen::Index>(e) * h_size, h_size) =
          Eigen::Map<const Vector>(h.data(), h_size);
    }
  }

  auto unpack = [&](const std::vector<GroupElement>& groups, const Vector& y) {
    std::vector<AgentJet> jets(static_cast<std::size_t>(s));
    for (int j = 0; j < s; ++j) {
      auto& jet = jets[static_cast<std::size_t>(j)];
      jet.g = groups[static_cast<std::size_t>(j)];
      jet.xi0 = y.segment(3 * n * j, n);
      jet.xi1 = y.segment(3 * n * j + n, n);
      jet.xi2 = y.segment(3 * n * j + 2 * n, n);
    }
    return jets;
  };

  auto rates = [&](const std::vector<GroupElement>& groups, const Vector& y, std::vector<Vector>& vel,
                   Vector& ydot) {
    const std::vector<AgentJet> jets = unpack(groups, y);
    RelativePoses rel;
    if (track_h) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        GroupElement h = h_at(y, e);
        rel.emplace(std::make_pair(edges[e].second, edges[e].first), a.inverse(h));
        rel.emplace(edges[e], std::move(h));
      }
    } else {
      rel = relative_poses(a, graph, jets);
    }
    const std::vector<JetRates> r = bi ? jet_rates_bi_invariant(metric, graph, field, jets, rel)
                                       : jet_rates_left_invariant(metric, graph, field, jets, rel);
    ydot.resize(y.size());
    for (int j = 0; j < s; ++j) {
      const auto& rj = r[static_cast<std::size_t>(j)];
      vel[static_cast<std::size_t>(j)] = jets[static_cast<std::size_t>(j)].xi0;
      ydot.segment(3 * n * j, n) = rj.xi0;
      ydot.segment(3 * n * j + n, n) = rj.xi1;
      ydot.segment(3 * n * j + 2 * n, n) = rj.xi2;
    }
    if (track_h) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto [j, k] = edges[e];
        const GroupElement h = h_at(y, e);
        const Matrix hdot = a.left_translate(h, jets[static_cast<std::size_t>(k)].xi0) -
                            a.right_translate(jets[static_cast<std::size_t>(j)].xi0, h);
        ydot.segment(h_offset + static_cast<Eigen::Index>(e) * h_size, h_size) =
            Eigen::Map<const Vector>(hdot.data(), h_size);
      }
    }
  };

  auto record = [&](double t, const detail::LieState& st) {
    SystemState sample;
    sample.t = t;
    sample.jets = unpack(st.groups, st.flat);
    if (bi) sample.jets = convert_jets(metric, ChartDirection::kDerivativeToCovariant, sample.jets);
    return sample;
  };

  const int steps = step_count(duration, settings.step);
  const double h = duration / steps;
  Trajectory traj;
  traj.step = h;
  traj.samples.reserve(static_cast<std::size_t>(steps) + 1);
  traj.samples.push_back(record(initial.t, state));
  for (int i = 0; i < steps; ++i) {
    state = detail::rkmk4_step(a, state, h, rates);
    if (!state.flat.allFinite()) {
      fail(ErrorCode::kNonFinite, "integration produced non-finite values at t = " +
                                      std::to_string(initial.t + (i + 1) * h));
    }
    for (const auto& g : state.groups) {
      if (!g.value().allFinite()) fail(ErrorCode::kNonFinite, "integration produced a non-finite position");
    }
    if (track_h) {
      for (std::size_t e = 0; e < edges.size(); ++e) {
        const Matrix projected = a.project(h_at(state.flat, e)).value();
        state.flat.segment(h_offset + static_cast<Eigen::Index>(e) * h_size, h_size) =
            Eigen::Map<const Vector>(projected.data(), h_size);
        const auto [j, k] = edges[e];
        const Matrix exact = a.between(state.groups[static_cast<std::size_t>(j)],
                                       state.groups[static_cast<std::size_t>(k)]).value();
        traj.relative_pose_drift = std::max(traj.relative_pose_drift, (projected - exact).norm());
      }
    }
    // Last sample lands exactly on the end of the interval.
    const double t = i + 1 == steps ? initial.t + duration : initial.t + (i + 1) * h;
    traj.samples.push_back(record(t, state));
  }
  return traj;
}

}  // namespace liecoll
