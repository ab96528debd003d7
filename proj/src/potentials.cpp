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

#include "liecoll/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace liecoll {

Graph::Graph(int agent_count, const std::vector<Edge>& edges) : agent_count_(agent_count) {
  if (agent_count < 1) fail(ErrorCode::kValidation, "agent count must be positive");
  std::set<Edge> seen;
  for (auto [j, k] : edges) {
    if (j < 0 || k < 0 || j >= agent_count || k >= agent_count) {
      fail(ErrorCode::kValidation, "edge {" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                       "} references a missing agent");
    }
    if (j == k) {
      fail(ErrorCode::kValidation, "edge {" + std::to_string(j + 1) + "," + std::to_string(k + 1) +
                                       "} is a self-loop");
    }
    const Edge canonical = std::minmax(j, k);
    if (!seen.insert(canonical).second) {
      fail(ErrorCode::kValidation, "duplicate edge {" + std::to_string(canonical.first + 1) + "," +
                                       std::to_string(canonical.second + 1) + "}");
    }
  }
  edges_.assign(seen.begin(), seen.end());
  neighbors_.resize(static_cast<std::size_t>(agent_count));
  for (auto [j, k] : edges_) {
    neighbors_[static_cast<std::size_t>(j)].push_back(k);
    neighbors_[static_cast<std::size_t>(k)].push_back(j);
  }
  for (auto& n : neighbors_) std::sort(n.begin(), n.end());
}

Graph Graph::complete(int agent_count) {
  std::vector<Edge> edges;
  for (int j = 0; j < agent_count; ++j) {
    for (int k = j + 1; k < agent_count; ++k) edges.emplace_back(j, k);
  }
  return Graph(agent_count, edges);
}

bool Graph::connected(int j, int k) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge(std::minmax(j, k)));
}

const char* to_string(PotentialFamily family) {
  switch (family) {
    case PotentialFamily::kZero: return "zero";
    case PotentialFamily::kInverseShifted: return "inverse_shifted";
    case PotentialFamily::kGaussian: return "gaussian";
    case PotentialFamily::kLinear: return "linear";
  }
  return "unknown";
}

void PotentialSpec::validate() const {
  if (!(gain >= 0.0) || !std::isfinite(gain)) fail(ErrorCode::kValidation, "potential gain must be >= 0");
  if (family != PotentialFamily::kZero && family != PotentialFamily::kLinear &&
      (!(shape > 0.0) || !std::isfinite(shape))) {
    fail(ErrorCode::kValidation, "potential shape parameter must be > 0");
  }
}

double PotentialSpec::value(double x) const {
  switch (family) {
    case PotentialFamily::kZero: return 0.0;
    case PotentialFamily::kInverseShifted: return gain / (x + shape);
    case PotentialFamily::kGaussian: return gain * std::exp(-x / (shape * shape));
    case PotentialFamily::kLinear: return gain * x;
  }
  return 0.0;
}

double PotentialSpec::derivative(double x) const {
  switch (family) {
    case PotentialFamily::kZero: return 0.0;
    case PotentialFamily::kInverseShifted: return -gain / ((x + shape) * (x + shape));
    case PotentialFamily::kGaussian: {
      const double s2 = shape * shape;
      return -gain / s2 * std::exp(-x / s2);
    }
    case PotentialFamily::kLinear: return gain;
  }
  return 0.0;
}

const PotentialSpec& PotentialField::for_edge(int j, int k) const {
  const auto it = overrides.find(std::minmax(j, k));
  return it == overrides.end() ? uniform : it->second;
}

bool PotentialField::all_zero(const Graph& graph) const {
  return std::all_of(graph.edges().begin(), graph.edges().end(),
                     [&](const Graph::Edge& e) { return for_edge(e.first, e.second).is_zero(); });
}

double eval_potential(const PotentialSpec& p, const Metric& metric, const GroupElement& h,
                      const GeodesicSettings& settings) {
  if (p.family == PotentialFamily::kZero) return 0.0;
  const double d = distance(metric, metric.algebra().identity(), h, settings);
  return p.value(d * d);
}

Vector grad1_potential(const PotentialSpec& p, const Metric& metric, const GroupElement& h,
                       const GeodesicSettings& settings) {
  const LieAlgebra& a = metric.algebra();
  if (p.family == PotentialFamily::kZero) return a.zero();
  const Vector v = riemannian_log(metric, a.identity(), h, settings);
  const double d2 = metric.inner(v, v);
  return -2.0 * p.derivative(d2) * v;
}

Vector grad1_potential_fd(const PotentialSpec& p, const Metric& metric, const GroupElement& h,
                          double step, const GeodesicSettings& settings) {
  const LieAlgebra& a = metric.algebra();
  if (p.family == PotentialFamily::kZero) return a.zero();
  Vector covector(a.dim());
  for (int i = 0; i < a.dim(); ++i) {
    const Vector w = Vector::Unit(a.dim(), i);
    // Moving the first argument to exp(u w) turns h into exp(-u w) h.
    const double plus = eval_potential(p, metric, a.compose(a.exp(-step * w), h), settings);
    const double minus = eval_potential(p, metric, a.compose(a.exp(step * w), h), settings);
    covector(i) = (plus - minus) / (2.0 * step);
  }
  return metric.sharp(covector);
}

Vector agent_force(const Graph& graph, const PotentialField& field, const Metric& metric, int j,
                   const std::map<int, GroupElement>& relative) {
  const LieAlgebra& a = metric.algebra();
  if (j < 0 || j >= graph.agent_count()) fail(ErrorCode::kInvalidInput, "agent index out of range");
  const auto& nbrs = graph.neighbors(j);
  if (relative.size() != nbrs.size()) {
    fail(ErrorCode::kInvalidInput, "relative poses must cover exactly the neighbors of agent " +
                                       std::to_string(j + 1));
  }
  Vector force = a.zero();
  for (int r : nbrs) {
    const auto it = relative.find(r);
    if (it == relative.end()) {
      fail(ErrorCode::kInvalidInput, "missing relative pose for neighbor " + std::to_string(r + 1) +
                                         " of agent " + std::to_string(j + 1));
    }
    const PotentialSpec& p = field.for_edge(j, r);
    if (p.is_zero()) continue;
    if (field.gradient == GradientMethod::kFiniteDifference) {
      force -= grad1_potential_fd(p, metric, it->second, field.fd_step, field.geodesic);
    } else {
      force -= grad1_potential(p, metric, it->second, field.geodesic);
    }
  }
  return force;
}

}  // namespace liecoll
