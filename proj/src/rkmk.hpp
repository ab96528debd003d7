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

#include <vector>

#include "liecoll/algebra.hpp"

namespace liecoll::detail {

/// Inverse of the left-trivialized exp derivative at -u, truncated after
/// the second bracket. Enough for fourth order.
inline Vector left_dexpinv(const LieAlgebra& a, const Vector& u, const Vector& xi) {
  if (a.kind() == GroupKind::kAbelian) return xi;
  const Vector b = a.bracket(u, xi);
  return xi + 0.5 * b + a.bracket(u, b) / 12.0;
}

/// Product state: several group elements with left-trivialized velocities
/// plus a flat vector part.
struct LieState {
  std::vector<GroupElement> groups;
  Vector flat;
};

/**
 * One Runge-Kutta-Munthe-Kaas step (classical RK4 tableau) for
 *   g_i' = g_i * xi_i(g, y),   y' = F(g, y).
 *
 * `rates(groups, flat, xi, ydot)` fills the body velocities xi (one per
 * group element) and the flat rate ydot. Group parts are re-projected onto
 * the group after the step.
 */
template <class Rates>
LieState rkmk4_step(const LieAlgebra& a, const LieState& s, double h, Rates&& rates) {
  const std::size_t ng = s.groups.size();
  std::vector<Vector> xi(ng);
  Vector ydot;
  std::vector<Vector> k[4];
  Vector ky[4];
  for (auto& kk : k) kk.resize(ng);

  rates(s.groups, s.flat, xi, ydot);
  for (std::size_t i = 0; i < ng; ++i) k[0][i] = h * xi[i];
  ky[0] = h * ydot;

  static constexpr double kNodes[3] = {0.5, 0.5, 1.0};
  std::vector<GroupElement> gs(ng);
  for (int stage = 1; stage < 4; ++stage) {
    const double c = kNodes[stage - 1];
    std::vector<Vector> u(ng);
    for (std::size_t i = 0; i < ng; ++i) {
      u[i] = c * k[stage - 1][i];
      gs[i] = a.compose(s.groups[i], a.exp(u[i]));
    }
    const Vector y = s.flat + c * ky[stage - 1];
    rates(gs, y, xi, ydot);
    for (std::size_t i = 0; i < ng; ++i) k[stage][i] = h * left_dexpinv(a, u[i], xi[i]);
    ky[stage] = h * ydot;
  }

  LieState next;
  next.groups.resize(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    const Vector u = (k[0][i] + 2.0 * k[1][i] + 2.0 * k[2][i] + k[3][i]) / 6.0;
    next.groups[i] = a.project(a.compose(s.groups[i], a.exp(u)));
  }
  next.flat = s.flat + (ky[0] + 2.0 * ky[1] + 2.0 * ky[2] + ky[3]) / 6.0;
  return next;
}

}  // namespace liecoll::detail
