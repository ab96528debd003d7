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

#include "liecoll/geodesics.hpp"

#include <cmath>
#include <sstream>

#include "rkmk.hpp"

namespace liecoll {

void GeodesicSettings::validate() const {
  if (!(step > 0.0)) fail(ErrorCode::kValidation, "geodesic step must be positive");
  if (!(log_tolerance > 0.0)) fail(ErrorCode::kValidation, "log tolerance must be positive");
  if (max_newton_iterations <= 0) fail(ErrorCode::kValidation, "max Newton iterations must be positive");
}

Vector euler_arnold_rhs(const Metric& metric, const Vector& xi) {
  return metric.ad_dagger(xi, xi);
}

namespace {

bool use_closed_form(const Metric& metric, const GeodesicSettings& settings) {
  return metric.algebra().kind() == GroupKind::kAbelian ||
         (settings.closed_form && metric.bi_invariant());
}

}  // namespace

GeodesicPoint integrate_geodesic(const Metric& metric, const GroupElement& g0, const Vector& v,
                                 double t, const GeodesicSettings& settings) {
  const LieAlgebra& a = metric.algebra();
  a.check_element(g0, "geodesic start");
  a.check_vector(v, "geodesic velocity");
  if (!std::isfinite(t)) fail(ErrorCode::kInvalidInput, "geodesic time must be finite");
  if (t == 0.0) return {g0, v};
  if (use_closed_form(metric, settings)) {
    return {a.compose(g0, a.exp(t * v)), v};
  }
  settings.validate();
  const int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / settings.step - 1e-9)));
  const double h = t / steps;
  detail::LieState state{{g0}, v};
  auto rates = [&](const std::vector<GroupElement>&, const Vector& xi, std::vector<Vector>& vel,
                   Vector& xidot) {
    vel[0] = xi;
    xidot = metric.ad_dagger(xi, xi);
  };
  for (int i = 0; i < steps; ++i) state = detail::rkmk4_step(a, state, h, rates);
  return {state.groups[0], state.flat};
}

GroupElement riemannian_exp(const Metric& metric, const GroupElement& g0, const Vector& v,
                            double t, const GeodesicSettings& settings) {
  return integrate_geodesic(metric, g0, v, t, settings).g;
}

Vector riemannian_log(const Metric& metric, const GroupElement& g0, const GroupElement& g1,
                      const GeodesicSettings& settings) {
  const LieAlgebra& a = metric.algebra();
  const GroupElement target = a.between(g0, g1);
  Vector v = a.log(target);
  if (use_closed_form(metric, settings)) return v;
  settings.validate();

  const GroupElement e = a.identity();
  auto residual = [&](const Vector& w) {
    return a.log(a.between(integrate_geodesic(metric, e, w, 1.0, settings).g, target));
  };
  const int n = a.dim();
  Vector r = residual(v);
  double rnorm = r.norm();
  for (int iter = 0; iter < settings.max_newton_iterations; ++iter) {
    if (rnorm <= settings.log_tolerance) return v;
    Matrix jac(n, n);
    const double fd = 1e-7 * std::max(1.0, v.norm());
    for (int c = 0; c < n; ++c) {
      Vector w = v;
      w(c) += fd;
      jac.col(c) = (residual(w) - r) / fd;
    }
    const Vector step = jac.colPivHouseholderQr().solve(-r);
    double alpha = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, alpha *= 0.5) {
      const Vector trial = v + alpha * step;
      Vector rt;
      try {
        rt = residual(trial);
      } catch (const Error& err) {
        if (err.code() != ErrorCode::kCutLocus) throw;
        continue;
      }
      if (rt.norm() < rnorm) {
        v = trial;
        r = rt;
        rnorm = rt.norm();
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (rnorm <= settings.log_tolerance) return v;
  std::ostringstream os;
  os << "geodesic shooting did not converge (residual " << rnorm << ")";
  fail(ErrorCode::kNoConvergence, os.str());
}

double distance(const Metric& metric, const GroupElement& g0, const GroupElement& g1,
                const GeodesicSettings& settings) {
  return metric.norm(riemannian_log(metric, g0, g1, settings));
}

}  // namespace liecoll
