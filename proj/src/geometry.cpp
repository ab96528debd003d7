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

#include "liecoll/geometry.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace liecoll {

double ad_invariance_defect(const LieAlgebra& algebra, const Matrix& m, int samples,
                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int n = algebra.dim();
  auto draw = [&](double scale) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = scale * normal(rng);
    return v;
  };
  const double scale = m.norm();
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Group samples stay well inside the injectivity radius of exp.
    Vector a = draw(1.0);
    if (a.norm() > 2.5) a *= 2.5 / a.norm();
    const GroupElement g = algebra.exp(a);
    const Vector x = draw(1.0);
    const Vector y = draw(1.0);
    const Vector gx = algebra.adjoint(g, x);
    const Vector gy = algebra.adjoint(g, y);
    const double lhs = gx.dot(m * gy);
    const double rhs = x.dot(m * y);
    worst = std::max(worst, std::abs(lhs - rhs) / (scale * x.norm() * y.norm()));
  }
  return worst;
}

Metric::Metric(LieAlgebra algebra, Matrix inner_product, bool bi_invariant)
    : algebra_(std::move(algebra)), m_(std::move(inner_product)), bi_invariant_(bi_invariant) {
  const int n = algebra_.dim();
  if (m_.rows() != n || m_.cols() != n) {
    std::ostringstream os;
    os << "metric must be " << n << "x" << n << ", got " << m_.rows() << "x" << m_.cols();
    fail(ErrorCode::kValidation, os.str());
  }
  if (!m_.allFinite()) fail(ErrorCode::kValidation, "metric has non-finite entries");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if ((m_ - m_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    fail(ErrorCode::kValidation, "metric is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(m_, Eigen::EigenvaluesOnly);
  if (!(eig.eigenvalues().minCoeff() > 1e-12)) {
    fail(ErrorCode::kValidation, "metric is not positive definite");
  }
  llt_.compute(m_);
  // Ad is trivial on an abelian group, so every inner product is bi-invariant.
  if (algebra_.kind() == GroupKind::kAbelian) bi_invariant_ = true;
  if (bi_invariant_) {
    const double defect = ad_invariance_defect(algebra_, m_);
    if (defect > 1e-9) {
      std::ostringstream os;
      os << "metric is flagged bi-invariant but Ad-invariance fails (defect " << defect << ")";
      fail(ErrorCode::kValidation, os.str());
    }
  }
}

Metric Metric::identity(LieAlgebra algebra, bool bi_invariant) {
  const int n = algebra.dim();
  return Metric(std::move(algebra), Matrix::Identity(n, n), bi_invariant);
}

double Metric::inner(const Vector& x, const Vector& y) const {
  algebra_.check_vector(x, "inner lhs");
  algebra_.check_vector(y, "inner rhs");
  return x.dot(m_ * y);
}

double Metric::norm(const Vector& x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

Vector Metric::flat(const Vector& x) const {
  algebra_.check_vector(x, "flat");
  return m_ * x;
}

Vector Metric::sharp(const Vector& covector) const {
  algebra_.check_vector(covector, "sharp");
  return llt_.solve(covector);
}

Vector Metric::ad_dagger(const Vector& xi, const Vector& eta) const {
  if (bi_invariant_) return algebra_.bracket(eta, xi);
  algebra_.check_vector(xi, "ad_dagger xi");
  algebra_.check_vector(eta, "ad_dagger eta");
  if (algebra_.kind() == GroupKind::kAbelian) return algebra_.zero();
  return llt_.solve(algebra_.ad(xi).transpose() * (m_ * eta));
}

Vector Metric::connection(const Vector& xi, const Vector& eta) const {
  if (bi_invariant_) return 0.5 * algebra_.bracket(xi, eta);
  return 0.5 * (algebra_.bracket(xi, eta) - ad_dagger(xi, eta) - ad_dagger(eta, xi));
}

Vector Metric::curvature(const Vector& xi, const Vector& eta, const Vector& sigma) const {
  if (bi_invariant_) return -0.25 * algebra_.bracket(algebra_.bracket(xi, eta), sigma);
  return connection(xi, connection(eta, sigma)) - connection(eta, connection(xi, sigma)) -
         connection(algebra_.bracket(xi, eta), sigma);
}

}  // namespace liecoll
