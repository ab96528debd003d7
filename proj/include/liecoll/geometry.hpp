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

#include <cstdint>

#include "liecoll/algebra.hpp"

namespace liecoll {

/**
 * @brief Left-invariant Riemannian metric given by an inner product on the
 * algebra, <x, y> = x^T M y.
 *
 * Construction validates that M is symmetric positive definite. When the
 * metric is flagged bi-invariant, Ad-invariance is sampled at construction
 * and the bracket closed forms are used for ad-dagger, the connection and
 * the curvature; otherwise everything goes through linear solves against M.
 */
class Metric {
 public:
  Metric(LieAlgebra algebra, Matrix inner_product, bool bi_invariant = false);
  static Metric identity(LieAlgebra algebra, bool bi_invariant = false);

  const LieAlgebra& algebra() const { return algebra_; }
  const Matrix& matrix() const { return m_; }
  bool bi_invariant() const { return bi_invariant_; }
  int dim() const { return algebra_.dim(); }

  double inner(const Vector& x, const Vector& y) const;
  double norm(const Vector& x) const;
  Vector flat(const Vector& x) const;
  Vector sharp(const Vector& covector) const;

  /// The unique z with <z, s> = <eta, [xi, s]> for every s.
  Vector ad_dagger(const Vector& xi, const Vector& eta) const;
  /// Levi-Civita connection on left-invariant fields, pulled back to the algebra.
  Vector connection(const Vector& xi, const Vector& eta) const;
  /**
   * @brief R(xi, eta) sigma for left-invariant fields.
   *
   * Sign convention: R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z.
   * For a bi-invariant metric this evaluates to -1/4 [[xi, eta], sigma].
   */
  Vector curvature(const Vector& xi, const Vector& eta, const Vector& sigma) const;

 private:
  LieAlgebra algebra_;
  Matrix m_;
  Eigen::LLT<Matrix> llt_;
  bool bi_invariant_ = false;
};

/// Largest |<Ad_g x, Ad_g y> - <x, y>| over random samples, relative to |x||y||M|.
double ad_invariance_defect(const LieAlgebra& algebra, const Matrix& m, int samples = 64,
                            std::uint64_t seed = 0x5eed);

}  // namespace liecoll
