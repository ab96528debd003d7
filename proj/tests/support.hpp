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

// Test-side helpers and oracles. Nothing here calls into the library's
// geometry, so these can be used to check it.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <Eigen/Dense>
#include <doctest.h>

#include "liecoll/algebra.hpp"
#include "liecoll/error.hpp"

namespace liecoll::testing {

/// Runs `body` and returns the code of the Error it throws.
template <class F>
ErrorCode code_of(F&& body) {
  try {
    body();
  } catch (const Error& err) {
    return err.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kIo;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

inline Vector vec3(double x, double y, double z) {
  Vector v(3);
  v << x, y, z;
  return v;
}

inline Vector e(int i, int n = 3) {
  Vector v = Vector::Zero(n);
  v(i) = 1.0;
  return v;
}

/// Random SPD matrix with eigenvalues in [0.5, 3].
inline Matrix random_spd(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> eig(0.5, 3.0);
  const Eigen::HouseholderQR<Matrix> qr(Matrix(random_vector(rng, n * n).reshaped(n, n)));
  const Matrix q = qr.householderQ();
  Vector d(n);
  for (int i = 0; i < n; ++i) d(i) = eig(rng);
  const Matrix m = q * d.asDiagonal() * q.transpose();
  return 0.5 * (m + m.transpose());
}

/// Cross-product matrix, written out by hand.
inline Eigen::Matrix3d skew(const Vector& w) {
  Eigen::Matrix3d s;
  s << 0.0, -w(2), w(1), w(2), 0.0, -w(0), -w(1), w(0), 0.0;
  return s;
}

/// Rodrigues' formula.
inline Eigen::Matrix3d rodrigues(const Vector& w) {
  const double t = w.norm();
  const Eigen::Matrix3d k = skew(w);
  if (t < 1e-12) return Eigen::Matrix3d::Identity() + k;
  return Eigen::Matrix3d::Identity() + std::sin(t) / t * k + (1.0 - std::cos(t)) / (t * t) * k * k;
}

inline GroupElement rotation(const Vector& w) { return GroupElement(Matrix(rodrigues(w))); }

/// Rotation vector with angle below `max_angle`.
inline Vector random_rotation_vector(std::mt19937_64& rng, double max_angle) {
  std::uniform_real_distribution<double> angle(0.0, max_angle);
  Vector axis = random_vector(rng, 3);
  axis.normalize();
  return angle(rng) * axis;
}

/// ad-dagger by solving <z, e_k> = <eta, [xi, e_k]> for every basis vector,
/// with the bracket of so(3) taken as the cross product.
inline Vector ad_dagger_so3(const Matrix& m, const Vector& xi, const Vector& eta) {
  Matrix a(3, 3);
  Vector b(3);
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d ek = Eigen::Vector3d::Unit(k);
    a.row(k) = (m * ek).transpose();
    b(k) = eta.dot(m * Vector(Eigen::Vector3d(xi.head<3>()).cross(ek)));
  }
  return a.colPivHouseholderQr().solve(b);
}

/// Cubic Hermite interpolant on [0, 1] with p(0) = a, p(1) = b, p'(0) = va, p'(1) = vb.
inline Vector hermite(double t, const Vector& a, const Vector& b, const Vector& va, const Vector& vb) {
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * a + (t3 - 2 * t2 + t) * va + (-2 * t3 + 3 * t2) * b + (t3 - t2) * vb;
}

}  // namespace liecoll::testing
