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

#include "liecoll/algebra.hpp"
#include "support.hpp"

using namespace liecoll;
using namespace liecoll::testing;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_CASE("exp of zero is the identity") {
  for (const LieAlgebra& a : {LieAlgebra::so3(), LieAlgebra::abelian(3)}) {
    CHECK((a.exp(a.zero()).value() - a.identity().value()).norm() == 0.0);
  }
}

TEST_CASE("so3 exp of a quarter turn about e3") {
  const LieAlgebra a = LieAlgebra::so3();
  Eigen::Matrix3d expected;
  expected << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((a.exp(vec3(0, 0, kPi / 2)).value() - Matrix(expected)).norm() <= 1e-15);
}

TEST_CASE("so3 exp matches Rodrigues") {
  const LieAlgebra a = LieAlgebra::so3();
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vector w = random_vector(rng, 3, 1.5);
    CHECK((a.exp(w).value() - Matrix(rodrigues(w))).norm() <= 1e-13);
  }
}

TEST_CASE("abelian exp is the identity map") {
  const LieAlgebra a = LieAlgebra::abelian(3);
  CHECK((a.exp(vec3(1, 2, 3)).value() - Matrix(vec3(1, 2, 3))).norm() == 0.0);
}

TEST_CASE("log inverts exp") {
  const LieAlgebra a = LieAlgebra::so3();
  CHECK(a.log(a.identity()).norm() == 0.0);
  CHECK((a.log(a.exp(vec3(0.1, 0.2, 0.3))) - vec3(0.1, 0.2, 0.3)).norm() <= 1e-15);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 1000; ++i) {
    const Vector w = random_rotation_vector(rng, kPi - 0.01);
    CHECK((a.log(a.exp(w)) - w).norm() <= 1e-10);
    const GroupElement g = rotation(w);
    CHECK((a.exp(a.log(g)).value() - g.value()).norm() <= 1e-10);
  }
}

TEST_CASE("log is rejected on the cut locus") {
  const LieAlgebra a = LieAlgebra::so3();
  for (const Vector& axis : {vec3(1, 0, 0), vec3(0, 0, 1), Vector(vec3(1, 1, 1).normalized())}) {
    CHECK(code_of([&] { a.log(rotation(kPi * axis)); }) == ErrorCode::kCutLocus);
  }
  CHECK(code_of([&] { a.log(rotation(vec3(0, 0, kPi - 1e-7))); }) == ErrorCode::kCutLocus);
  CHECK_NOTHROW(a.log(rotation(vec3(0, 0, kPi - 1e-3))));
  const LieAlgebra wide = a.with_cut_margin(0.5);
  CHECK(code_of([&] { wide.log(rotation(vec3(0, 0, kPi - 0.4))); }) == ErrorCode::kCutLocus);
}

TEST_CASE("compose and inverse") {
  const LieAlgebra so3 = LieAlgebra::so3();
  const GroupElement g = rotation(vec3(0.3, -0.2, 0.9));
  CHECK((so3.compose(so3.identity(), g).value() - g.value()).norm() <= 1e-15);
  CHECK((so3.compose(g, so3.inverse(g)).value() - so3.identity().value()).norm() <= 1e-12);
  const GroupElement q = rotation(vec3(0, 0, kPi / 4));
  CHECK((so3.compose(q, q).value() - rotation(vec3(0, 0, kPi / 2)).value()).norm() <= 1e-15);

  const LieAlgebra r2 = LieAlgebra::abelian(2);
  Vector a(2), b(2), ab(2);
  a << 1, 0;
  b << 0, 2;
  ab << 1, 2;
  CHECK((r2.compose(GroupElement(a), GroupElement(b)).value() - Matrix(ab)).norm() == 0.0);
  CHECK((r2.inverse(GroupElement(ab)).value() + Matrix(ab)).norm() == 0.0);
}

TEST_CASE("conformance errors") {
  const LieAlgebra a = LieAlgebra::so3();
  CHECK(code_of([&] { a.exp(Vector::Zero(2)); }) == ErrorCode::kInvalidInput);
  CHECK(code_of([&] { a.compose(a.identity(), GroupElement(Matrix::Identity(2, 2))); }) ==
        ErrorCode::kInvalidInput);
}

TEST_CASE("adjoint") {
  const LieAlgebra so3 = LieAlgebra::so3();
  const Vector x = vec3(0.4, -1.0, 2.0);
  CHECK((so3.adjoint(so3.identity(), x) - x).norm() <= 1e-15);
  CHECK((so3.adjoint(rotation(vec3(0, 0, kPi / 2)), e(0)) - e(1)).norm() <= 1e-15);

  const LieAlgebra r3 = LieAlgebra::abelian(3);
  CHECK((r3.adjoint(GroupElement(Matrix(vec3(5, 6, 7))), x) - x).norm() == 0.0);

  // Conjugation oracle: (R x^ R^T) vee = R x.
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    const Eigen::Matrix3d r = rodrigues(random_vector(rng, 3));
    const Vector y = random_vector(rng, 3);
    CHECK((so3.adjoint(GroupElement(Matrix(r)), y) - Vector(r * y.head<3>())).norm() <= 1e-13);
  }
}

TEST_CASE("so3 bracket is the cross product") {
  const LieAlgebra a = LieAlgebra::so3();
  std::mt19937_64 rng(4);
  for (int i = 0; i < 20; ++i) {
    const Vector x = random_vector(rng, 3);
    const Vector y = random_vector(rng, 3);
    const Eigen::Vector3d cross = Eigen::Vector3d(x.head<3>()).cross(Eigen::Vector3d(y.head<3>()));
    CHECK((a.bracket(x, y) - Vector(cross)).norm() <= 1e-15);
    CHECK((a.ad(x) * y - a.bracket(x, y)).norm() <= 1e-15);
  }
}

TEST_CASE("Jacobi identity on random triples") {
  std::mt19937_64 rng(5);
  for (const LieAlgebra& a : {LieAlgebra::so3(), LieAlgebra::abelian(4)}) {
    CHECK(a.jacobi_defect() <= 1e-12);
    for (int i = 0; i < 200; ++i) {
      const Vector x = random_vector(rng, a.dim());
      const Vector y = random_vector(rng, a.dim());
      const Vector z = random_vector(rng, a.dim());
      const Vector j = a.bracket(x, a.bracket(y, z)) + a.bracket(y, a.bracket(z, x)) +
                       a.bracket(z, a.bracket(x, y));
      CHECK(j.norm() <= 1e-12);
    }
  }
}

TEST_CASE("adjoint is a bracket homomorphism") {
  const LieAlgebra a = LieAlgebra::so3();
  std::mt19937_64 rng(6);
  for (int i = 0; i < 200; ++i) {
    const GroupElement g = a.exp(random_vector(rng, 3));
    const Vector x = random_vector(rng, 3);
    const Vector y = random_vector(rng, 3);
    const Vector lhs = a.adjoint(g, a.bracket(x, y));
    const Vector rhs = a.bracket(a.adjoint(g, x), a.adjoint(g, y));
    CHECK((lhs - rhs).norm() <= 1e-10);
  }
}

TEST_CASE("orthonormality survives 1e4 projected compositions") {
  const LieAlgebra a = LieAlgebra::so3();
  std::mt19937_64 rng(7);
  GroupElement g = a.identity();
  for (int i = 0; i < 10000; ++i) g = a.project(a.compose(g, a.exp(random_vector(rng, 3, 0.3))));
  const Matrix r = g.value();
  CHECK((r.transpose() * r - Matrix::Identity(3, 3)).norm() <= 1e-9);
  CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("projection repairs a perturbed rotation") {
  const LieAlgebra a = LieAlgebra::so3();
  Matrix r = rodrigues(vec3(0.3, 0.2, -0.1));
  r(0, 1) += 1e-3;
  const Matrix p = a.project(GroupElement(r)).value();
  CHECK((p.transpose() * p - Matrix::Identity(3, 3)).norm() <= 1e-14);
  CHECK((p - r).norm() <= 2e-3);
}

TEST_CASE("generic algebra from so3 matrices agrees with the built-in one") {
  std::vector<Matrix> basis;
  for (int i = 0; i < 3; ++i) basis.push_back(Matrix(skew(e(i))));
  const LieAlgebra g = LieAlgebra::generic_from_basis(basis);
  const LieAlgebra s = LieAlgebra::so3();
  CHECK(g.kind() == GroupKind::kGenericMatrix);
  CHECK(g.jacobi_defect() <= 1e-12);
  const Vector x = vec3(0.3, -0.4, 0.5);
  const Vector y = vec3(-0.1, 0.7, 0.2);
  CHECK((g.bracket(x, y) - s.bracket(x, y)).norm() <= 1e-14);
  CHECK((g.exp(x).value() - s.exp(x).value()).norm() <= 1e-12);
  CHECK((g.log(g.exp(x)) - x).norm() <= 1e-10);
  CHECK((g.adjoint(g.exp(y), x) - s.adjoint(s.exp(y), x)).norm() <= 1e-12);
}

TEST_CASE("generic algebra rejects constants that break Jacobi or antisymmetry") {
  std::vector<Matrix> basis;
  for (int i = 0; i < 3; ++i) basis.push_back(Matrix(skew(e(i))));
  std::vector<double> c(27, 0.0);
  c[(2 * 3 + 0) * 3 + 1] = 1.0;  // [e1, e2] = e3 without the antisymmetric partner
  CHECK(code_of([&] { LieAlgebra::generic(basis, c); }) == ErrorCode::kValidation);
}
