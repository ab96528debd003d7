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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "liecoll/error.hpp"

namespace liecoll {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class GroupKind { kAbelian, kSO3, kGenericMatrix };

/**
 * @brief An element of one of the supported Lie groups.
 *
 * Abelian groups store an n x 1 coordinate column; matrix groups store the
 * square matrix itself. Which one applies is decided by the owning
 * LieAlgebra, never by the element.
 */
class GroupElement {
 public:
  GroupElement() = default;
  explicit GroupElement(Matrix value) : value_(std::move(value)) {}

  const Matrix& value() const { return value_; }
  Eigen::Index rows() const { return value_.rows(); }
  Eigen::Index cols() const { return value_.cols(); }

 private:
  Matrix value_;
};

/**
 * @brief Lie algebra together with the group operations of its group.
 *
 * Coordinates are taken with respect to a fixed basis e_1..e_n, and the
 * bracket is [e_i, e_j] = sum_k c[k][i][j] e_k. For so(3) the basis is the
 * hat-map basis, so the bracket is the cross product.
 *
 * Instances are immutable and safe to share across threads.
 */
class LieAlgebra {
 public:
  /// The vector group R^n.
  static LieAlgebra abelian(int n);
  /// SO(3) with rotation matrices and the hat-map basis.
  static LieAlgebra so3();
  /**
   * @brief Matrix Lie algebra from user data.
   *
   * `structure_constants` is indexed as c[(k * dim + i) * dim + j]. Both
   * antisymmetry and the Jacobi identity are validated, as is consistency
   * with the matrix commutators of `basis`. Throws Error(kValidation).
   */
  static LieAlgebra generic(std::vector<Matrix> basis,
                            std::vector<double> structure_constants);
  /// Same as generic(), with the structure constants read off the basis.
  static LieAlgebra generic_from_basis(std::vector<Matrix> basis);

  int dim() const { return dim_; }
  GroupKind kind() const { return kind_; }
  /// Side length of group matrices; for abelian groups the coordinate count.
  int matrix_size() const { return matrix_size_; }
  std::string name() const;

  double structure_constant(int k, int i, int j) const {
    return c_[static_cast<std::size_t>((k * dim_ + i) * dim_ + j)];
  }
  const std::vector<double>& structure_constants() const { return c_; }
  const std::vector<Matrix>& basis() const { return basis_; }

  /// Largest rotation angle accepted by log() is pi - cut_margin().
  double cut_margin() const { return cut_margin_; }
  LieAlgebra with_cut_margin(double margin) const;

  Vector zero() const { return Vector::Zero(dim_); }
  Vector bracket(const Vector& x, const Vector& y) const;
  /// Matrix of y -> [x, y].
  Matrix ad(const Vector& x) const;

  Matrix hat(const Vector& x) const;
  Vector vee(const Matrix& m) const;

  GroupElement identity() const;
  GroupElement exp(const Vector& x) const;
  /// Throws Error(kCutLocus) outside the injectivity domain.
  Vector log(const GroupElement& g) const;
  GroupElement compose(const GroupElement& g, const GroupElement& h) const;
  GroupElement inverse(const GroupElement& g) const;
  /// g^-1 h, the relative element of h seen from g.
  GroupElement between(const GroupElement& g, const GroupElement& h) const;
  Vector adjoint(const GroupElement& g, const Vector& x) const;

  /// Nearest group element. Polar projection for SO(3), identity otherwise.
  GroupElement project(const GroupElement& g) const;
  /// Ambient representation of g * x (tangent vector at g), used by the
  /// relative-pose ODE. For abelian groups this is just x.
  Matrix left_translate(const GroupElement& g, const Vector& x) const;
  /// Ambient representation of x * g.
  Matrix right_translate(const Vector& x, const GroupElement& g) const;

  /// Max over basis triples of the Jacobi defect.
  double jacobi_defect() const;

  void check_vector(const Vector& x, const char* what) const;
  void check_element(const GroupElement& g, const char* what) const;

 private:
  LieAlgebra() = default;
  void finish_generic();

  GroupKind kind_ = GroupKind::kAbelian;
  int dim_ = 0;
  int matrix_size_ = 0;
  double cut_margin_ = 1e-6;
  std::vector<double> c_;
  std::vector<Matrix> basis_;
  // Least-squares map from a flattened matrix to basis coordinates.
  Matrix vee_map_;
};

}  // namespace liecoll
