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

#include "liecoll/algebra.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace liecoll {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidInput: return "InvalidInput";
    case ErrorCode::kCutLocus: return "CutLocus";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kBiInvariantRequired: return "BiInvariantRequired";
    case ErrorCode::kInsufficientSamples: return "InsufficientSamples";
    case ErrorCode::kMaxIterations: return "MaxIterations";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kValidation: return "ValidationError";
    case ErrorCode::kIo: return "IoError";
  }
  return "Unknown";
}

namespace {

Eigen::Matrix3d hat3(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  m << 0.0, -w.z(), w.y(),
       w.z(), 0.0, -w.x(),
      -w.y(), w.x(), 0.0;
  return m;
}

Eigen::Vector3d vee3(const Eigen::Matrix3d& m) {
  return Eigen::Vector3d(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)) * 0.5;
}

Eigen::Matrix3d rodrigues(const Eigen::Vector3d& w) {
  const double theta2 = w.squaredNorm();
  const double theta = std::sqrt(theta2);
  double a, b;
  if (theta < 1e-4) {
    a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
    b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
  } else {
    a = std::sin(theta) / theta;
    b = (1.0 - std::cos(theta)) / theta2;
  }
  const Eigen::Matrix3d k = hat3(w);
  return Eigen::Matrix3d::Identity() + a * k + b * k * k;
}

std::string dims_message(const char* what, Eigen::Index got_r, Eigen::Index got_c,
                         int want_r, int want_c) {
  std::ostringstream os;
  os << what << ": expected " << want_r << "x" << want_c << ", got " << got_r << "x" << got_c;
  return os.str();
}

}  // namespace

LieAlgebra LieAlgebra::abelian(int n) {
  if (n <= 0) fail(ErrorCode::kValidation, "abelian group dimension must be positive");
  LieAlgebra a;
  a.kind_ = GroupKind::kAbelian;
  a.dim_ = n;
  a.matrix_size_ = n;
  a.c_.assign(static_cast<std::size_t>(n * n * n), 0.0);
  return a;
}

LieAlgebra LieAlgebra::so3() {
  LieAlgebra a;
  a.kind_ = GroupKind::kSO3;
  a.dim_ = 3;
  a.matrix_size_ = 3;
  a.c_.assign(27, 0.0);
  // [e_i, e_j] = eps_ijk e_k
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int k = (i + 2) % 3;
    a.c_[static_cast<std::size_t>((k * 3 + i) * 3 + j)] = 1.0;
    a.c_[static_cast<std::size_t>((k * 3 + j) * 3 + i)] = -1.0;
  }
  for (int i = 0; i < 3; ++i) a.basis_.push_back(hat3(Eigen::Vector3d::Unit(i)));
  return a;
}

LieAlgebra LieAlgebra::generic(std::vector<Matrix> basis, std::vector<double> structure_constants) {
  LieAlgebra a;
  a.kind_ = GroupKind::kGenericMatrix;
  a.dim_ = static_cast<int>(basis.size());
  if (a.dim_ == 0) fail(ErrorCode::kValidation, "generic algebra needs a non-empty basis");
  a.matrix_size_ = static_cast<int>(basis.front().rows());
  for (const auto& b : basis) {
    if (b.rows() != a.matrix_size_ || b.cols() != a.matrix_size_) {
      fail(ErrorCode::kValidation, "generic basis matrices must be square and equally sized");
    }
  }
  const auto n = static_cast<std::size_t>(a.dim_);
  if (structure_constants.size() != n * n * n) {
    fail(ErrorCode::kValidation, "structure constants must have dim^3 entries");
  }
  a.basis_ = std::move(basis);
  a.c_ = std::move(structure_constants);
  a.finish_generic();

  for (int k = 0; k < a.dim_; ++k) {
    for (int i = 0; i < a.dim_; ++i) {
      for (int j = 0; j < a.dim_; ++j) {
        if (std::abs(a.structure_constant(k, i, j) + a.structure_constant(k, j, i)) > 1e-12) {
          fail(ErrorCode::kValidation, "structure constants are not antisymmetric");
        }
      }
    }
  }
  if (a.jacobi_defect() > 1e-12) {
    fail(ErrorCode::kValidation, "structure constants violate the Jacobi identity");
  }
  // The matrix realization must agree with the declared bracket.
  for (int i = 0; i < a.dim_; ++i) {
    for (int j = 0; j < a.dim_; ++j) {
      const Matrix& ei = a.basis_[static_cast<std::size_t>(i)];
      const Matrix& ej = a.basis_[static_cast<std::size_t>(j)];
      Matrix expected = Matrix::Zero(a.matrix_size_, a.matrix_size_);
      for (int k = 0; k < a.dim_; ++k) {
        expected += a.structure_constant(k, i, j) * a.basis_[static_cast<std::size_t>(k)];
      }
      if ((ei * ej - ej * ei - expected).norm() > 1e-10 * (1.0 + expected.norm())) {
        fail(ErrorCode::kValidation, "basis commutators disagree with the structure constants");
      }
    }
  }
  return a;
}

LieAlgebra LieAlgebra::generic_from_basis(std::vector<Matrix> basis) {
  LieAlgebra probe;
  probe.kind_ = GroupKind::kGenericMatrix;
  probe.dim_ = static_cast<int>(basis.size());
  if (probe.dim_ == 0) fail(ErrorCode::kValidation, "generic algebra needs a non-empty basis");
  probe.matrix_size_ = static_cast<int>(basis.front().rows());
  probe.basis_ = basis;
  probe.finish_generic();
  const auto n = static_cast<std::size_t>(probe.dim_);
  std::vector<double> c(n * n * n, 0.0);
  for (int i = 0; i < probe.dim_; ++i) {
    for (int j = 0; j < probe.dim_; ++j) {
      const Matrix& ei = basis[static_cast<std::size_t>(i)];
      const Matrix& ej = basis[static_cast<std::size_t>(j)];
      const Vector coords = probe.vee(ei * ej - ej * ei);
      for (int k = 0; k < probe.dim_; ++k) {
        c[(static_cast<std::size_t>(k) * n + static_cast<std::size_t>(i)) * n +
          static_cast<std::size_t>(j)] = coords(k);
      }
    }
  }
  return generic(std::move(basis), std::move(c));
}

void LieAlgebra::finish_generic() {
  const int m2 = matrix_size_ * matrix_size_;
  Matrix stacked(m2, dim_);
  for (int i = 0; i < dim_; ++i) {
    stacked.col(i) = Eigen::Map<const Vector>(basis_[static_cast<std::size_t>(i)].data(), m2);
  }
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(stacked);
  if (cod.rank() != dim_) fail(ErrorCode::kValidation, "generic basis matrices are linearly dependent");
  vee_map_ = cod.pseudoInverse();
}

std::string LieAlgebra::name() const {
  switch (kind_) {
    case GroupKind::kAbelian: return "abelian(" + std::to_string(dim_) + ")";
    case GroupKind::kSO3: return "so3";
    case GroupKind::kGenericMatrix: return "generic(" + std::to_string(dim_) + ")";
  }
  return "unknown";
}

LieAlgebra LieAlgebra::with_cut_margin(double margin) const {
  if (!(margin > 0.0) || margin >= std::numbers::pi) {
    fail(ErrorCode::kValidation, "cut margin must lie in (0, pi)");
  }
  LieAlgebra copy = *this;
  copy.cut_margin_ = margin;
  return copy;
}

void LieAlgebra::check_vector(const Vector& x, const char* what) const {
  if (x.size() != dim_) fail(ErrorCode::kInvalidInput, dims_message(what, x.size(), 1, dim_, 1));
  if (!x.allFinite()) fail(ErrorCode::kNonFinite, std::string(what) + ": non-finite coordinates");
}

void LieAlgebra::check_element(const GroupElement& g, const char* what) const {
  const int cols = kind_ == GroupKind::kAbelian ? 1 : matrix_size_;
  if (g.rows() != matrix_size_ || g.cols() != cols) {
    fail(ErrorCode::kInvalidInput, dims_message(what, g.rows(), g.cols(), matrix_size_, cols));
  }
}

Vector LieAlgebra::bracket(const Vector& x, const Vector& y) const {
  check_vector(x, "bracket lhs");
  check_vector(y, "bracket rhs");
  switch (kind_) {
    case GroupKind::kAbelian:
      return Vector::Zero(dim_);
    case GroupKind::kSO3:
      return Eigen::Vector3d(x.head<3>()).cross(Eigen::Vector3d(y.head<3>()));
    case GroupKind::kGenericMatrix:
      break;
  }
  return ad(x) * y;
}

Matrix LieAlgebra::ad(const Vector& x) const {
  if (kind_ == GroupKind::kSO3) return hat3(x.head<3>());
  Matrix out = Matrix::Zero(dim_, dim_);
  if (kind_ == GroupKind::kAbelian) return out;
  for (int k = 0; k < dim_; ++k) {
    for (int j = 0; j < dim_; ++j) {
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += structure_constant(k, i, j) * x(i);
      out(k, j) = s;
    }
  }
  return out;
}

Matrix LieAlgebra::hat(const Vector& x) const {
  check_vector(x, "hat");
  switch (kind_) {
    case GroupKind::kAbelian:
      fail(ErrorCode::kInvalidInput, "abelian algebra has no matrix realization");
    case GroupKind::kSO3:
      return hat3(x.head<3>());
    case GroupKind::kGenericMatrix:
      break;
  }
  Matrix m = Matrix::Zero(matrix_size_, matrix_size_);
  for (int i = 0; i < dim_; ++i) m += x(i) * basis_[static_cast<std::size_t>(i)];
  return m;
}

Vector LieAlgebra::vee(const Matrix& m) const {
  switch (kind_) {
    case GroupKind::kAbelian:
      fail(ErrorCode::kInvalidInput, "abelian algebra has no matrix realization");
    case GroupKind::kSO3:
      return vee3(m);
    case GroupKind::kGenericMatrix:
      break;
  }
  return vee_map_ * Eigen::Map<const Vector>(m.data(), m.size());
}

GroupElement LieAlgebra::identity() const {
  if (kind_ == GroupKind::kAbelian) return GroupElement(Matrix::Zero(dim_, 1));
  return GroupElement(Matrix::Identity(matrix_size_, matrix_size_));
}

GroupElement LieAlgebra::exp(const Vector& x) const {
  check_vector(x, "exp");
  switch (kind_) {
    case GroupKind::kAbelian:
      return GroupElement(Matrix(x));
    case GroupKind::kSO3:
      return GroupElement(Matrix(rodrigues(x.head<3>())));
    case GroupKind::kGenericMatrix:
      break;
  }
  return GroupElement(Matrix(hat(x).exp()));
}

Vector LieAlgebra::log(const GroupElement& g) const {
  check_element(g, "log");
  switch (kind_) {
    case GroupKind::kAbelian:
      return g.value().col(0);
    case GroupKind::kSO3: {
      const Eigen::Matrix3d r = g.value();
      const Eigen::Vector3d skew = vee3(r);
      const double s = skew.norm();
      const double c = 0.5 * (r.trace() - 1.0);
      const double theta = std::atan2(s, c);
      if (theta >= std::numbers::pi - cut_margin_) {
        fail(ErrorCode::kCutLocus, "rotation angle " + std::to_string(theta) +
                                       " is at or beyond the cut locus");
      }
      const double scale = theta < 1e-4 ? 1.0 + theta * theta / 6.0 : theta / s;
      return skew * scale;
    }
    case GroupKind::kGenericMatrix:
      break;
  }
  const Matrix l = g.value().log();
  if (!l.allFinite()) fail(ErrorCode::kCutLocus, "matrix logarithm is not real/finite");
  Vector x = vee(l);
  if ((hat(x) - l).norm() > 1e-8 * (1.0 + l.norm()) || (hat(x).exp() - g.value()).norm() > 1e-8) {
    fail(ErrorCode::kCutLocus, "principal logarithm leaves the algebra");
  }
  return x;
}

GroupElement LieAlgebra::compose(const GroupElement& g, const GroupElement& h) const {
  check_element(g, "compose lhs");
  check_element(h, "compose rhs");
  if (kind_ == GroupKind::kAbelian) return GroupElement(g.value() + h.value());
  return GroupElement(g.value() * h.value());
}

GroupElement LieAlgebra::inverse(const GroupElement& g) const {
  check_element(g, "inverse");
  switch (kind_) {
    case GroupKind::kAbelian: return GroupElement(-g.value());
    case GroupKind::kSO3: return GroupElement(g.value().transpose());
    case GroupKind::kGenericMatrix: break;
  }
  return GroupElement(g.value().inverse());
}

GroupElement LieAlgebra::between(const GroupElement& g, const GroupElement& h) const {
  check_element(g, "between lhs");
  check_element(h, "between rhs");
  switch (kind_) {
    case GroupKind::kAbelian: return GroupElement(h.value() - g.value());
    case GroupKind::kSO3: return GroupElement(g.value().transpose() * h.value());
    case GroupKind::kGenericMatrix: break;
  }
  return GroupElement(g.value().lu().solve(h.value()));
}

Vector LieAlgebra::adjoint(const GroupElement& g, const Vector& x) const {
  check_element(g, "adjoint");
  check_vector(x, "adjoint");
  switch (kind_) {
    case GroupKind::kAbelian: return x;
    case GroupKind::kSO3: return g.value() * x;
    case GroupKind::kGenericMatrix: break;
  }
  return vee(g.value() * hat(x) * g.value().inverse());
}

GroupElement LieAlgebra::project(const GroupElement& g) const {
  if (kind_ != GroupKind::kSO3) return g;
  // Newton polar iteration; adds no roundoff to an already orthogonal matrix.
  Eigen::Matrix3d r = g.value();
  for (int i = 0; i < 4; ++i) {
    const Eigen::Matrix3d e = Eigen::Matrix3d::Identity() - r.transpose() * r;
    if (e.cwiseAbs().maxCoeff() < 1e-15) break;
    r += 0.5 * r * e;
  }
  if (!((Eigen::Matrix3d::Identity() - r.transpose() * r).cwiseAbs().maxCoeff() < 1e-12) ||
      r.determinant() < 0.0) {
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(Eigen::Matrix3d(g.value()),
                                          Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Matrix3d u = svd.matrixU();
    const Eigen::Matrix3d v = svd.matrixV();
    if ((u * v.transpose()).determinant() < 0.0) u.col(2) *= -1.0;
    r = u * v.transpose();
  }
  return GroupElement(Matrix(r));
}

Matrix LieAlgebra::left_translate(const GroupElement& g, const Vector& x) const {
  if (kind_ == GroupKind::kAbelian) return x;
  return g.value() * hat(x);
}

Matrix LieAlgebra::right_translate(const Vector& x, const GroupElement& g) const {
  if (kind_ == GroupKind::kAbelian) return x;
  return hat(x) * g.value();
}

double LieAlgebra::jacobi_defect() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = 0; j < dim_; ++j) {
      for (int l = 0; l < dim_; ++l) {
        // sum over cyclic permutations of [[e_i, e_j], e_l]
        for (int m = 0; m < dim_; ++m) {
          double s = 0.0;
          for (int k = 0; k < dim_; ++k) {
            s += structure_constant(k, i, j) * structure_constant(m, k, l) +
                 structure_constant(k, j, l) * structure_constant(m, k, i) +
                 structure_constant(k, l, i) * structure_constant(m, k, j);
          }
          worst = std::max(worst, std::abs(s));
        }
      }
    }
  }
  return worst;
}

}  // namespace liecoll
