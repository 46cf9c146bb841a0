// Copyright 2026 The opfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPFID_DENSE_HERMITIAN_HPP
#define OPFID_DENSE_HERMITIAN_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <string>

#include "opfid/errors.hpp"

namespace opfid {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Largest |A - A^H| entry.
inline double hermiticity_defect(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Square complex matrix whose Hermiticity was checked on construction:
/// |A - A^H|_max <= tol * max(1, |A|_max).
class DenseHermitian {
 public:
  static constexpr double kDefaultTolerance = 1e-12;

  DenseHermitian() = default;

  explicit DenseHermitian(Matrix m, double tol = kDefaultTolerance)
      : m_(std::move(m)) {
    if (m_.rows() != m_.cols()) {
      throw validation_error("DenseHermitian: matrix is " +
                             std::to_string(m_.rows()) + "x" +
                             std::to_string(m_.cols()) + ", not square");
    }
    const double scale = m_.size() ? std::max(1.0, m_.cwiseAbs().maxCoeff()) : 1.0;
    const double defect = hermiticity_defect(m_);
    if (defect > tol * scale) {
      throw validation_error("DenseHermitian: matrix is not Hermitian (defect " +
                             std::to_string(defect) + ")");
    }
  }

  static DenseHermitian zero(std::size_t dim) {
    return DenseHermitian(Matrix::Zero(static_cast<Eigen::Index>(dim),
                                       static_cast<Eigen::Index>(dim)));
  }

  static DenseHermitian identity(std::size_t dim) {
    return DenseHermitian(Matrix::Identity(static_cast<Eigen::Index>(dim),
                                           static_cast<Eigen::Index>(dim)));
  }

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

  friend DenseHermitian operator+(const DenseHermitian& a, const DenseHermitian& b) {
    check_same_dim(a, b);
    return DenseHermitian(a.m_ + b.m_);
  }

  friend DenseHermitian operator*(double s, const DenseHermitian& a) {
    return DenseHermitian(s * a.m_);
  }

  /// a + s * b without a temporary Hermiticity check on s * b.
  static DenseHermitian axpy(const DenseHermitian& a, double s, const DenseHermitian& b) {
    check_same_dim(a, b);
    return DenseHermitian(a.m_ + s * b.m_);
  }

 private:
  static void check_same_dim(const DenseHermitian& a, const DenseHermitian& b) {
    if (a.dim() != b.dim()) {
      throw validation_error("DenseHermitian: dimension mismatch " +
                             std::to_string(a.dim()) + " vs " + std::to_string(b.dim()));
    }
  }

  Matrix m_;
};

}  // namespace opfid

#endif  // OPFID_DENSE_HERMITIAN_HPP
