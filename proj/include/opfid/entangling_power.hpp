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

#ifndef OPFID_ENTANGLING_POWER_HPP
#define OPFID_ENTANGLING_POWER_HPP

// Controlled-U construction and its operator entanglement. For
// U = |0><0| (x) U0 + |1><1| (x) U1 on C^2 (x) C^d the operator
// entanglement is (1 - F^2)/2 with F = |Tr(U0^H U1)|/d, so the entangling
// power (d/(d+1))^2 E equals d^2 (1 - F^2) / (2 (d+1)^2).

#include <Eigen/SVD>

#include <cmath>
#include <cstddef>
#include <string>

#include "opfid/dense_hermitian.hpp"
#include "opfid/errors.hpp"

namespace opfid {

inline double unitarity_defect(const Matrix& u) {
  if (u.rows() != u.cols()) return INFINITY;
  return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

/// Block-diagonal diag(u0, u1); the control qubit is the leading factor.
inline Matrix controlled_u(const Matrix& u0, const Matrix& u1) {
  if (u0.rows() != u1.rows() || u0.cols() != u1.cols()) {
    throw validation_error("controlled_u: blocks have different dimensions");
  }
  if (unitarity_defect(u0) > 1e-10 || unitarity_defect(u1) > 1e-10) {
    throw validation_error("controlled_u: input is not unitary");
  }
  const Eigen::Index d = u0.rows();
  Matrix u = Matrix::Zero(2 * d, 2 * d);
  u.topLeftCorner(d, d) = u0;
  u.bottomRightCorner(d, d) = u1;
  return u;
}

/// Operator entanglement (linear entropy of the operator Schmidt weights)
/// of u across the split C^dA (x) C^dB.
inline double operator_entanglement_linear(const Matrix& u, std::size_t d_a, std::size_t d_b) {
  const auto da = static_cast<Eigen::Index>(d_a);
  const auto db = static_cast<Eigen::Index>(d_b);
  if (d_a == 0 || d_b == 0 || u.rows() != da * db || u.cols() != da * db) {
    throw validation_error("operator_entanglement_linear: " + std::to_string(u.rows()) + "x" +
                           std::to_string(u.cols()) + " does not factor as " +
                           std::to_string(d_a) + " x " + std::to_string(d_b));
  }
  // R[(iA, jA), (iB, jB)] = U[(iA, iB), (jA, jB)] / sqrt(dA dB)
  Matrix r(da * da, db * db);
  const double norm = 1.0 / std::sqrt(static_cast<double>(d_a * d_b));
  for (Eigen::Index ia = 0; ia < da; ++ia)
    for (Eigen::Index ja = 0; ja < da; ++ja)
      for (Eigen::Index ib = 0; ib < db; ++ib)
        for (Eigen::Index jb = 0; jb < db; ++jb)
          r(ia * da + ja, ib * db + jb) = u(ia * db + ib, ja * db + jb) * norm;
  Eigen::BDCSVD<Matrix> svd(r);
  const Eigen::VectorXd w = svd.singularValues().cwiseAbs2();
  const double total = w.sum();
  if (total == 0.0) throw validation_error("operator_entanglement_linear: zero operator");
  return 1.0 - w.squaredNorm() / (total * total);
}

/// d^2 (1 - f^2) / (2 (d + 1)^2).
inline double entangling_power_from_fidelity(double f, std::size_t d) {
  if (!(f >= 0.0 && f <= 1.0 + 1e-12)) {
    throw validation_error("entangling_power_from_fidelity: fidelity outside [0, 1]");
  }
  if (d < 2) throw validation_error("entangling_power_from_fidelity: need d >= 2");
  const double dd = static_cast<double>(d);
  return dd * dd * (1.0 - f * f) / (2.0 * (dd + 1.0) * (dd + 1.0));
}

struct EntanglingPowerResult {
  double fidelity = 1.0;
  double operator_entanglement = 0.0;
  double entangling_power = 0.0;
  std::size_t dim = 0;
};

/// Both routes for a pair of target-space unitaries: F from the trace,
/// E from the SVD of the controlled-U, e_p = (d/(d+1))^2 E.
inline EntanglingPowerResult entangling_power(const Matrix& u0, const Matrix& u1) {
  const auto d = static_cast<std::size_t>(u0.rows());
  const Matrix cu = controlled_u(u0, u1);
  const double f = std::abs((u0.adjoint() * u1).trace()) / static_cast<double>(d);
  const double e = operator_entanglement_linear(cu, 2, d);
  const double ratio = static_cast<double>(d) / static_cast<double>(d + 1);
  return {f, e, ratio * ratio * e, d};
}

}  // namespace opfid

#endif  // OPFID_ENTANGLING_POWER_HPP
