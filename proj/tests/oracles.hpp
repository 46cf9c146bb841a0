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

#ifndef OPFID_TESTS_ORACLES_HPP
#define OPFID_TESTS_ORACLES_HPP

// Test-only reference implementations. Each one takes a route that is
// independent of the library code it checks.

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <complex>
#include <vector>

#include "opfid/dense_hermitian.hpp"
#include "opfid/spin_hamiltonian.hpp"

namespace opfid::testing {

inline Eigen::Matrix2cd single_site(SpinOp op) {
  using c = std::complex<double>;
  Eigen::Matrix2cd m;
  switch (op) {
    case SpinOp::I: m << 1, 0, 0, 1; break;
    case SpinOp::X: m << 0, 1, 1, 0; break;
    case SpinOp::Y: m << 0, c(0, -1), c(0, 1), 0; break;
    case SpinOp::Z: m << 1, 0, 0, -1; break;
    case SpinOp::Sx: m << 0, 0.5, 0.5, 0; break;
    case SpinOp::Sy: m << 0, c(0, -0.5), c(0, 0.5), 0; break;
    case SpinOp::Sz: m << 0.5, 0, 0, -0.5; break;
  }
  return m;
}

/// Literal Kronecker-product realization, site 0 leftmost.
inline Matrix kron_realize(const HamiltonianSpec& spec) {
  const auto d = static_cast<Eigen::Index>(spec.dim());
  Matrix h = Matrix::Zero(d, d);
  for (const auto& term : spec.terms()) {
    std::vector<SpinOp> ops(static_cast<std::size_t>(spec.n_sites()), SpinOp::I);
    for (const auto& f : term.factors) ops[static_cast<std::size_t>(f.site)] = f.op;
    Matrix acc = Matrix::Identity(1, 1);
    for (SpinOp op : ops) {
      Matrix next = Eigen::kroneckerProduct(acc, Matrix(single_site(op))).eval();
      acc = std::move(next);
    }
    h += term.coefficient * acc;
  }
  return h;
}

/// Composite Simpson quadrature of int_0^t exp(i H0 s) V exp(-i H0 s) ds,
/// stepping the integrand with a Pade-exponential propagator.
inline Matrix simpson_w(const Matrix& h0, const Matrix& v, double t, int panels) {
  const int steps = 2 * panels;
  const double h = t / steps;
  const Matrix step = (std::complex<double>(0.0, h) * h0).exp();
  Matrix vi = v;
  Matrix sum = Matrix::Zero(v.rows(), v.cols());
  for (int i = 0; i <= steps; ++i) {
    const double w = (i == 0 || i == steps) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * vi;
    vi = (step * vi * step.adjoint()).eval();
  }
  return sum * (h / 3.0);
}

/// Ground-state fidelity susceptibility from second-order perturbation
/// theory: (1/2) sum_{n>0} |<n|V|0>|^2 / (E_n - E_0)^2.
inline double pure_state_susceptibility(const Matrix& h0, const Matrix& v) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h0);
  const Matrix vt = es.eigenvectors().adjoint() * v * es.eigenvectors();
  double s = 0.0;
  for (Eigen::Index n = 1; n < vt.rows(); ++n) {
    const double gap = es.eigenvalues()(n) - es.eigenvalues()(0);
    s += std::norm(vt(n, 0)) / (gap * gap);
  }
  return 0.5 * s;
}

inline double rel_err(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace opfid::testing

#endif  // OPFID_TESTS_ORACLES_HPP
