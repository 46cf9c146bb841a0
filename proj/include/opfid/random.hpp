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

#ifndef OPFID_RANDOM_HPP
#define OPFID_RANDOM_HPP

// Platform-stable random numbers: std::mt19937_64 has a standardized output
// sequence; the uniform and normal transforms are written out here because
// the std:: distributions are implementation-defined.

#include <Eigen/QR>

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "opfid/dense_hermitian.hpp"

namespace opfid {

class StableRng {
 public:
  explicit StableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (cached pair).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
    has_spare_ = true;
    return r * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Complex normal with E|z|^2 = 1.
  cplx complex_normal() {
    const double re = normal();
    const double im = normal();
    return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
  }

  std::uint64_t index(std::uint64_t bound) { return engine_() % bound; }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

inline Matrix random_complex_matrix(Eigen::Index rows, Eigen::Index cols, StableRng& rng) {
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.complex_normal();
  }
  return m;
}

/// GUE-like Hermitian matrix, entries of order `scale`.
inline DenseHermitian random_hermitian(Eigen::Index d, StableRng& rng, double scale = 1.0) {
  const Matrix a = random_complex_matrix(d, d, rng);
  return DenseHermitian(scale * 0.5 * (a + a.adjoint()));
}

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
inline Matrix random_unitary(Eigen::Index d, StableRng& rng) {
  const Matrix a = random_complex_matrix(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < d; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

/// Normalized complex Gaussian vector (Haar-distributed pure state).
inline Vector random_state(Eigen::Index d, StableRng& rng) {
  Vector v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

}  // namespace opfid

#endif  // OPFID_RANDOM_HPP
