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

#ifndef OPFID_ECHO_ORACLE_HPP
#define OPFID_ECHO_ORACLE_HPP

// Brute-force references: full matrix evolutions under H0 and H0 + eps V,
// with no expansion in eps.

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "opfid/dense_hermitian.hpp"
#include "opfid/errors.hpp"
#include "opfid/random.hpp"
#include "opfid/richardson.hpp"
#include "opfid/spectral.hpp"

namespace opfid::echo {

namespace detail {

inline void check_pair(const DenseHermitian& h0, const DenseHermitian& v) {
  if (h0.dim() != v.dim()) {
    throw validation_error("echo: H0 and V dimensions differ (" + std::to_string(h0.dim()) +
                           " vs " + std::to_string(v.dim()) + ")");
  }
}

}  // namespace detail

/// U0^H U1 with U_j = exp(-i H_j t), H1 = H0 + eps V, each from its own
/// diagonalization.
inline Matrix echo_operator(const DenseHermitian& h0, const DenseHermitian& v, double epsilon,
                            double t) {
  detail::check_pair(h0, v);
  const Matrix u0 = evolve(diagonalize(h0), t);
  const Matrix u1 = evolve(diagonalize(DenseHermitian::axpy(h0, epsilon, v)), t);
  return u0.adjoint() * u1;
}

/// Normalized trace Tr(U0^H U1)/d.
inline cplx echo_trace(const DenseHermitian& h0, const DenseHermitian& v, double epsilon,
                       double t) {
  detail::check_pair(h0, v);
  if (h0.dim() == 0) return 1.0;
  const Matrix u0 = evolve(diagonalize(h0), t);
  const Matrix u1 = evolve(diagonalize(DenseHermitian::axpy(h0, epsilon, v)), t);
  return u0.conjugate().cwiseProduct(u1).sum() / static_cast<double>(h0.dim());
}

/// Operator fidelity F = |Tr(U0^H U1)| / d.
inline double echo_fidelity(const DenseHermitian& h0, const DenseHermitian& v, double epsilon,
                            double t) {
  return std::abs(echo_trace(h0, v, epsilon, t));
}

/// eps ladder {e0, e0/2, e0/4} with e0 = 0.02 / max(1, t * rms(V - mean)),
/// keeping eps t |V| small enough that the eps^6 residual is negligible.
inline std::vector<double> default_epsilon_ladder(const DenseHermitian& v, double t) {
  const auto d = static_cast<double>(v.dim());
  double rms = 0.0;
  if (v.dim() > 0) {
    const double mean = v.matrix().trace().real() / d;
    const Matrix c = v.matrix() - mean * Matrix::Identity(v.matrix().rows(), v.matrix().cols());
    rms = std::sqrt(c.squaredNorm() / d);
  }
  const double e0 = 0.02 / std::max(1.0, std::abs(t) * rms);
  return {e0, e0 / 2.0, e0 / 4.0};
}

/// 1 - F averaged over +eps and -eps. F alone carries an eps^3 term (H0 + eps V
/// and H0 - eps V are not equivalent), the average is even in eps.
inline double symmetric_infidelity(const DenseHermitian& h0, const DenseHermitian& v,
                                   double epsilon, double t) {
  return 1.0 - 0.5 * (echo_fidelity(h0, v, epsilon, t) + echo_fidelity(h0, v, -epsilon, t));
}

/// Richardson-extrapolated (1 - F)/eps^2 from exact echo fidelities at +-eps.
inline Extrapolated chi_by_extrapolation(const DenseHermitian& h0, const DenseHermitian& v,
                                         double t, std::span<const double> epsilons) {
  if (epsilons.empty()) throw validation_error("chi_by_extrapolation: no epsilon values");
  std::vector<double> infid;
  infid.reserve(epsilons.size());
  for (double e : epsilons) {
    if (!(e > 0.0)) throw validation_error("chi_by_extrapolation: epsilon must be positive");
    infid.push_back(symmetric_infidelity(h0, v, e, t));
  }
  return {extrapolate_infidelity(epsilons, infid), epsilons.size() > 1};
}

inline Extrapolated chi_by_extrapolation(const DenseHermitian& h0, const DenseHermitian& v,
                                         double t) {
  const auto ladder = default_epsilon_ladder(v, t);
  return chi_by_extrapolation(h0, v, t, ladder);
}

/// |<psi| U0^H U1 |psi>|.
inline double loschmidt_echo_state(const DenseHermitian& h0, const DenseHermitian& v,
                                   double epsilon, double t, const Vector& psi) {
  detail::check_pair(h0, v);
  if (static_cast<std::size_t>(psi.size()) != h0.dim()) {
    throw validation_error("loschmidt_echo_state: state dimension mismatch");
  }
  if (std::abs(psi.norm() - 1.0) > 1e-10) {
    throw validation_error("loschmidt_echo_state: state is not normalized");
  }
  return std::abs(psi.dot(echo_operator(h0, v, epsilon, t) * psi));
}

struct HaarAverage {
  cplx mean_amplitude;              // Monte-Carlo mean of <psi|U_e|psi>
  double mean_amplitude_modulus = 0.0;
  double std_error = 0.0;           // bootstrap error of mean_amplitude_modulus
  double amplitude_std_error = 0.0; // sqrt(E|mean - true mean|^2) from the sample spread
  double mean_echo_modulus = 0.0;   // diagnostic: mean of |<psi|U_e|psi>|
};

inline constexpr int kBootstrapResamples = 200;

/// Haar average of the echo amplitude over Gaussian-sampled pure states.
inline HaarAverage haar_average(const Matrix& echo, std::size_t n_samples, std::uint64_t seed) {
  if (n_samples < 100) throw validation_error("haar_average: need at least 100 samples");
  StableRng rng(seed);
  std::vector<cplx> amps(n_samples);
  cplx sum = 0.0;
  double modulus_sum = 0.0;
  for (auto& a : amps) {
    const Vector psi = random_state(echo.rows(), rng);
    a = psi.dot(echo * psi);
    sum += a;
    modulus_sum += std::abs(a);
  }
  const auto n = static_cast<double>(n_samples);
  HaarAverage out{sum / n, std::abs(sum / n), 0.0, 0.0, modulus_sum / n};
  double spread = 0.0;
  for (const auto& a : amps) spread += std::norm(a - out.mean_amplitude);
  out.amplitude_std_error = std::sqrt(spread / (n * (n - 1.0)));

  double acc = 0.0;
  double acc2 = 0.0;
  for (int b = 0; b < kBootstrapResamples; ++b) {
    cplx s = 0.0;
    for (std::size_t i = 0; i < n_samples; ++i) s += amps[rng.index(n_samples)];
    const double m = std::abs(s / n);
    acc += m;
    acc2 += m * m;
  }
  const double bm = acc / kBootstrapResamples;
  out.std_error = std::sqrt(std::max(0.0, acc2 / kBootstrapResamples - bm * bm) *
                            kBootstrapResamples / (kBootstrapResamples - 1));
  return out;
}

inline HaarAverage haar_average_check(const DenseHermitian& h0, const DenseHermitian& v,
                                      double epsilon, double t, std::size_t n_samples,
                                      std::uint64_t seed) {
  return haar_average(echo_operator(h0, v, epsilon, t), n_samples, seed);
}

}  // namespace opfid::echo

#endif  // OPFID_ECHO_ORACLE_HPP
