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

#ifndef OPFID_ISING_ANALYTIC_HPP
#define OPFID_ISING_ANALYTIC_HPP

// Transverse Ising chain of odd length N = 2M + 1 in momentum space.
//
// Each k = 1..M contributes an independent two-level pseudospin block
//   H_k = exp(i theta_k sx / 2) (Omega_k sz) exp(-i theta_k sx / 2),
// and the unpaired zero mode contributes (1 - lambda/2) s0z. Nothing here
// ever forms a 2^N object; traces are normalized over the 2^(M+1)
// dimensional pseudospin space.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "opfid/errors.hpp"
#include "opfid/numeric.hpp"
#include "opfid/ofs_engine.hpp"
#include "opfid/parallel.hpp"
#include "opfid/richardson.hpp"

namespace opfid::ising {

struct Mode {
  int k = 0;
  double omega = 0.0;
  double theta = 0.0;
  double cos_theta = 1.0;
  double sin_theta = 0.0;
};

struct ModeSet {
  int n_sites = 0;
  double lambda = 0.0;
  std::vector<Mode> modes;
  double zero_mode_coeff = 0.0;  // 1 - lambda/2
};

inline void check_odd_size(int n, const char* who) {
  if (n < 3 || n % 2 == 0) {
    throw validation_error(std::string(who) + ": need odd n >= 3, got " + std::to_string(n));
  }
}

/// Omega_k and theta_k, with theta_k taken from the two-argument angle of
/// (-lambda + 2 cos q, -2 sin q) so that cos theta_k keeps its sign.
inline ModeSet modes(int n, double lambda) {
  check_odd_size(n, "ising::modes");
  ModeSet set{n, lambda, {}, 1.0 - lambda / 2.0};
  const int m = (n - 1) / 2;
  set.modes.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    const double q = 2.0 * std::numbers::pi * k / n;
    const double c = -lambda + 2.0 * std::cos(q);
    const double s = -2.0 * std::sin(q);
    const double omega = std::hypot(c, s);
    Mode mode{k, omega, std::atan2(s, c), 1.0, 0.0};
    if (omega > 0.0) {
      mode.cos_theta = c / omega;
      mode.sin_theta = s / omega;
    }
    set.modes.push_back(mode);
  }
  return set;
}

/// Coefficients of (s_kz, s_ky, s_kx) in W(t) for one mode.
struct ModeW {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct WCoefficients {
  std::vector<ModeW> modes;
  double zero_mode = 0.0;  // coefficient of s0z, t/2
};

inline ModeW mode_w(const Mode& m, double t) {
  // sin(2 t Omega) / (2 Omega) = t sinc(2 t Omega)
  // (cos(2 t Omega) - 1) / (2 Omega) = -t sin(t Omega) sinc(t Omega)
  const double ct = m.cos_theta;
  const double st = m.sin_theta;
  const double half_sin2 = t * sinc(2.0 * t * m.omega);
  const double cos_term = -t * std::sin(t * m.omega) * sinc(t * m.omega);
  return {t * ct * ct + st * st * half_sin2, ct * st * (t - half_sin2), st * cos_term};
}

inline WCoefficients w_coefficients(const ModeSet& set, double t) {
  WCoefficients w;
  w.modes.reserve(set.modes.size());
  for (const auto& m : set.modes) w.modes.push_back(mode_w(m, t));
  w.zero_mode = t / 2.0;
  return w;
}

/// Zero-mode constant in the secular term: paper_exact keeps 1/2, corrected
/// uses 1/4, which is what the (t/2) s0z term of W actually contributes.
enum class ZeroModeConvention { corrected, paper_exact };

inline ChiResult chi_f_closed(int n, double lambda, double t,
                              ZeroModeConvention mode = ZeroModeConvention::corrected) {
  const ModeSet set = modes(n, lambda);
  std::vector<double> cos2;
  std::vector<double> osc;
  cos2.reserve(set.modes.size());
  osc.reserve(set.modes.size());
  for (const auto& m : set.modes) {
    cos2.push_back(m.cos_theta * m.cos_theta);
    const double s = m.sin_theta * t * sinc(m.omega * t);  // sin(Omega t) sin(theta) / Omega
    osc.push_back(s * s);
  }
  const double zero = mode == ZeroModeConvention::corrected ? 0.25 : 0.5;
  ChiResult r;
  r.secular_part = 0.5 * t * t * (zero + pairwise_sum(cos2));
  r.oscillatory_part = 0.5 * pairwise_sum(osc);
  r.chi = r.secular_part + r.oscillatory_part;
  return r;
}

namespace detail {

using Mat2 = Eigen::Matrix2cd;

// exp(i theta sx / 2) exp(-i t Omega sz) exp(-i theta sx / 2)
inline Mat2 mode_evolution(const Mode& m, double t) {
  const double ch = std::cos(m.theta / 2.0);
  const double sh = std::sin(m.theta / 2.0);
  Mat2 rot;
  rot << ch, std::complex<double>(0.0, sh), std::complex<double>(0.0, sh), ch;
  Mat2 phase = Mat2::Zero();
  phase(0, 0) = std::polar(1.0, -t * m.omega);
  phase(1, 1) = std::polar(1.0, t * m.omega);
  return rot * phase * rot.adjoint();
}

}  // namespace detail

/// |Tr(U0k^H U1k)| / 2 for one momentum mode at two field values.
inline double mode_echo_overlap(const Mode& m0, const Mode& m1, double t) {
  return std::abs((detail::mode_evolution(m0, t).adjoint() * detail::mode_evolution(m1, t)).trace()) /
         2.0;
}

/// The s0z exponents at lambda and lambda + eps differ by eps t / 2.
inline double zero_mode_echo_factor(double epsilon, double t) {
  return std::abs(std::cos(epsilon * t / 2.0));
}

/// 1 - F for the pseudospin echo, computed as -expm1(sum log f_k) so small
/// infidelities keep their relative precision.
inline double pseudospin_echo_infidelity(int n, double lambda, double epsilon, double t) {
  const ModeSet m0 = modes(n, lambda);
  const ModeSet m1 = modes(n, lambda + epsilon);
  std::vector<double> logs;
  logs.reserve(m0.modes.size() + 1);
  logs.push_back(std::log(zero_mode_echo_factor(epsilon, t)));
  for (std::size_t i = 0; i < m0.modes.size(); ++i) {
    logs.push_back(std::log(mode_echo_overlap(m0.modes[i], m1.modes[i], t)));
  }
  return -std::expm1(pairwise_sum(logs));
}

/// F = |cos(eps t/2)| prod_k |Tr(U0k^H U1k)/2|.
inline double pseudospin_echo_fidelity(int n, double lambda, double epsilon, double t) {
  return 1.0 - pseudospin_echo_infidelity(n, lambda, epsilon, t);
}

inline const std::vector<double>& default_epsilon_ladder() {
  static const std::vector<double> ladder{1e-3, 5e-4, 2.5e-4};
  return ladder;
}

/// Richardson limit of (1 - F)/eps^2 over the given ladder, with 1 - F
/// averaged over lambda + eps and lambda - eps to cancel the odd orders.
inline double chi_via_extrapolation(int n, double lambda, double t,
                                    std::span<const double> epsilons = default_epsilon_ladder()) {
  if (epsilons.size() < 2) {
    throw validation_error("chi_via_extrapolation: need at least 2 epsilon values");
  }
  std::vector<double> infid;
  infid.reserve(epsilons.size());
  for (double e : epsilons) {
    if (!(e > 0.0)) throw validation_error("chi_via_extrapolation: epsilon must be positive");
    infid.push_back(0.5 * (pseudospin_echo_infidelity(n, lambda, e, t) +
                           pseudospin_echo_infidelity(n, lambda, -e, t)));
  }
  return extrapolate_infidelity(epsilons, infid);
}

/// Closed-form chi over a lambda grid.
inline std::vector<SweepRecord> closed_sweep(int n, std::span<const double> lambdas, double t,
                                             ZeroModeConvention mode = ZeroModeConvention::corrected,
                                             unsigned jobs = 1) {
  check_odd_size(n, "ising::closed_sweep");
  check_monotone_grid(lambdas);
  std::vector<SweepRecord> out(lambdas.size());
  parallel_for(lambdas.size(), jobs, [&](std::size_t i) {
    out[i] = {"lambda", lambdas[i], chi_f_closed(n, lambdas[i], t, mode),
              std::nullopt, std::nullopt, std::nullopt, true};
  });
  return out;
}

}  // namespace opfid::ising

#endif  // OPFID_ISING_ANALYTIC_HPP
