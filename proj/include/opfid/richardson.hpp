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

#ifndef OPFID_RICHARDSON_HPP
#define OPFID_RICHARDSON_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "opfid/errors.hpp"

namespace opfid {

struct ExtrapolationSample {
  double epsilon = 0.0;
  double fidelity = 1.0;
};

struct Extrapolated {
  double value = 0.0;
  bool extrapolated = false;  // false when only one sample was available
};

/// Value at x = 0 of the polynomial through (x_i, y_i) (Neville's scheme).
inline double extrapolate_to_zero(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (n == 0 || y.size() != n) {
    throw validation_error("extrapolate_to_zero: need matching, nonempty samples");
  }
  std::vector<double> p(y.begin(), y.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = 0; i + level < n; ++i) {
      const double xi = x[i];
      const double xj = x[i + level];
      p[i] = (xi * p[i + 1] - xj * p[i]) / (xi - xj);
    }
  }
  return p[0];
}

/// Limit of g(eps) = (1 - F) / eps^2 as eps -> 0, Richardson-extrapolated
/// in powers of eps^2. A single sample returns g itself, unflagged.
inline Extrapolated susceptibility_extrapolate(std::span<const ExtrapolationSample> samples) {
  if (samples.empty()) throw validation_error("susceptibility_extrapolate: no samples");
  std::vector<double> x;
  std::vector<double> g;
  for (const auto& s : samples) {
    if (!(s.epsilon > 0.0)) {
      throw validation_error("susceptibility_extrapolate: epsilon must be positive");
    }
    if (!(s.fidelity > 0.0 && s.fidelity <= 1.0 + 1e-12)) {
      throw validation_error("susceptibility_extrapolate: fidelity outside (0, 1]");
    }
    const double e2 = s.epsilon * s.epsilon;
    for (double prev : x) {
      if (prev == e2) throw validation_error("susceptibility_extrapolate: duplicate epsilon");
    }
    x.push_back(e2);
    g.push_back((1.0 - s.fidelity) / e2);
  }
  if (x.size() == 1) return {g[0], false};
  return {extrapolate_to_zero(x, g), true};
}

/// Same extrapolation when 1 - F is available directly (avoids forming F).
inline double extrapolate_infidelity(std::span<const double> epsilons,
                                     std::span<const double> infidelities) {
  if (epsilons.size() != infidelities.size() || epsilons.empty()) {
    throw validation_error("extrapolate_infidelity: need matching, nonempty samples");
  }
  std::vector<double> x;
  std::vector<double> g;
  for (std::size_t i = 0; i < epsilons.size(); ++i) {
    const double e2 = epsilons[i] * epsilons[i];
    if (!(epsilons[i] > 0.0)) throw validation_error("extrapolate_infidelity: epsilon must be positive");
    for (double prev : x) {
      if (prev == e2) throw validation_error("extrapolate_infidelity: duplicate epsilon");
    }
    x.push_back(e2);
    g.push_back(infidelities[i] / e2);
  }
  return extrapolate_to_zero(x, g);
}

}  // namespace opfid

#endif  // OPFID_RICHARDSON_HPP
