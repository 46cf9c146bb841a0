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

#ifndef OPFID_SPECTRAL_HPP
#define OPFID_SPECTRAL_HPP

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "opfid/dense_hermitian.hpp"
#include "opfid/errors.hpp"

namespace opfid {

/// Ascending eigenvalues; column j of `vectors` belongs to energies[j].
struct Spectrum {
  Eigen::VectorXd energies;
  Matrix vectors;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(energies.size()); }
};

namespace detail {

// Rotate each eigenvector so that its largest-magnitude component is real
// and positive (first such component on ties).
inline void fix_phases(Matrix& vectors) {
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
      const double a = std::abs(vectors(i, j));
      if (a > best_abs * (1.0 + 1e-12)) {
        best_abs = a;
        best = i;
      }
    }
    if (best_abs > 0.0) {
      vectors.col(j) *= std::conj(vectors(best, j)) / best_abs;
    }
  }
}

}  // namespace detail

inline Spectrum diagonalize(const DenseHermitian& h) {
  if (h.dim() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw numeric_error("diagonalize: eigensolver did not converge (dim " +
                        std::to_string(h.dim()) + ")");
  }
  Spectrum s{solver.eigenvalues(), solver.eigenvectors()};
  detail::fix_phases(s.vectors);
  return s;
}

/// V diag(exp(-i E t)) V^H.
inline Matrix evolve(const Spectrum& s, double t) {
  Vector phases(s.energies.size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::polar(1.0, -s.energies(i) * t);
  }
  return s.vectors * phases.asDiagonal() * s.vectors.adjoint();
}

/// Contiguous level blocks [first, first + size).
struct LevelGroup {
  std::size_t first = 0;
  std::size_t size = 0;
};

struct DegeneracyGroups {
  std::vector<LevelGroup> groups;
  double tolerance = 0.0;
};

/// 1e-9 times the spectral range (or 1e-9 absolute for a flat spectrum).
inline double default_degeneracy_tolerance(std::span<const double> ascending) {
  if (ascending.empty()) return 1e-9;
  const double range = ascending.back() - ascending.front();
  return range > 0.0 ? 1e-9 * range : 1e-9;
}

/// Greedy clustering anchored to the group minimum: level j joins the open
/// group iff E_j - E_first <= tol. Input must be ascending.
inline DegeneracyGroups degeneracy_groups(std::span<const double> ascending, double tol) {
  if (!(tol > 0.0)) throw validation_error("degeneracy_groups: tolerance must be positive");
  DegeneracyGroups out{{}, tol};
  for (std::size_t j = 0; j < ascending.size(); ++j) {
    if (!out.groups.empty() &&
        ascending[j] - ascending[out.groups.back().first] <= tol) {
      ++out.groups.back().size;
    } else {
      out.groups.push_back({j, 1});
    }
  }
  return out;
}

inline DegeneracyGroups degeneracy_groups(const Spectrum& s, double tol) {
  return degeneracy_groups(std::span<const double>(s.energies.data(), s.dim()), tol);
}

inline DegeneracyGroups degeneracy_groups(const Spectrum& s) {
  const std::span<const double> e(s.energies.data(), s.dim());
  return degeneracy_groups(e, default_degeneracy_tolerance(e));
}

}  // namespace opfid

#endif  // OPFID_SPECTRAL_HPP
