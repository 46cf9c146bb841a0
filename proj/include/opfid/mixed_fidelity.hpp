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

#ifndef OPFID_MIXED_FIDELITY_HPP
#define OPFID_MIXED_FIDELITY_HPP

// Uhlmann fidelity between equal-weight mixtures of degenerate ground
// manifolds, F = Tr sqrt(rho1^(1/2) rho0 rho1^(1/2)), and the finite-eps
// susceptibility (1 - F)/eps^2 built from it.

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "opfid/dense_hermitian.hpp"
#include "opfid/errors.hpp"
#include "opfid/ofs_engine.hpp"
#include "opfid/parallel.hpp"
#include "opfid/sector.hpp"
#include "opfid/spectral.hpp"
#include "opfid/spin_hamiltonian.hpp"

namespace opfid {

/// (1/R) times the projector onto an R-dimensional ground space, stored as
/// an orthonormal d x R basis of that space.
struct GroundMixture {
  std::size_t dim = 0;
  std::size_t degeneracy = 0;
  Matrix basis;

  Matrix density() const {
    return basis * basis.adjoint() / static_cast<double>(degeneracy);
  }
};

inline GroundMixture ground_mixture(const Spectrum& s, std::optional<double> tol = std::nullopt) {
  if (s.dim() == 0) throw validation_error("ground_mixture: empty spectrum");
  const std::span<const double> e(s.energies.data(), s.dim());
  const auto groups = degeneracy_groups(e, tol.value_or(default_degeneracy_tolerance(e)));
  const std::size_t r = groups.groups.front().size;
  return {s.dim(), r, s.vectors.leftCols(static_cast<Eigen::Index>(r))};
}

/// Ground mixture of a block-diagonal Hamiltonian; the ground group is found
/// on the merged level list and embedded in the full space.
inline GroundMixture ground_mixture(const std::vector<SectorSpectrum>& sectors,
                                    std::optional<double> tol = std::nullopt) {
  const auto levels = merged_levels(sectors);
  if (levels.empty()) throw validation_error("ground_mixture: empty spectrum");
  std::vector<double> e;
  e.reserve(levels.size());
  for (const auto& l : levels) e.push_back(l.energy);
  const auto groups = degeneracy_groups(e, tol.value_or(default_degeneracy_tolerance(e)));
  const std::size_t r = groups.groups.front().size;
  GroundMixture g{levels.size(), r, Matrix(static_cast<Eigen::Index>(levels.size()),
                                           static_cast<Eigen::Index>(r))};
  for (std::size_t j = 0; j < r; ++j) {
    g.basis.col(static_cast<Eigen::Index>(j)) =
        embed_level(sectors[levels[j].sector], levels[j].level, g.dim);
  }
  return g;
}

namespace detail {

inline Eigen::SelfAdjointEigenSolver<Matrix> checked_density(const Matrix& rho, const char* name) {
  if (rho.rows() != rho.cols()) {
    throw validation_error(std::string("uhlmann_fidelity: ") + name + " is not square");
  }
  if (std::abs(rho.trace() - cplx(1.0)) > 1e-10) {
    throw validation_error(std::string("uhlmann_fidelity: ") + name + " does not have unit trace");
  }
  if (hermiticity_defect(rho) > 1e-10) {
    throw validation_error(std::string("uhlmann_fidelity: ") + name + " is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  if (es.info() != Eigen::Success) throw numeric_error("uhlmann_fidelity: eigensolver failed");
  if (es.eigenvalues().minCoeff() < -1e-9) {
    throw validation_error(std::string("uhlmann_fidelity: ") + name +
                           " has a negative eigenvalue");
  }
  return es;
}

// Square roots of eigenvalues, with those inside the rounding floor
// d * eps_mach * max set to zero. A null direction otherwise contributes
// sqrt(1e-16) = 1e-8 of pure noise.
inline Eigen::VectorXd clipped_sqrt(const Eigen::VectorXd& ev) {
  if (ev.size() == 0) return ev;
  const double floor = static_cast<double>(ev.size()) * std::numeric_limits<double>::epsilon() *
                       std::max(ev.cwiseAbs().maxCoeff(), 0.0);
  return ev.unaryExpr([floor](double x) { return x > floor ? std::sqrt(x) : 0.0; });
}

}  // namespace detail

/// General density-matrix path: eigendecompose rho1, form the sandwich
/// rho1^(1/2) rho0 rho1^(1/2), sum square roots of its clipped eigenvalues.
inline double uhlmann_fidelity(const Matrix& rho0, const Matrix& rho1) {
  if (rho0.rows() != rho1.rows() || rho0.cols() != rho1.cols()) {
    throw validation_error("uhlmann_fidelity: dimension mismatch");
  }
  detail::checked_density(rho0, "rho0");
  const auto es1 = detail::checked_density(rho1, "rho1");
  const Eigen::VectorXd root = detail::clipped_sqrt(es1.eigenvalues());
  const Matrix sqrt1 = es1.eigenvectors() * root.asDiagonal() * es1.eigenvectors().adjoint();
  Matrix sandwich = sqrt1 * rho0 * sqrt1;
  sandwich = 0.5 * (sandwich + sandwich.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(sandwich, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("uhlmann_fidelity: eigensolver failed");
  return detail::clipped_sqrt(es.eigenvalues()).sum();
}

/// Equal mixtures P P^H / R0 and Q Q^H / R1 have
/// F = sum of singular values of Q^H P divided by sqrt(R0 R1).
inline double uhlmann_fidelity(const GroundMixture& rho0, const GroundMixture& rho1) {
  if (rho0.dim != rho1.dim) throw validation_error("uhlmann_fidelity: dimension mismatch");
  const Matrix overlap = rho1.basis.adjoint() * rho0.basis;
  Eigen::JacobiSVD<Matrix> svd(overlap);
  return svd.singularValues().sum() /
         std::sqrt(static_cast<double>(rho0.degeneracy * rho1.degeneracy));
}

struct MixedSusceptibility {
  double chi = 0.0;       // (1 - F)/eps^2 at the given eps
  double fidelity = 1.0;
  int degeneracy = 0;     // R of the unperturbed ground manifold
  int degeneracy_perturbed = 0;
  double epsilon = 0.0;
};

inline MixedSusceptibility mixed_susceptibility(const DenseHermitian& h0, const DenseHermitian& v,
                                                double epsilon,
                                                std::optional<double> tol = std::nullopt) {
  if (!(epsilon > 0.0)) throw validation_error("mixed_susceptibility: epsilon must be positive");
  const auto g0 = ground_mixture(diagonalize(h0), tol);
  const auto g1 = ground_mixture(diagonalize(DenseHermitian::axpy(h0, epsilon, v)), tol);
  const double f = uhlmann_fidelity(g0, g1);
  return {(1.0 - f) / (epsilon * epsilon), f, static_cast<int>(g0.degeneracy),
          static_cast<int>(g1.degeneracy), epsilon};
}

namespace detail {

struct HeisenbergBlocks {
  std::vector<SzBlock> nearest;   // j1 part
  std::vector<SzBlock> next;      // V = sum s_i.s_{i+2}
};

inline HeisenbergBlocks heisenberg_blocks(int n, double j1, std::optional<int> max_sites) {
  return {realize_sz_blocks(heisenberg_nnn_spec(n, j1, 0.0), max_sites),
          realize_sz_blocks(heisenberg_nnn_spec(n, 0.0, 1.0), max_sites)};
}

inline MixedSusceptibility mixed_point(const HeisenbergBlocks& hb, double j2, double epsilon,
                                       std::optional<double> tol) {
  std::vector<SectorSpectrum> s0;
  std::vector<SectorSpectrum> s1;
  for (std::size_t b = 0; b < hb.next.size(); ++b) {
    const auto h0 = DenseHermitian::axpy(hb.nearest[b].matrix, j2, hb.next[b].matrix);
    s0.push_back({hb.next[b].states, diagonalize(h0)});
    s1.push_back({hb.next[b].states, diagonalize(DenseHermitian::axpy(h0, epsilon, hb.next[b].matrix))});
  }
  const auto g0 = ground_mixture(s0, tol);
  const auto g1 = ground_mixture(s1, tol);
  const double f = uhlmann_fidelity(g0, g1);
  return {(1.0 - f) / (epsilon * epsilon), f, static_cast<int>(g0.degeneracy),
          static_cast<int>(g1.degeneracy), epsilon};
}

}  // namespace detail

/// Heisenberg chain: rho0 from H0(j2), rho1 from H0 + eps sum s_i.s_{i+2}.
inline MixedSusceptibility mixed_susceptibility(int n, double j2, double epsilon,
                                                std::optional<double> tol = std::nullopt,
                                                double j1 = 1.0,
                                                std::optional<int> max_sites = std::nullopt) {
  if (!(epsilon > 0.0)) throw validation_error("mixed_susceptibility: epsilon must be positive");
  return detail::mixed_point(detail::heisenberg_blocks(n, j1, max_sites), j2, epsilon, tol);
}

struct MixedSweepOptions {
  double epsilon = 1e-3;
  std::optional<double> tolerance;
  double j1 = 1.0;
  unsigned jobs = 1;
  std::optional<int> max_sites;
};

inline std::vector<SweepRecord> mixed_sweep(int n, std::span<const double> grid,
                                            const MixedSweepOptions& options = {}) {
  check_monotone_grid(grid);
  if (!(options.epsilon > 0.0)) throw validation_error("mixed_sweep: epsilon must be positive");
  const auto hb = detail::heisenberg_blocks(n, options.j1, options.max_sites);
  std::vector<SweepRecord> out(grid.size());
  parallel_for(grid.size(), options.jobs, [&](std::size_t i) {
    try {
      const auto p = detail::mixed_point(hb, grid[i], options.epsilon, options.tolerance);
      out[i] = {"j2", grid[i], {p.chi, 0.0, 0.0}, std::nullopt, p.degeneracy, p.epsilon, false};
    } catch (const std::exception& e) {
      throw sweep_error(grid[i], e.what());
    }
  });
  return out;
}

/// Mixed sweep over an arbitrary family: `family(x)` returns the pair (H0, V).
template <class Family>
std::vector<SweepRecord> mixed_sweep_family(Family&& family, std::string param_name,
                                            std::span<const double> grid,
                                            const MixedSweepOptions& options = {}) {
  check_monotone_grid(grid);
  std::vector<SweepRecord> out(grid.size());
  parallel_for(grid.size(), options.jobs, [&](std::size_t i) {
    try {
      const auto [h0, v] = family(grid[i]);
      const auto p = mixed_susceptibility(h0, v, options.epsilon, options.tolerance);
      out[i] = {param_name, grid[i], {p.chi, 0.0, 0.0}, std::nullopt, p.degeneracy, p.epsilon, false};
    } catch (const std::exception& e) {
      throw sweep_error(grid[i], e.what());
    }
  });
  return out;
}

}  // namespace opfid

#endif  // OPFID_MIXED_FIDELITY_HPP
