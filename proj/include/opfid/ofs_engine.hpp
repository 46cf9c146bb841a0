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

#ifndef OPFID_OFS_ENGINE_HPP
#define OPFID_OFS_ENGINE_HPP

// Operator fidelity susceptibility for an arbitrary pair (H0, V):
//
//   W(t)  = int_0^t exp(i H0 s) V exp(-i H0 s) ds
//   chi_F = (1/2) [ Tr(W^2)/d - (Tr(W)/d)^2 ]
//
// In the H0 eigenbasis W_mn = V_mn t exp(i D t/2) sinc(D t/2), D = E_m - E_n.
// Matrix elements with |D t| <= secular_threshold make up the secular
// (t^2-growing) part of chi_F; the rest is bounded in t.

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "opfid/dense_hermitian.hpp"
#include "opfid/errors.hpp"
#include "opfid/numeric.hpp"
#include "opfid/parallel.hpp"
#include "opfid/sector.hpp"
#include "opfid/spectral.hpp"
#include "opfid/spin_hamiltonian.hpp"

namespace opfid {

inline constexpr double kDefaultSecularThreshold = 1e-8;

/// chi = secular_part + oscillatory_part.
struct ChiResult {
  double chi = 0.0;
  double secular_part = 0.0;
  double oscillatory_part = 0.0;
};

/// W(t) in both the H0 eigenbasis and the computational basis.
struct InteractionIntegral {
  double t = 0.0;
  Eigen::VectorXd energies;  // H0 levels labelling the eigenbasis rows/cols
  Matrix eigenbasis;
  DenseHermitian computational;
};

inline InteractionIntegral w_matrix(const Spectrum& s0, const DenseHermitian& v, double t) {
  if (v.dim() != s0.dim()) {
    throw validation_error("w_matrix: V has dimension " + std::to_string(v.dim()) +
                           " but H0 has " + std::to_string(s0.dim()));
  }
  const Matrix vt = s0.vectors.adjoint() * v.matrix() * s0.vectors;
  const Eigen::Index d = vt.rows();
  Matrix wt(d, d);
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index m = 0; m < d; ++m) {
      const double half = 0.5 * (s0.energies(m) - s0.energies(n)) * t;
      wt(m, n) = vt(m, n) * t * sinc(half) * std::polar(1.0, half);
    }
  }
  Matrix w = s0.vectors * wt * s0.vectors.adjoint();
  w = 0.5 * (w + w.adjoint()).eval();
  return {t, s0.energies, std::move(wt), DenseHermitian(std::move(w))};
}

/// Raw second moments of W - shift * I, split into secular and oscillatory
/// matrix elements, plus Tr(W).
struct WMoments {
  double trace = 0.0;
  double secular_sq = 0.0;
  double oscillatory_sq = 0.0;

  WMoments& operator+=(const WMoments& o) {
    trace += o.trace;
    secular_sq += o.secular_sq;
    oscillatory_sq += o.oscillatory_sq;
    return *this;
  }
};

inline ChiResult chi_from_moments(const WMoments& m, std::size_t dim, double shift) {
  const double d = static_cast<double>(dim);
  const double mean_offset = m.trace / d - shift;
  ChiResult r;
  r.secular_part = 0.5 * (m.secular_sq / d - mean_offset * mean_offset);
  r.oscillatory_part = 0.5 * m.oscillatory_sq / d;
  r.chi = r.secular_part + r.oscillatory_part;
  return r;
}

namespace detail {

// Moments of W built on the fly from V in the H0 eigenbasis.
inline WMoments moments_from_rotated_v(const Eigen::VectorXd& energies, const Matrix& vt,
                                       double t, double shift, double threshold) {
  WMoments m;
  const Eigen::Index d = vt.rows();
  for (Eigen::Index n = 0; n < d; ++n) {
    const double wnn = t * vt(n, n).real();
    m.trace += wnn;
    m.secular_sq += (wnn - shift) * (wnn - shift);
    for (Eigen::Index k = 0; k < d; ++k) {
      if (k == n) continue;
      const double dt = (energies(k) - energies(n)) * t;
      const double s = t * sinc(0.5 * dt);
      const double sq = std::norm(vt(k, n)) * s * s;
      (std::abs(dt) <= threshold ? m.secular_sq : m.oscillatory_sq) += sq;
    }
  }
  return m;
}

}  // namespace detail

/// chi_F from a W carrying its eigenbasis representation.
inline ChiResult chi_f(const InteractionIntegral& w,
                       double secular_threshold = kDefaultSecularThreshold) {
  const Eigen::Index d = w.eigenbasis.rows();
  if (d == 0) return {};
  const double shift = w.eigenbasis.diagonal().real().sum() / static_cast<double>(d);
  WMoments m;
  for (Eigen::Index n = 0; n < d; ++n) {
    for (Eigen::Index k = 0; k < d; ++k) {
      const double dt = (w.energies(k) - w.energies(n)) * w.t;
      const cplx e = k == n ? w.eigenbasis(k, n) - shift : w.eigenbasis(k, n);
      if (k == n) m.trace += w.eigenbasis(n, n).real();
      (std::abs(dt) <= secular_threshold ? m.secular_sq : m.oscillatory_sq) += std::norm(e);
    }
  }
  return chi_from_moments(m, static_cast<std::size_t>(d), shift);
}

/// chi_F of a bare Hermitian W. With no spectral information available the
/// whole value is reported as secular.
inline ChiResult chi_f(const DenseHermitian& w) {
  const Eigen::Index d = w.matrix().rows();
  if (d == 0) return {};
  const double mean = w.matrix().diagonal().real().sum() / static_cast<double>(d);
  const Matrix centered = w.matrix() - mean * Matrix::Identity(d, d);
  const double var = centered.squaredNorm() / static_cast<double>(d);
  return {0.5 * var, 0.5 * var, 0.0};
}

/// chi_F for H0 and V given as dense matrices, without forming W.
inline ChiResult operator_fidelity_susceptibility(
    const Spectrum& s0, const DenseHermitian& v, double t,
    double secular_threshold = kDefaultSecularThreshold) {
  if (v.dim() != s0.dim()) {
    throw validation_error("operator_fidelity_susceptibility: dimension mismatch");
  }
  const std::size_t d = s0.dim();
  if (d == 0) return {};
  const double shift = t * v.matrix().trace().real() / static_cast<double>(d);
  const Matrix vt = s0.vectors.adjoint() * v.matrix() * s0.vectors;
  return chi_from_moments(
      detail::moments_from_rotated_v(s0.energies, vt, t, shift, secular_threshold), d, shift);
}

inline ChiResult operator_fidelity_susceptibility(
    const DenseHermitian& h0, const DenseHermitian& v, double t,
    double secular_threshold = kDefaultSecularThreshold) {
  return operator_fidelity_susceptibility(diagonalize(h0), v, t, secular_threshold);
}

/// Block-diagonal variant: H0 and V share the same Sz block structure.
inline ChiResult operator_fidelity_susceptibility(
    const std::vector<SectorSpectrum>& h0, const std::vector<SzBlock>& v, double t,
    double secular_threshold = kDefaultSecularThreshold) {
  if (h0.size() != v.size()) {
    throw validation_error("operator_fidelity_susceptibility: block count mismatch");
  }
  std::size_t d = 0;
  double trace_v = 0.0;
  for (std::size_t b = 0; b < v.size(); ++b) {
    if (h0[b].spectrum.dim() != v[b].matrix.dim()) {
      throw validation_error("operator_fidelity_susceptibility: block dimension mismatch");
    }
    d += v[b].matrix.dim();
    trace_v += v[b].matrix.matrix().trace().real();
  }
  if (d == 0) return {};
  const double shift = t * trace_v / static_cast<double>(d);
  WMoments total;
  for (std::size_t b = 0; b < v.size(); ++b) {
    const auto& s = h0[b].spectrum;
    if (s.dim() == 0) continue;
    const Matrix vt = s.vectors.adjoint() * v[b].matrix.matrix() * s.vectors;
    total += detail::moments_from_rotated_v(s.energies, vt, t, shift, secular_threshold);
  }
  return chi_from_moments(total, d, shift);
}

// ---------------------------------------------------------------------------
// Sweeps

enum class ModelKind { ising_ed, heisenberg };

/// Model family with its fixed parameters; the swept parameter is lambda for
/// ising_ed and j2 for heisenberg.
struct ModelFamily {
  ModelKind kind = ModelKind::heisenberg;
  int n = 0;
  double j1 = 1.0;
};

inline std::string swept_parameter_name(ModelKind kind) {
  return kind == ModelKind::ising_ed ? "lambda" : "j2";
}

struct SweepOptions {
  unsigned jobs = 1;
  bool use_sz_blocks = true;
  double secular_threshold = kDefaultSecularThreshold;
  std::optional<int> max_sites;
};

struct SweepRecord {
  std::string param_name;
  double param_value = 0.0;
  ChiResult chi;
  std::optional<double> derivative;
  std::optional<int> degeneracy;
  std::optional<double> epsilon;
  bool has_split = true;  // false when chi has no secular/oscillatory split
};

/// min, min + step, ... up to max (inclusive within 1e-9 step).
inline std::vector<double> uniform_grid(double min, double max, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw validation_error("uniform_grid: step must be positive");
  }
  if (!(min <= max)) throw validation_error("uniform_grid: min must not exceed max");
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = min + static_cast<double>(i) * step;
  return grid;
}

inline void check_monotone_grid(std::span<const double> grid) {
  if (grid.empty()) throw validation_error("sweep grid is empty");
  if (grid.size() < 2) return;
  const bool up = grid[1] > grid[0];
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (up ? !(grid[i] > grid[i - 1]) : !(grid[i] < grid[i - 1])) {
      throw validation_error("sweep grid is not strictly monotone");
    }
  }
}

inline std::vector<SweepRecord> chi_f_sweep(const ModelFamily& model, std::span<const double> grid,
                                            double t, const SweepOptions& options = {}) {
  check_monotone_grid(grid);
  const std::string name = swept_parameter_name(model.kind);
  std::vector<SweepRecord> out(grid.size());

  auto run = [&](auto&& point) {
    parallel_for(grid.size(), options.jobs, [&](std::size_t i) {
      try {
        out[i] = {name, grid[i], point(grid[i]), std::nullopt, std::nullopt, std::nullopt, true};
      } catch (const std::exception& e) {
        throw sweep_error(grid[i], e.what());
      }
    });
  };

  if (model.kind == ModelKind::ising_ed) {
    // H0(lambda) = sum XX + lambda * V with V = sum Z/2.
    const auto xx = realize_dense(transverse_ising_spec(model.n, 0.0), options.max_sites);
    const auto v = realize_dense(ising_field_perturbation(model.n), options.max_sites);
    run([&](double lambda) {
      return operator_fidelity_susceptibility(DenseHermitian::axpy(xx, lambda, v), v, t,
                                              options.secular_threshold);
    });
  } else if (options.use_sz_blocks) {
    const auto nn = realize_sz_blocks(heisenberg_nnn_spec(model.n, model.j1, 0.0), options.max_sites);
    const auto v = realize_sz_blocks(heisenberg_nnn_spec(model.n, 0.0, 1.0), options.max_sites);
    run([&](double j2) {
      std::vector<SectorSpectrum> h0;
      h0.reserve(v.size());
      for (std::size_t b = 0; b < v.size(); ++b) {
        h0.push_back({v[b].states,
                      diagonalize(DenseHermitian::axpy(nn[b].matrix, j2, v[b].matrix))});
      }
      return operator_fidelity_susceptibility(h0, v, t, options.secular_threshold);
    });
  } else {
    const auto nn = realize_dense(heisenberg_nnn_spec(model.n, model.j1, 0.0), options.max_sites);
    const auto v = realize_dense(heisenberg_nnn_spec(model.n, 0.0, 1.0), options.max_sites);
    run([&](double j2) {
      return operator_fidelity_susceptibility(DenseHermitian::axpy(nn, j2, v), v, t,
                                              options.secular_threshold);
    });
  }
  return out;
}

/// Fills `derivative` with second-order finite differences of chi in the
/// swept parameter: central inside, one-sided three-point at the ends.
inline std::vector<SweepRecord> sweep_derivative(std::vector<SweepRecord> records) {
  const std::size_t n = records.size();
  if (n < 3) throw validation_error("sweep_derivative: need at least 3 records");
  const double h = (records.back().param_value - records.front().param_value) /
                   static_cast<double>(n - 1);
  if (h == 0.0) throw validation_error("sweep_derivative: degenerate grid");
  for (std::size_t i = 1; i < n; ++i) {
    const double step = records[i].param_value - records[i - 1].param_value;
    if (std::abs(step - h) > 1e-12 * std::abs(h)) {
      throw validation_error("sweep_derivative: grid spacing is not uniform");
    }
  }
  auto f = [&](std::size_t i) { return records[i].chi.chi; };
  records[0].derivative = (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    records[i].derivative = (f(i + 1) - f(i - 1)) / (2.0 * h);
  }
  records[n - 1].derivative = (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
  return records;
}

}  // namespace opfid

#endif  // OPFID_OFS_ENGINE_HPP
