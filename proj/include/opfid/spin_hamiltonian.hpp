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

#ifndef OPFID_SPIN_HAMILTONIAN_HPP
#define OPFID_SPIN_HAMILTONIAN_HPP

// Symbolic spin-1/2 chain Hamiltonians and their dense / Sz-block matrices.
//
// Basis convention: computational basis |b_0 b_1 ... b_{N-1}>, site 0 is the
// most significant bit of the basis index, bit value 0 is spin up
// (sigma^z = +1).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opfid/dense_hermitian.hpp"
#include "opfid/errors.hpp"

namespace opfid {

enum class SpinOp { I, X, Y, Z, Sx, Sy, Sz };

inline std::string_view to_string(SpinOp op) {
  switch (op) {
    case SpinOp::I: return "I";
    case SpinOp::X: return "X";
    case SpinOp::Y: return "Y";
    case SpinOp::Z: return "Z";
    case SpinOp::Sx: return "Sx";
    case SpinOp::Sy: return "Sy";
    case SpinOp::Sz: return "Sz";
  }
  return "?";
}

inline SpinOp parse_spin_op(std::string_view label) {
  for (SpinOp op : {SpinOp::I, SpinOp::X, SpinOp::Y, SpinOp::Z, SpinOp::Sx,
                    SpinOp::Sy, SpinOp::Sz}) {
    if (to_string(op) == label) return op;
  }
  throw validation_error("unknown spin operator label '" + std::string(label) + "'");
}

struct SiteOp {
  int site = 0;
  SpinOp op = SpinOp::I;

  friend bool operator==(const SiteOp&, const SiteOp&) = default;
};

/// coefficient * (product of single-site operators on distinct sites).
struct SpinTerm {
  double coefficient = 0.0;
  std::vector<SiteOp> factors;

  friend bool operator==(const SpinTerm&, const SpinTerm&) = default;
};

class HamiltonianSpec {
 public:
  explicit HamiltonianSpec(int n_sites, bool periodic = true,
                           std::vector<SpinTerm> terms = {})
      : n_sites_(n_sites), periodic_(periodic) {
    if (n_sites <= 0) {
      throw validation_error("HamiltonianSpec: n_sites must be positive, got " +
                             std::to_string(n_sites));
    }
    for (auto& t : terms) add_term(std::move(t));
  }

  void add_term(SpinTerm term) {
    std::vector<int> seen;
    for (const auto& f : term.factors) {
      if (f.site < 0 || f.site >= n_sites_) {
        throw validation_error("SpinTerm: site " + std::to_string(f.site) +
                               " outside [0, " + std::to_string(n_sites_) + ")");
      }
      if (std::find(seen.begin(), seen.end(), f.site) != seen.end()) {
        throw validation_error("SpinTerm: site " + std::to_string(f.site) +
                               " repeated within one term");
      }
      seen.push_back(f.site);
    }
    terms_.push_back(std::move(term));
  }

  int n_sites() const noexcept { return n_sites_; }
  bool periodic() const noexcept { return periodic_; }
  const std::vector<SpinTerm>& terms() const noexcept { return terms_; }
  std::size_t dim() const noexcept { return std::size_t{1} << n_sites_; }

  /// Union of the term lists of two specs on the same chain.
  friend HamiltonianSpec operator+(const HamiltonianSpec& a, const HamiltonianSpec& b) {
    if (a.n_sites_ != b.n_sites_) {
      throw validation_error("HamiltonianSpec: cannot add specs on different chains");
    }
    HamiltonianSpec out = a;
    for (const auto& t : b.terms_) out.terms_.push_back(t);
    return out;
  }

  /// Site i becomes site (i + shift) mod N.
  HamiltonianSpec relabeled(int shift) const {
    HamiltonianSpec out(n_sites_, periodic_);
    for (auto t : terms_) {
      for (auto& f : t.factors) f.site = ((f.site + shift) % n_sites_ + n_sites_) % n_sites_;
      out.terms_.push_back(std::move(t));
    }
    return out;
  }

 private:
  int n_sites_;
  bool periodic_;
  std::vector<SpinTerm> terms_;
};

// ---------------------------------------------------------------------------
// Model builders

/// sum_l X_l X_{l+1} + (lambda/2) sum_l Z_l with periodic wrap.
inline HamiltonianSpec transverse_ising_spec(int n, double lambda) {
  if (n < 2) {
    throw validation_error("transverse_ising_spec: need n >= 2, got " + std::to_string(n));
  }
  HamiltonianSpec h(n, true);
  for (int l = 0; l < n; ++l) {
    h.add_term({1.0, {{l, SpinOp::X}, {(l + 1) % n, SpinOp::X}}});
  }
  if (lambda != 0.0) {
    for (int l = 0; l < n; ++l) h.add_term({lambda / 2.0, {{l, SpinOp::Z}}});
  }
  return h;
}

/// sum_l Z_l / 2, the derivative of the Ising Hamiltonian in lambda.
inline HamiltonianSpec ising_field_perturbation(int n) {
  if (n < 1) {
    throw validation_error("ising_field_perturbation: need n >= 1, got " + std::to_string(n));
  }
  HamiltonianSpec v(n, true);
  for (int l = 0; l < n; ++l) v.add_term({0.5, {{l, SpinOp::Z}}});
  return v;
}

/// sum_i (j1 s_i.s_{i+1} + j2 s_i.s_{i+2}), periodic. Zero couplings add no
/// terms, so (0, 1) gives the next-nearest-neighbour perturbation alone.
inline HamiltonianSpec heisenberg_nnn_spec(int n, double j1, double j2) {
  if (n < 4) {
    throw validation_error("heisenberg_nnn_spec: need n >= 4, got " + std::to_string(n));
  }
  HamiltonianSpec h(n, true);
  auto add_bond = [&](int i, int j, double coupling) {
    for (SpinOp op : {SpinOp::Sx, SpinOp::Sy, SpinOp::Sz}) {
      h.add_term({coupling, {{i, op}, {j, op}}});
    }
  };
  for (int i = 0; i < n; ++i) {
    if (j1 != 0.0) add_bond(i, (i + 1) % n, j1);
    if (j2 != 0.0) add_bond(i, (i + 2) % n, j2);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Realization

/// Site cap for dense realization: OPFID_MAX_SITES if set, else 14.
inline int default_site_cap() {
  if (const char* env = std::getenv("OPFID_MAX_SITES")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v < 63) return static_cast<int>(v);
  }
  return 14;
}

namespace detail {

// Action of a single-site operator on one bit: returns (new bit, amplitude).
inline std::pair<unsigned, cplx> apply_site(SpinOp op, unsigned bit) {
  const double up = bit == 0 ? 1.0 : -1.0;
  switch (op) {
    case SpinOp::I: return {bit, 1.0};
    case SpinOp::X: return {bit ^ 1u, 1.0};
    case SpinOp::Y: return {bit ^ 1u, cplx(0.0, up)};  // Y|0> = i|1>, Y|1> = -i|0>
    case SpinOp::Z: return {bit, up};
    case SpinOp::Sx: return {bit ^ 1u, 0.5};
    case SpinOp::Sy: return {bit ^ 1u, cplx(0.0, 0.5 * up)};
    case SpinOp::Sz: return {bit, 0.5 * up};
  }
  return {bit, 0.0};
}

// A Pauli-string term maps each basis state to exactly one basis state.
inline std::pair<std::uint64_t, cplx> apply_term(const SpinTerm& term, int n,
                                                 std::uint64_t state) {
  cplx amp = term.coefficient;
  for (const auto& f : term.factors) {
    const int shift = n - 1 - f.site;
    const unsigned bit = static_cast<unsigned>((state >> shift) & 1u);
    const auto [nb, a] = apply_site(f.op, bit);
    amp *= a;
    if (nb != bit) state ^= std::uint64_t{1} << shift;
  }
  return {state, amp};
}

inline void check_cap(const HamiltonianSpec& spec, std::optional<int> max_sites) {
  const int cap = max_sites.value_or(default_site_cap());
  if (spec.n_sites() > cap) {
    throw resource_error("realization of " + std::to_string(spec.n_sites()) +
                         " sites exceeds the site cap of " + std::to_string(cap));
  }
}

}  // namespace detail

/// Dense 2^N x 2^N matrix of the spec; exactly linear in the term list.
inline DenseHermitian realize_dense(const HamiltonianSpec& spec,
                                    std::optional<int> max_sites = std::nullopt) {
  detail::check_cap(spec, max_sites);
  const auto d = spec.dim();
  const int n = spec.n_sites();
  Matrix h = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  for (const auto& term : spec.terms()) {
    for (std::uint64_t s = 0; s < d; ++s) {
      const auto [target, amp] = detail::apply_term(term, n, s);
      h(static_cast<Eigen::Index>(target), static_cast<Eigen::Index>(s)) += amp;
    }
  }
  return DenseHermitian(std::move(h));
}

/// One fixed-magnetization block of the basis.
struct SzBlock {
  int down_count = 0;                  // number of 1-bits (spin down)
  std::vector<std::uint64_t> states;   // ascending basis indices
  DenseHermitian matrix;
};

/// Block-diagonal realization by total Sz; blocks ordered by down_count.
/// Throws validation_error if the summed terms do not conserve total Sz.
inline std::vector<SzBlock> realize_sz_blocks(const HamiltonianSpec& spec,
                                              std::optional<int> max_sites = std::nullopt) {
  detail::check_cap(spec, max_sites);
  const int n = spec.n_sites();
  const auto d = spec.dim();

  std::vector<std::vector<std::uint64_t>> states(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint32_t> index(d);
  for (std::uint64_t s = 0; s < d; ++s) {
    auto& bucket = states[static_cast<std::size_t>(std::popcount(s))];
    index[s] = static_cast<std::uint32_t>(bucket.size());
    bucket.push_back(s);
  }

  std::vector<SzBlock> blocks;
  blocks.reserve(states.size());
  for (int k = 0; k <= n; ++k) {
    const auto& basis = states[static_cast<std::size_t>(k)];
    const auto bd = static_cast<Eigen::Index>(basis.size());
    Matrix h = Matrix::Zero(bd, bd);
    std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> leaked;
    for (const auto& term : spec.terms()) {
      for (std::size_t col = 0; col < basis.size(); ++col) {
        const auto [target, amp] = detail::apply_term(term, n, basis[col]);
        if (std::popcount(target) == k) {
          h(index[target], static_cast<Eigen::Index>(col)) += amp;
        } else {
          leaked[{target, basis[col]}] += amp;
        }
      }
    }
    for (const auto& [where, amp] : leaked) {
      if (std::abs(amp) > 1e-12) {
        throw validation_error("realize_sz_blocks: spec does not conserve total Sz");
      }
    }
    blocks.push_back({k, basis, DenseHermitian(std::move(h))});
  }
  return blocks;
}

}  // namespace opfid

#endif  // OPFID_SPIN_HAMILTONIAN_HPP
