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

#include <gtest/gtest.h>

#include <algorithm>
#include <numbers>

#include "opfid/echo_oracle.hpp"
#include "opfid/mixed_fidelity.hpp"
#include "opfid/ofs_engine.hpp"
#include "opfid/random.hpp"
#include "oracles.hpp"

namespace opfid {
namespace {

using testing::rel_err;

DenseHermitian pauli(SpinOp op) {
  return realize_dense(HamiltonianSpec(1, false, {{1.0, {{0, op}}}}));
}

TEST(WMatrix, CommutingPairGivesLinearGrowth) {
  const auto z = pauli(SpinOp::Z);
  const auto w = w_matrix(diagonalize(z), z, 2.5);
  EXPECT_LT((w.computational.matrix() - 2.5 * z.matrix()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(WMatrix, VanishesAtFullPeriodForTransversePerturbation) {
  const auto w = w_matrix(diagonalize(pauli(SpinOp::Z)), pauli(SpinOp::X), std::numbers::pi);
  EXPECT_LT(w.computational.matrix().cwiseAbs().maxCoeff(), 1e-14);
}

TEST(WMatrix, MatchesSimpsonQuadrature) {
  StableRng rng(21);
  const auto h0 = random_hermitian(8, rng);
  const auto v = random_hermitian(8, rng);
  const double t = 3.0;
  const Matrix quad = testing::simpson_w(h0.matrix(), v.matrix(), t, 10000);
  const auto w = w_matrix(diagonalize(h0), v, t);
  EXPECT_LT((w.computational.matrix() - quad).cwiseAbs().maxCoeff(), 1e-7);
  EXPECT_EQ(hermiticity_defect(w.computational.matrix()), 0.0);
}

TEST(WMatrix, StableAtExactDegeneracy) {
  // H0 with a doubly degenerate level: the sinc form has no 0/0.
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 1.0;
  h(1, 1) = 1.0;
  h(2, 2) = -0.5;
  StableRng rng(4);
  const auto v = random_hermitian(3, rng);
  const auto w = w_matrix(diagonalize(DenseHermitian(h)), v, 7.0);
  EXPECT_TRUE(w.computational.matrix().allFinite());
  const Matrix quad = testing::simpson_w(h, v.matrix(), 7.0, 10000);
  EXPECT_LT((w.computational.matrix() - quad).cwiseAbs().maxCoeff(), 1e-7);
}

TEST(WMatrix, RejectsDimensionMismatch) {
  EXPECT_THROW(w_matrix(diagonalize(pauli(SpinOp::Z)), DenseHermitian::zero(3), 1.0),
               validation_error);
}

TEST(ChiF, BareMatrixExamples) {
  EXPECT_EQ(chi_f(DenseHermitian::zero(4)).chi, 0.0);
  EXPECT_NEAR(chi_f(DenseHermitian::identity(4)).chi, 0.0, 1e-15);
  const double t = 3.0;
  EXPECT_NEAR(chi_f(t * pauli(SpinOp::Z)).chi, t * t / 2.0, 1e-14);
}

TEST(ChiF, EigenbasisAndRotatedPathsAgree) {
  StableRng rng(8);
  for (double t : {0.5, 10.0, 100.0}) {
    const auto h0 = random_hermitian(10, rng);
    const auto v = random_hermitian(10, rng);
    const auto s = diagonalize(h0);
    const auto a = chi_f(w_matrix(s, v, t));
    const auto b = operator_fidelity_susceptibility(s, v, t);
    const auto c = chi_f(w_matrix(s, v, t).computational);
    EXPECT_LT(rel_err(a.chi, b.chi), 1e-12);
    EXPECT_LT(rel_err(a.secular_part, b.secular_part), 1e-10);
    EXPECT_LT(rel_err(c.chi, b.chi), 1e-10);
  }
}

TEST(ChiF, CommutingCaseIsAllSecular) {
  const auto z = pauli(SpinOp::Z);
  const auto r = operator_fidelity_susceptibility(z, z, 4.0);
  EXPECT_NEAR(r.chi, 8.0, 1e-12);
  EXPECT_NEAR(r.secular_part, 8.0, 1e-12);
  EXPECT_EQ(r.oscillatory_part, 0.0);
}

TEST(ChiF, TransverseTwoLevelMatchesHandValue) {
  // H0 = Z, V = X: chi = sin^2(t)/2, all oscillatory.
  for (double t : {0.3, 1.0, 2.2, 10.0}) {
    const auto r = operator_fidelity_susceptibility(pauli(SpinOp::Z), pauli(SpinOp::X), t);
    EXPECT_NEAR(r.chi, std::sin(t) * std::sin(t) / 2.0, 1e-13);
    EXPECT_NEAR(r.secular_part, 0.0, 1e-15);
  }
}

TEST(ChiF, AgreesWithEchoExtrapolation) {
  StableRng rng(1234);
  for (int trial = 0; trial < 6; ++trial) {
    const int d = 4 << (trial % 3);
    const auto h0 = random_hermitian(d, rng);
    const auto v = random_hermitian(d, rng);
    for (double t : {1.0, 10.0, 100.0}) {
      const double engine = operator_fidelity_susceptibility(h0, v, t).chi;
      const auto oracle = echo::chi_by_extrapolation(h0, v, t);
      ASSERT_TRUE(oracle.extrapolated);
      EXPECT_LT(rel_err(engine, oracle.value), 1e-6) << "d=" << d << " t=" << t;
    }
  }
}

TEST(ChiF, IdentityShiftInvariance) {
  StableRng rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h0 = random_hermitian(8, rng);
    const auto v = random_hermitian(8, rng);
    const double c = 3.0 * rng.normal();
    const double t = 10.0;
    const auto s = diagonalize(h0);
    const double a = operator_fidelity_susceptibility(s, v, t).chi;
    const double b =
        operator_fidelity_susceptibility(s, DenseHermitian::axpy(v, c, DenseHermitian::identity(8)), t).chi;
    EXPECT_LT(std::abs(a - b), 1e-12 * std::max(1.0, a));
  }
}

TEST(ChiF, BasisInvariance) {
  StableRng rng(19);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 6;
    const auto h0 = random_hermitian(d, rng);
    const auto v = random_hermitian(d, rng);
    const Matrix u = random_unitary(d, rng);
    const DenseHermitian h0r(u * h0.matrix() * u.adjoint(), 1e-10);
    const DenseHermitian vr(u * v.matrix() * u.adjoint(), 1e-10);
    for (double t : {1.0, 10.0}) {
      const double a = operator_fidelity_susceptibility(h0, v, t).chi;
      const double b = operator_fidelity_susceptibility(h0r, vr, t).chi;
      EXPECT_LT(std::abs(a - b), 1e-9 * std::max(1.0, a));
    }
  }
}

TEST(ChiF, NonnegativeAndSplitSumsUp) {
  StableRng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int d = 2 + static_cast<int>(rng.index(12));
    const auto r = operator_fidelity_susceptibility(random_hermitian(d, rng), random_hermitian(d, rng),
                                                    std::abs(20.0 * rng.normal()));
    EXPECT_GE(r.chi, -1e-12);
    EXPECT_NEAR(r.chi, r.secular_part + r.oscillatory_part, 1e-12 * std::max(1.0, r.chi));
  }
}

TEST(ChiF, SecularPartDominatesAtLongTimes) {
  StableRng rng(29);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h0 = random_hermitian(8, rng);
    const auto v = random_hermitian(8, rng);
    const auto s = diagonalize(h0);
    const auto r = operator_fidelity_susceptibility(s, v, 1000.0);
    EXPECT_GT(r.secular_part, r.oscillatory_part);
    // chi / t^2 converges to half the variance of diag(V) in the H0 eigenbasis.
    const Matrix vt = s.vectors.adjoint() * v.matrix() * s.vectors;
    const Eigen::VectorXd diag = vt.diagonal().real();
    const double var = (diag.array() - diag.mean()).square().mean();
    EXPECT_LT(rel_err(r.chi / 1e6, 0.5 * var), 1e-3);
  }
}

TEST(ChiFSweep, SinglePointHasNoDerivative) {
  const std::vector<double> grid{0.3};
  const auto recs = chi_f_sweep({ModelKind::heisenberg, 5, 1.0}, grid, 10.0);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0].param_name, "j2");
  EXPECT_FALSE(recs[0].derivative.has_value());
  EXPECT_THROW(sweep_derivative(recs), validation_error);
}

TEST(ChiFSweep, RejectsBadGrids) {
  const std::vector<double> empty;
  const std::vector<double> zigzag{0.1, 0.3, 0.2};
  EXPECT_THROW(chi_f_sweep({ModelKind::heisenberg, 5}, empty, 1.0), validation_error);
  EXPECT_THROW(chi_f_sweep({ModelKind::heisenberg, 5}, zigzag, 1.0), validation_error);
  EXPECT_THROW(uniform_grid(0.0, 1.0, 0.0), validation_error);
  EXPECT_THROW(uniform_grid(0.6, 0.4, 0.1), validation_error);
}

TEST(ChiFSweep, SectorPathMatchesDensePath) {
  const auto grid = uniform_grid(0.0, 1.0, 0.25);
  SweepOptions dense;
  dense.use_sz_blocks = false;
  const auto a = chi_f_sweep({ModelKind::heisenberg, 6}, grid, 50.0);
  const auto b = chi_f_sweep({ModelKind::heisenberg, 6}, grid, 50.0, dense);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_LT(rel_err(a[i].chi.chi, b[i].chi.chi), 1e-9);
    EXPECT_LT(rel_err(a[i].chi.secular_part, b[i].chi.secular_part), 1e-8);
  }
}

TEST(ChiFSweep, ParallelMatchesSerial) {
  const auto grid = uniform_grid(0.0, 1.0, 0.1);
  SweepOptions par;
  par.jobs = 4;
  const auto a = chi_f_sweep({ModelKind::heisenberg, 5}, grid, 100.0);
  const auto b = chi_f_sweep({ModelKind::heisenberg, 5}, grid, 100.0, par);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(a[i].param_value, b[i].param_value);
    EXPECT_EQ(a[i].chi.chi, b[i].chi.chi);
  }
}

TEST(ChiFSweep, HeisenbergSevenSitesMinimumNearMajumdarGhosh) {
  const auto grid = uniform_grid(0.0, 1.0, 0.01);
  const auto recs = chi_f_sweep({ModelKind::heisenberg, 7}, grid, 100.0);
  const auto it = std::min_element(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
    return a.chi.chi < b.chi.chi;
  });
  EXPECT_LE(std::abs(it->param_value - 0.5), 0.1 + 1e-9);
}

TEST(ChiFSweep, IsingEdFlatBelowTransition) {
  const auto grid = uniform_grid(0.0, 4.0, 0.25);
  const auto recs = chi_f_sweep({ModelKind::ising_ed, 9}, grid, 100.0);
  double lo = recs[0].chi.chi;
  double hi = lo;
  for (const auto& r : recs) {
    if (r.param_value <= 1.5) {
      lo = std::min(lo, r.chi.chi);
      hi = std::max(hi, r.chi.chi);
    }
  }
  EXPECT_EQ(recs[0].param_name, "lambda");
  EXPECT_LT(hi - lo, 0.01 * lo);
  EXPECT_LT(hi - lo, 0.02 * (recs.back().chi.chi - recs.front().chi.chi));
}

SweepRecord rec(double x, double chi) { return {"x", x, {chi, chi, 0.0}, {}, {}, {}, true}; }

TEST(SweepDerivative, LinearAndConstantInputs) {
  std::vector<SweepRecord> lin;
  std::vector<SweepRecord> flat;
  for (int i = 0; i < 6; ++i) {
    const double x = 0.1 * i;
    lin.push_back(rec(x, 3.0 * x - 1.0));
    flat.push_back(rec(x, 2.0));
  }
  for (const auto& r : sweep_derivative(lin)) EXPECT_NEAR(*r.derivative, 3.0, 1e-12);
  for (const auto& r : sweep_derivative(flat)) EXPECT_NEAR(*r.derivative, 0.0, 1e-12);
}

TEST(SweepDerivative, SecondOrderAtTheEnds) {
  std::vector<SweepRecord> quad;
  for (int i = 0; i < 5; ++i) quad.push_back(rec(0.5 * i, 0.25 * i * i));  // x^2
  const auto out = sweep_derivative(quad);
  for (const auto& r : out) EXPECT_NEAR(*r.derivative, 2.0 * r.param_value, 1e-12);
}

TEST(SweepDerivative, RejectsNonUniformGrid) {
  std::vector<SweepRecord> r{rec(0.0, 1), rec(0.1, 1), rec(0.3, 1)};
  EXPECT_THROW(sweep_derivative(r), validation_error);
}

TEST(Sweeps, FailuresAreTaggedWithGridValue) {
  const std::vector<double> grid{0.0, 1.0, 2.0};
  auto family = [](double x) -> std::pair<DenseHermitian, DenseHermitian> {
    if (x == 1.0) throw numeric_error("boom");
    return {DenseHermitian::identity(2), DenseHermitian::zero(2)};
  };
  try {
    mixed_sweep_family(family, "x", grid);
    FAIL() << "expected sweep_error";
  } catch (const sweep_error& e) {
    EXPECT_EQ(e.param_value(), 1.0);
  }
}

}  // namespace
}  // namespace opfid
