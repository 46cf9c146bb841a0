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

// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Set OPFID_ACCEPT_SLOW=1 to include the 11-site
// Heisenberg sweep.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "opfid/opfid.hpp"

namespace {

using namespace opfid;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::vector<double> chi_column(const std::vector<SweepRecord>& r) {
  std::vector<double> v;
  for (const auto& x : r) v.push_back(x.chi.chi);
  return v;
}

// 1. Engine vs Richardson-extrapolated operator echo on random pairs.
Outcome cross_oracle_closure() {
  StableRng rng(101);
  const int dims[] = {4, 8, 16};
  const double times[] = {1.0, 10.0, 100.0};
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const int d = dims[k % 3];
    const double t = times[(k / 3) % 3];
    const auto h0 = random_hermitian(d, rng);
    const auto v = random_hermitian(d, rng);
    const double engine = operator_fidelity_susceptibility(h0, v, t).chi;
    worst = std::max(worst, rel_err(engine, echo::chi_by_extrapolation(h0, v, t).value));
  }
  return {worst < 1e-6, "50 pairs, max rel err " + num(worst) + " (< 1e-6)"};
}

// 2. Ising closed form vs pseudospin echo.
Outcome ising_closed_vs_pseudospin() {
  double worst = 0.0;
  for (double lambda : {0.5, 1.5, 2.0, 3.0}) {
    worst = std::max(worst, rel_err(ising::chi_f_closed(101, lambda, 10.0).chi,
                                    ising::chi_via_extrapolation(101, lambda, 10.0)));
  }
  return {worst < 1e-6, "n=101 t=10, max rel err " + num(worst) + " (< 1e-6)"};
}

// 3. Per-mode W coefficients vs the closed k-sum.
Outcome mode_identity() {
  StableRng rng(303);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const int n = 3 + 2 * static_cast<int>(rng.index(100));
    const double lambda = 4.0 * rng.uniform();
    const double t = 100.0 * rng.uniform();
    const auto set = ising::modes(n, lambda);
    const auto w = ising::w_coefficients(set, t);
    double from_w = 0.0;
    double closed = 0.0;
    for (std::size_t i = 0; i < set.modes.size(); ++i) {
      const auto& c = w.modes[i];
      from_w += 0.5 * (c.a * c.a + c.b * c.b + c.c * c.c);
      const auto& m = set.modes[i];
      const double s = std::sin(m.omega * t) * m.sin_theta / m.omega;
      closed += 0.5 * (t * t * m.cos_theta * m.cos_theta + s * s);
    }
    worst = std::max(worst, std::abs(from_w - closed) / std::max(1.0, std::abs(closed)));
    // the library total adds the zero mode, (1/2)(t/2)^2
    const double total = ising::chi_f_closed(n, lambda, t).chi;
    worst = std::max(worst, std::abs(total - closed - t * t / 8.0) / std::max(1.0, total));
  }
  return {worst < 1e-10, "100 draws, max rel deviation " + num(worst) + " (< 1e-10)"};
}

// 4. Derivative of chi across the Ising transition.
Outcome ising_derivative_peak() {
  const auto grid = uniform_grid(0.0, 4.0, 0.005);
  std::vector<double> heights;
  std::string detail;
  bool ok = true;
  for (int n : {1025, 2049, 4097}) {
    const auto recs = sweep_derivative(ising::closed_sweep(n, grid, 100.0));
    std::size_t peak = 0;
    double global = 0.0;
    double low = 0.0;
    for (std::size_t i = 0; i < recs.size(); ++i) {
      const double dv = *recs[i].derivative;
      if (dv > *recs[peak].derivative) peak = i;
      global = std::max(global, std::abs(dv));
      if (recs[i].param_value <= 1.5 + 1e-12) low = std::max(low, std::abs(dv));
    }
    const double loc = recs[peak].param_value;
    const double h = *recs[peak].derivative;
    ok = ok && loc >= 1.95 && loc <= 2.05 && low < 0.01 * global;
    if (!heights.empty()) ok = ok && h > heights.back();
    heights.push_back(h);
    detail += " n=" + std::to_string(n) + ": peak " + num(h) + " at " + num(loc) +
              ", low/global " + num(low / global) + ";";
  }
  return {ok, detail.substr(1)};
}

std::pair<double, double> heisenberg_minimum(int n) {
  const auto grid = uniform_grid(0.0, 1.0, 0.01);
  const auto recs = chi_f_sweep({ModelKind::heisenberg, n, 1.0}, grid, 100.0);
  const auto chi = chi_column(recs);
  const auto it = std::min_element(chi.begin(), chi.end());
  return {recs[static_cast<std::size_t>(it - chi.begin())].param_value, *it};
}

// 5. Heisenberg operator susceptibility minimum near j2 = 1/2.
Outcome heisenberg_minimum_location() {
  const auto [m7, c7] = heisenberg_minimum(7);
  const auto [m9, c9] = heisenberg_minimum(9);
  // Grid values carry rounding, so a minimum exactly 0.1 away still counts.
  bool ok = std::abs(m7 - 0.5) <= 0.1 + 1e-9 && std::abs(m9 - 0.5) <= 0.1 + 1e-9 &&
            std::abs(m9 - 0.5) < std::abs(m7 - 0.5);
  std::string detail = "n=7 min at " + num(m7) + ", n=9 min at " + num(m9);
  if (const char* slow = std::getenv("OPFID_ACCEPT_SLOW"); slow && std::string(slow) == "1") {
    const auto [m11, c11] = heisenberg_minimum(11);
    ok = ok && std::abs(m11 - 0.5) <= 0.1 + 1e-9;
    detail += ", n=11 min at " + num(m11);
  } else {
    detail += ", n=11 skipped (set OPFID_ACCEPT_SLOW=1)";
  }
  return {ok, detail};
}

// 6. Mixed-state susceptibility: two maxima, each at a ground degeneracy change.
Outcome mixed_two_peaks() {
  const auto grid = uniform_grid(0.3, 0.7, 0.002);
  MixedSweepOptions o;
  o.epsilon = 1e-3;
  const auto recs = mixed_sweep(9, grid, o);
  const auto chi = chi_column(recs);

  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < chi.size(); ++i) {
    if (chi[i] > chi[i - 1] && chi[i] >= chi[i + 1]) maxima.push_back(i);
  }
  std::vector<std::size_t> changes;  // index of the first point after a change
  for (std::size_t i = 1; i < recs.size(); ++i) {
    if (*recs[i].degeneracy != *recs[i - 1].degeneracy) changes.push_back(i);
  }
  bool colocated = true;
  for (std::size_t m : maxima) {
    bool near = false;
    for (std::size_t c : changes) near = near || (m + 1 >= c && m <= c);
    colocated = colocated && near;
  }
  int r_min = *recs.front().degeneracy;
  int r_max = r_min;
  for (const auto& r : recs) {
    r_min = std::min(r_min, *r.degeneracy);
    r_max = std::max(r_max, *r.degeneracy);
  }
  std::string detail = std::to_string(maxima.size()) + " local maxima (need 2) at j2 =";
  for (std::size_t m : maxima) detail += " " + num(grid[m]);
  detail += "; " + std::to_string(changes.size()) + " degeneracy changes, R in [" +
            std::to_string(r_min) + ", " + std::to_string(r_max) + "]";
  return {maxima.size() == 2 && colocated, detail};
}

// 7. Controlled-U entangling power, fidelity route vs operator Schmidt route.
Outcome entangling_identity() {
  StableRng rng(707);
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    const auto d = static_cast<Eigen::Index>(2 + rng.index(15));
    const auto h0 = random_hermitian(d, rng);
    const auto v = random_hermitian(d, rng);
    const double eps = 0.01 + rng.uniform();
    const double t = 0.1 + 10.0 * rng.uniform();
    const Matrix u0 = evolve(diagonalize(h0), t);
    const Matrix u1 = evolve(diagonalize(DenseHermitian::axpy(h0, eps, v)), t);
    const auto r = entangling_power(u0, u1);
    worst = std::max(worst, std::abs(entangling_power_from_fidelity(std::min(r.fidelity, 1.0), r.dim) -
                                     r.entangling_power));
  }
  return {worst < 1e-9, "50 cases, max abs deviation " + num(worst) + " (< 1e-9)"};
}

// 8. Haar-averaged echo amplitude vs the normalized trace.
Outcome haar_equivalence() {
  StableRng rng(808);
  const auto h0 = random_hermitian(16, rng);
  const auto v = random_hermitian(16, rng);
  const double eps = 0.3;
  const double t = 2.0;
  const cplx trace = echo::echo_trace(h0, v, eps, t);
  const auto a = echo::haar_average_check(h0, v, eps, t, 100000, 4242);
  const auto b = echo::haar_average_check(h0, v, eps, t, 100000, 4242);
  const double dev = std::abs(a.mean_amplitude - trace);
  const bool repeatable = a.mean_amplitude == b.mean_amplitude && a.std_error == b.std_error;
  return {dev < 3.0 * a.amplitude_std_error && repeatable,
          "|mean - Tr/d| = " + num(dev) + ", 3 SE = " + num(3.0 * a.amplitude_std_error) +
              ", |Tr/d| = " + num(std::abs(trace)) + ", seed repeatable: " +
              (repeatable ? "yes" : "no")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"1 cross-oracle closure", cross_oracle_closure},
      {"2 ising closed form vs pseudospin echo", ising_closed_vs_pseudospin},
      {"3 per-mode W identity", mode_identity},
      {"4 ising derivative peak", ising_derivative_peak},
      {"5 heisenberg chi minimum", heisenberg_minimum_location},
      {"6 mixed susceptibility two peaks", mixed_two_peaks},
      {"7 entangling power identity", entangling_identity},
      {"8 haar echo equivalence", haar_equivalence},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s criterion %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
