// Copyright 2026 The minorkern Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "minorkern/errors.hpp"
#include "minorkern/kernel.hpp"
#include "minorkern/orthopoly.hpp"
#include "minorkern/quadrature.hpp"

using namespace minorkern;

namespace {

double support_integral(const EnsembleSpec& e, const std::function<double(double)>& f) {
  QuadOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-11;
  o.max_intervals = 20000;
  switch (e.kind) {
    case EnsembleKind::Gaussian:
      return integrate(f, -30.0, 30.0, o).value;
    case EnsembleKind::Laguerre:
      return integrate(f, 0.0, 50.0, o).value + integrate(f, 50.0, 400.0, o).value;
    case EnsembleKind::Jacobi:
      return integrate(f, 0.0, 1.0, o).value;
  }
  return 0.0;
}

// -phi + sum_l Psi Phi, straight from the public pieces.
double kernel_by_pieces(const ProcessSpec& proc, int s, double x, int t, double y) {
  double v = -phi_conv(s, t, x, y);
  for (int l = 1; l <= t; ++l) v += psi(proc, s, s - l, x) * phi_cap(proc, t, t - l, y);
  return v;
}

}  // namespace

TEST_CASE("phi_conv") {
  CHECK(phi_conv(3, 2, 0.0, 5.0) == 0.0);
  CHECK(phi_conv(2, 2, 0.0, 5.0) == 0.0);
  CHECK(phi_conv(1, 2, 0.0, 3.0) == 1.0);
  CHECK(phi_conv(1, 3, 0.0, 2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(phi_conv(1, 2, 3.0, 0.0) == 0.0);
  CHECK(phi_conv(1, 4, 1.0, 4.0) == doctest::Approx(4.5).epsilon(1e-15));
}

TEST_CASE("phi_conv semigroup") {
  QuadOptions o;
  o.rel_tol = 1e-13;
  for (int n1 = 1; n1 <= 4; ++n1)
    for (int n2 = n1 + 1; n2 <= 5; ++n2)
      for (int n3 = n2 + 1; n3 <= 6; ++n3)
        for (double x : {-1.0, 0.3})
          for (double y : {0.5, 2.0}) {
            const double lhs = integrate([&](double z) { return phi_conv(n1, n2, x, z) * phi_conv(n2, n3, z, y); },
                                         x, std::max(x, y), o)
                                   .value;
            CHECK(std::fabs(lhs - phi_conv(n1, n3, x, y)) < 1e-10);
          }
}

TEST_CASE("psi and Phi examples") {
  const ProcessSpec g3{EnsembleSpec::gaussian(), 3};
  CHECK(psi(g3, 2, 0, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(psi(g3, 3, 1, 1.0) == doctest::Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  CHECK(psi(g3, 2, -1, 0.0) == doctest::Approx(std::sqrt(M_PI) / 2.0).epsilon(1e-10));
  CHECK_THROWS_AS(psi(g3, 2, -2, 0.0), ArgumentError);
  CHECK_THROWS_AS(psi(g3, 4, 0, 0.0), ArgumentError);
  for (int n = 1; n <= 3; ++n)
    CHECK(phi_cap(g3, n, 0, 0.7) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(std::fabs(phi_cap(g3, 3, 1, 0.0)) < 1e-300);
  const ProcessSpec l2{EnsembleSpec::laguerre(0.0), 2};
  CHECK(phi_cap(l2, 1, 0, 3.3) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(phi_cap(l2, 1, 1, 0.0), ArgumentError);
  // Psi^n_j for j < 0 against an independent quadrature of its definition.
  const ProcessSpec l4{EnsembleSpec::laguerre(0.5), 4};
  const double x = 0.8;
  QuadOptions o;
  o.rel_tol = 1e-13;
  const double direct = integrate([&](double y) { return (y - x) * (y - x) * std::pow(y, 0.5 + 1) * std::exp(-y); },
                                  x, 200.0, o)
                            .value;
  // n = 1, j = -3: m = N - n + j = 0 ... use n = 1, j = -2: m = 1, p = 1
  const double direct2 = integrate([&](double y) { return (y - x) * std::pow(y, 0.5 + 1) * std::exp(-y); }, x, 200.0, o).value;
  CHECK(psi(l4, 1, -2, x) == doctest::Approx(-direct2 / 1.0).epsilon(1e-10));
  // n = 1, j = -3: m = 0, p = 2, 1/2!
  const double direct3 = integrate([&](double y) { return (y - x) * (y - x) * std::pow(y, 0.5) * std::exp(-y); }, x, 200.0, o).value;
  CHECK(psi(l4, 1, -3, x) == doctest::Approx(direct3 / 2.0).epsilon(1e-10));
  (void)direct;
  const ProcessSpec j3{EnsembleSpec::jacobi(0.5, -0.4), 3};
  // y = 1 - v^2 on the oracle side as well
  const double direct4 = integrate(
                             [&](double v) {
                               const double y = 1.0 - v * v;
                               return (y - 0.3) * std::pow(y, 0.5) * std::pow(v, -0.8) * 2.0 * v;
                             },
                             0.0, std::sqrt(0.7), o)
                             .value;
  CHECK(psi(j3, 1, -2, 0.3) == doctest::Approx(direct4).epsilon(1e-8));
}

TEST_CASE("biorthogonality of Phi and Psi") {
  const EnsembleSpec specs[] = {EnsembleSpec::gaussian(), EnsembleSpec::laguerre(0.5), EnsembleSpec::jacobi(1.0, 0.5)};
  for (const auto& e : specs) {
    const ProcessSpec proc{e, 8};
    for (int n : {1, 4, 7, 8}) {
      double worst = 0.0;
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          const double v = support_integral(e, [&](double x) { return phi_cap(proc, n, j, x) * psi(proc, n, k, x); });
          worst = std::max(worst, std::fabs(v - (j == k ? 1.0 : 0.0)));
        }
      CAPTURE(to_string(e.kind));
      CAPTURE(n);
      CHECK(worst < 1e-8);
    }
  }
}

TEST_CASE("kernel examples") {
  const ProcessSpec g1{EnsembleSpec::gaussian(), 1};
  CHECK(kernel_K(g1, {1, 0.0}, {1, 0.0}).value == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  const ProcessSpec g2{EnsembleSpec::gaussian(), 2};
  const double mass = support_integral(g2.ensemble, [&](double y) { return kernel_K(g2, {2, y}, {2, y}).value; });
  CHECK(mass == doctest::Approx(2.0).epsilon(1e-10));
  CHECK_THROWS_AS(kernel_K(g2, {3, 0.0}, {1, 0.0}), ArgumentError);
  CHECK_THROWS_AS(kernel_K(ProcessSpec{EnsembleSpec::laguerre(0.0), 2}, {1, -1.0}, {1, 0.0}), ArgumentError);
}

TEST_CASE("finite form equals phi/Psi/Phi form for s >= t") {
  const EnsembleSpec specs[] = {EnsembleSpec::gaussian(), EnsembleSpec::laguerre(1.5), EnsembleSpec::jacobi(0.5, 2.0)};
  std::mt19937_64 rng(7);
  for (const auto& e : specs) {
    const ProcessSpec proc{e, 6};
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<int> sp(1, 6);
      int s = sp(rng), t = sp(rng);
      if (s < t) std::swap(s, t);
      std::uniform_real_distribution<double> pos(e.kind == EnsembleKind::Gaussian ? -2.5 : 0.05,
                                                 e.kind == EnsembleKind::Gaussian ? 2.5 : (e.kind == EnsembleKind::Jacobi ? 0.95 : 12.0));
      const double x = pos(rng), y = pos(rng);
      const double a = kernel_K(proc, {s, x}, {t, y}).value;
      const double b = kernel_by_pieces(proc, s, x, t, y);
      CHECK(std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b)));
    }
  }
}

TEST_CASE("series path for wide species separation equals finite form") {
  const EnsembleSpec specs[] = {EnsembleSpec::gaussian(), EnsembleSpec::laguerre(0.5), EnsembleSpec::jacobi(1.0, 0.5)};
  for (const auto& e : specs) {
    const ProcessSpec proc{e, 10};
    const double xs[] = {e.kind == EnsembleKind::Jacobi ? 0.3 : (e.kind == EnsembleKind::Gaussian ? -0.4 : 2.0),
                         e.kind == EnsembleKind::Jacobi ? 0.7 : (e.kind == EnsembleKind::Gaussian ? 1.1 : 6.5)};
    for (double x : xs)
      for (double y : xs) {
        for (auto [s, t] : {std::pair{1, 9}, std::pair{2, 10}, std::pair{1, 10}}) {
          const double a = kernel_K(proc, {s, x}, {t, y}).value;
          const double b = kernel_by_pieces(proc, s, x, t, y);
          CAPTURE(to_string(e.kind));
          CAPTURE(x);
          CAPTURE(y);
          CHECK(std::fabs(a - b) <= 1e-8 * std::max(1.0, std::fabs(b)));
        }
      }
  }
}

TEST_CASE("series oracle for s < t") {
  const ProcessSpec g2{EnsembleSpec::gaussian(), 2};
  // Coinciding positions with t - s = 1 sit on the jump of -phi; the series
  // converges to the midpoint, half a unit (in the direct gauge) away.
  const auto sr = direct_series(g2, {1, 0.0}, {2, 0.0});
  const double g = gauge_factor(g2, {1, 0.0}, {2, 0.0});
  const double k = kernel_K(g2, {1, 0.0}, {2, 0.0}).value;
  CHECK(std::fabs(sr.value - g * (k - 0.5)) < 1e-8);
  CHECK(sr.error_estimate < 1e-8);
  // Off the jump the series matches directly.
  for (auto [x, y] : {std::pair{0.3, -0.4}, std::pair{-0.5, 0.7}}) {
    const auto s = direct_series(g2, {1, x}, {2, y});
    const double ref = gauge_factor(g2, {1, x}, {2, y}) * kernel_K(g2, {1, x}, {2, y}).value;
    CHECK(std::fabs(s.value - ref) < 1e-8);
  }
  CHECK_THROWS_AS(direct_series(g2, {2, 0.0}, {1, 0.0}), ArgumentError);
}

TEST_CASE("adaptive series near the diagonal") {
  const ProcessSpec g2{EnsembleSpec::gaussian(), 2};
  const SpeciesPoint p{1, -0.3873}, q{2, -0.4210};
  const double ref = gauge_factor(g2, p, q) * kernel_K(g2, p, q).value;
  // Fixed damping is far off this close to the diagonal.
  CHECK(std::fabs(direct_series(g2, p, q).value - ref) > 1e-3);
  SeriesOptions o;
  o.target = 1e-9;
  const auto a = direct_series(g2, p, q, o);
  CHECK(a.converged);
  CHECK(a.error_estimate <= 1e-9 * std::max(1.0, std::fabs(a.value)));
  CHECK(std::fabs(a.value - ref) < 1e-8);
  CHECK(a.terms > 2000000);
  // A budget too small to refine once.
  o.budget = 500000;
  const auto b = direct_series(g2, p, q, o);
  CHECK_FALSE(b.converged);
  CHECK(b.terms <= 500000);
}

TEST_CASE("two derivations agree up to the gauge") {
  const EnsembleSpec specs[] = {EnsembleSpec::gaussian(), EnsembleSpec::laguerre(0.5), EnsembleSpec::jacobi(0.5, 1.0)};
  std::mt19937_64 rng(11);
  for (const auto& e : specs) {
    const ProcessSpec proc{e, 5};
    double worst = 0.0;
    for (int trial = 0; trial < 12; ++trial) {
      std::uniform_int_distribution<int> sp(1, 5);
      const int s = sp(rng), t = sp(rng);
      std::uniform_real_distribution<double> pos(e.kind == EnsembleKind::Gaussian ? -2.0 : 0.05,
                                                 e.kind == EnsembleKind::Gaussian ? 2.0 : (e.kind == EnsembleKind::Jacobi ? 0.95 : 10.0));
      const SpeciesPoint p{s, pos(rng)}, q{t, pos(rng)};
      const double f = kernel_direct(proc, p, q).value;
      const double k = gauge_factor(proc, p, q) * kernel_K(proc, p, q).value;
      worst = std::max(worst, std::fabs(f - k));
    }
    CAPTURE(to_string(e.kind));
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("species N kernel is the Christoffel-Darboux kernel") {
  const EnsembleSpec specs[] = {EnsembleSpec::gaussian(), EnsembleSpec::laguerre(2.0), EnsembleSpec::jacobi(0.5, 0.5)};
  for (const auto& e : specs) {
    const int N = 6;
    const ProcessSpec proc{e, N};
    for (double x : {0.2, 0.6})
      for (double y : {0.35, 0.9}) {
        double cd = 0.0;
        for (int k = 0; k < N; ++k) cd += eval_poly(e, k, x) * eval_poly(e, k, y) / norm_constant(e, k);
        cd *= eval_weight(e, x);
        CHECK(std::fabs(kernel_K(proc, {N, x}, {N, y}).value - cd) < 1e-10 * std::max(1.0, std::fabs(cd)));
      }
  }
}

TEST_CASE("correlation invariants") {
  const ProcessSpec proc{EnsembleSpec::laguerre(0.5), 4};
  const std::vector<SpeciesPoint> pts{{1, 1.2}, {3, 0.7}, {4, 2.5}, {3, 3.1}, {2, 1.9}};
  CHECK(correlation(proc, {{2, 1.3}}) == doctest::Approx(kernel_K(proc, {2, 1.3}, {2, 1.3}).value).epsilon(1e-15));
  const double base = correlation(proc, pts);
  CHECK(base > 0.0);
  auto perm = pts;
  std::sort(perm.begin(), perm.end(), [](auto& a, auto& b) { return a.y < b.y; });
  CHECK(std::fabs(correlation(proc, perm) - base) < 1e-12 * std::max(1.0, base));
  std::reverse(perm.begin(), perm.end());
  CHECK(std::fabs(correlation(proc, perm) - base) < 1e-12 * std::max(1.0, base));
  // per-species gauge c(s)
  Matrix m = kernel_matrix(proc, pts);
  const double c[] = {0.0, 3.0, 0.25, 7.5, 1.9};
  for (int i = 0; i < m.n; ++i)
    for (int j = 0; j < m.n; ++j) m(i, j) *= c[pts[i].s] / c[pts[j].s];
  CHECK(std::fabs(determinant(m) - base) < 1e-12 * std::max(1.0, base));
  CHECK_THROWS_AS(correlation(proc, {{1, 1.0}, {1, 1.0}}), ArgumentError);
  CHECK_THROWS_AS(correlation(proc, {}), ArgumentError);
}

TEST_CASE("density and species count") {
  const ProcessSpec g1{EnsembleSpec::gaussian(), 1};
  CHECK(density(g1, 1, {0.0})[0] == doctest::Approx(0.5641896).epsilon(1e-7));
  auto trap = [](const std::vector<double>& v, double h) {
    double s = 0.5 * (v.front() + v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i];
    return s * h;
  };
  std::vector<double> grid;
  for (int i = 0; i <= 4000; ++i) grid.push_back(0.01 * i);
  const ProcessSpec l3{EnsembleSpec::laguerre(0.0), 3};
  // The density has slope -9 at the hard wall, so the plain trapezoid rule is
  // off by h^2/12 * 9 = 7.5e-5 there; Simpson on the same grid is not.
  auto simpson = [](const std::vector<double>& v, double h) {
    double s = v.front() + v.back();
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += (i % 2 ? 4.0 : 2.0) * v[i];
    return s * h / 3.0;
  };
  const auto rl = density(l3, 3, grid, 2);
  CHECK(std::fabs(trap(rl, 0.01) - 3.0) == doctest::Approx(0.01 * 0.01 / 12.0 * 9.0).epsilon(1e-3));
  CHECK(std::fabs(simpson(rl, 0.01) - 3.0) < 1e-5);
  grid.clear();
  for (int i = -1500; i <= 1500; ++i) grid.push_back(0.01 * i);
  const ProcessSpec g3{EnsembleSpec::gaussian(), 3};
  const auto rho = density(g3, 2, grid);
  CHECK(std::fabs(trap(rho, 0.01) - 2.0) < 1e-5);
  CHECK(*std::min_element(rho.begin(), rho.end()) >= -1e-12);
  CHECK(density(l3, 2, {-1.0})[0] == 0.0);
}
