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

#include <boost/math/special_functions/airy.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "minorkern/errors.hpp"
#include "minorkern/linalg.hpp"
#include "minorkern/quadrature.hpp"
#include "minorkern/scaling.hpp"

using namespace minorkern;

namespace {

const double kPi = 3.14159265358979323846;

double bai(double x) { return boost::math::airy_ai(x); }

// Composite 20-point Gauss-Legendre on [a, b] with n panels.
double composite_gl(const std::function<double(double)>& f, double a, double b, int n) {
  const GaussRule& g = gauss_legendre(20);
  double sum = 0.0;
  const double h = (b - a) / n;
  for (int p = 0; p < n; ++p) {
    const double lo = a + p * h, mid = lo + 0.5 * h;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) sum += 0.5 * h * g.weights[i] * f(mid + 0.5 * h * g.nodes[i]);
  }
  return sum;
}

double bj(double nu, double x) { return boost::math::cyl_bessel_j(nu, x); }

// (J(sqrt x) sqrt y J'(sqrt y) - sqrt x J'(sqrt x) J(sqrt y)) / (2 (x - y)).
double bessel_cd(double nu, double x, double y) {
  const double rx = std::sqrt(x), ry = std::sqrt(y);
  auto jp = [&](double z) { return 0.5 * (bj(nu - 1.0, z) - bj(nu + 1.0, z)); };
  return (bj(nu, rx) * ry * jp(ry) - rx * jp(rx) * bj(nu, ry)) / (2.0 * (x - y));
}

LimitQuery query(Regime r, EnsembleSpec e, int N, std::vector<double> c, std::vector<double> y) {
  LimitQuery q;
  q.regime = r;
  q.ensemble = e;
  q.N = N;
  q.offsets = std::move(c);
  q.positions = std::move(y);
  return q;
}

}  // namespace

TEST_CASE("Airy kernel") {
  const double aip0 = -1.0 / (std::cbrt(3.0) * boost::math::tgamma(1.0 / 3.0));
  CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(aip0 * aip0).epsilon(1e-10));
  CHECK(airy_kernel(0.0, 0.0) == doctest::Approx(0.0669875).epsilon(1e-6));
  CHECK(airy_kernel(1.0, 2.0) == airy_kernel(2.0, 1.0));
  CHECK(std::fabs(airy_kernel(1.0, 2.0) - airy_kernel_integral(1.0, 2.0)) < 1e-9);
  // Both sides of the branch switch.
  for (double x : {-3.0, 0.5, 2.0}) {
    CHECK(std::fabs(airy_kernel(x, x + 1.01e-4) - airy_kernel_integral(x, x + 1.01e-4)) < 1e-9);
    const double y = x + 0.99e-4;
    const double ratio = (bai(x) * boost::math::airy_ai_prime(y) - bai(y) * boost::math::airy_ai_prime(x)) / (x - y);
    CHECK(std::fabs(airy_kernel(x, y) - ratio) < 1e-9);
    const double diag = std::pow(boost::math::airy_ai_prime(x), 2) - x * std::pow(bai(x), 2);
    CHECK(airy_kernel(x, x) == doctest::Approx(diag).epsilon(1e-10));
  }
  for (double x = -20.0; x <= 20.0; x += 2.5) CHECK(airy_kernel(x, x) >= 0.0);
  CHECK_THROWS_AS(airy_kernel(20.5, 0.0), RangeError);
}

TEST_CASE("extended Airy kernel") {
  SUBCASE("equal times give the Airy kernel") {
    for (double x : {-4.0, -1.5, 0.0, 1.2, 3.0})
      for (double y : {-4.0, -1.5, 0.0, 1.2, 3.0})
        CHECK(std::fabs(extended_airy(0.7, x, 0.7, y) - airy_kernel(x, y)) <= 1e-10);
  }
  SUBCASE("symmetry of the forward branch") {
    CHECK(extended_airy(0.0, 0.3, 1.5, -1.0) == doctest::Approx(extended_airy(0.0, -1.0, 1.5, 0.3)).epsilon(1e-12));
  }
  SUBCASE("tau = 1 at the origin against an independent quadrature") {
    const double ref = composite_gl([](double u) { return std::exp(-u) * bai(u) * bai(u); }, 0.0, 40.0, 200);
    CHECK(std::fabs(extended_airy(0.0, 0.0, 1.0, 0.0) - ref) < 1e-9);
  }
  SUBCASE("backward branch against the full-line closed form") {
    // int_R e^{t u} Ai(x+u) Ai(y+u) du = exp(t^3/12 - (x+y) t/2 - (x-y)^2/(4t)) / sqrt(4 pi t)
    for (double t : {0.5, 1.0, 2.0})
      for (const auto& [x, y] : std::vector<std::pair<double, double>>{{0.0, 0.0}, {0.5, -1.0}, {-2.0, 1.0}}) {
        const double right = composite_gl([&](double u) { return std::exp(t * u) * bai(x + u) * bai(y + u); }, 0.0, 40.0, 200);
        const double full = std::exp(t * t * t / 12.0 - 0.5 * (x + y) * t - (x - y) * (x - y) / (4.0 * t)) /
                            std::sqrt(4.0 * kPi * t);
        CAPTURE(t);
        CAPTURE(x);
        CHECK(std::fabs(extended_airy(t, x, 0.0, y) - (right - full)) < 1e-9);
      }
  }
  SUBCASE("diagonal values are non-negative") {
    for (double x = -6.0; x <= 6.0; x += 1.5) CHECK(extended_airy(-0.4, x, -0.4, x) >= 0.0);
  }
}

TEST_CASE("bead kernel") {
  CHECK(bead_kernel(0, 0.4, 0, 0.4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(bead_kernel(2, 0.4, 2, 1.3) == doctest::Approx(std::sin(kPi * -0.9) / (kPi * -0.9)).epsilon(1e-13));
  CHECK(std::fabs(bead_kernel(1, 0.7, 2, 0.7)) < 1e-15);
  CHECK(bead_kernel_alt(3, 0.2, 3, 0.2) == doctest::Approx(1.0).epsilon(1e-14));
  SUBCASE("closed forms against quadrature") {
    QuadOptions o;
    o.rel_tol = 1e-13;
    o.abs_tol = 1e-15;
    for (int d = -6; d <= 7; ++d)
      for (double dx : {0.0, 0.3, -1.7, 5.2}) {
        if (d == -1 && dx == 0.0) continue;
        const double w = kPi * dx, ph = -0.5 * kPi * d;
        auto f = [&](double s) { return std::pow(s, d) * std::cos(w * s + ph); };
        double ref;
        if (d >= 0) {
          ref = integrate(f, 0.0, 1.0, o).value;
        } else {
          // Truncate far out and add the leading oscillatory tail.
          const double U = 2000.0;
          ref = -composite_gl(f, 1.0, U, 40000);
          if (dx == 0.0) ref -= std::cos(ph) * std::pow(U, d + 1.0) / (-d - 1.0);
          else ref -= -std::pow(U, d) * std::sin(w * U + ph) / w;
        }
        CAPTURE(d);
        CAPTURE(dx);
        CHECK(std::fabs(bead_kernel(0, dx, d, 0.0) - ref) < (d < 0 ? 1e-8 : 1e-12));
      }
  }
  SUBCASE("determinants agree between the two forms") {
    std::mt19937_64 gen(17);
    std::uniform_int_distribution<int> cdist(-3, 3);
    std::uniform_real_distribution<double> xdist(-2.0, 2.0);
    double worst2 = 0.0, worst3 = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
      for (int r : {2, 3}) {
        std::vector<int> c(r);
        std::vector<double> x(r);
        for (int i = 0; i < r; ++i) {
          c[i] = cdist(gen);
          x[i] = xdist(gen);
        }
        Matrix a(r), b(r);
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) {
            a(i, j) = bead_kernel(c[i], x[i], c[j], x[j]);
            b(i, j) = bead_kernel_alt(c[i], x[i], c[j], x[j]);
          }
        const double e = std::fabs(determinant(a) - determinant(b));
        (r == 2 ? worst2 : worst3) = std::max(r == 2 ? worst2 : worst3, e);
      }
    }
    CHECK(worst2 <= 1e-8);
    CHECK(worst3 <= 1e-7);
  }
}

TEST_CASE("hard-edge kernel") {
  CHECK(hard_edge_kernel(0.0, 0, 0.0, 0, 0.0) == doctest::Approx(0.25).epsilon(1e-13));
  SUBCASE("equal species against the Christoffel-Darboux form") {
    for (const auto& [a, c] : std::vector<std::pair<double, int>>{{0.0, 0}, {0.5, 1}, {-0.5, 0}, {1.3, 2}}) {
      CAPTURE(a);
      CHECK(std::fabs(hard_edge_kernel(a, c, 1.0, c, 4.0) - bessel_cd(a + c, 1.0, 4.0)) < 1e-8);
      CHECK(hard_edge_kernel(a, c, 1.0, c, 4.0) == doctest::Approx(hard_edge_kernel(a, c, 4.0, c, 1.0)).epsilon(1e-12));
    }
  }
  SUBCASE("backward branch against an independent quadrature") {
    // -(1/2) int_1^inf u^{m+1} J J du, truncated at U with the leading
    // Hankel tail.
    for (const auto& [cx, x, y] : std::vector<std::tuple<int, double, double>>{{1, 2.0, 3.0}, {2, 1.0, 4.0}, {1, 5.0, 0.5}}) {
      const int m = -cx;
      const double a1 = std::sqrt(x), a2 = std::sqrt(y);
      auto f = [&](double u) { return 2.0 * std::pow(u, m + 1.0) * bj(cx, a1 * u) * bj(0.0, a2 * u); };
      const double U = 3000.0;
      double ref = composite_gl(f, 1.0, U, 60000);
      // J_n(z) ~ sqrt(2/(pi z)) cos(z - n pi/2 - pi/4); product tail of u^{m} cos cos.
      const double amp = 2.0 * 2.0 / (kPi * std::sqrt(a1 * a2));
      const double p1 = -0.5 * cx * kPi - 0.25 * kPi, p2 = -0.25 * kPi;
      auto tail = [&](double w, double ph) { return -std::pow(U, m) * std::sin(w * U + ph) / w; };
      ref += amp * 0.5 * (tail(a1 - a2, p1 - p2) + tail(a1 + a2, p1 + p2));
      CAPTURE(cx);
      CHECK(std::fabs(hard_edge_kernel(0.0, cx, x, 0, y) - (-0.25 * ref)) < 1e-6);
    }
  }
  SUBCASE("zero argument in the backward branch") {
    const double x = 2.0;
    auto f = [&](double u) { return 2.0 * bj(1.0, std::sqrt(x) * u); };
    // 2 int_1^inf J_1(a u) du = 2 J_0(a) / a
    const double ref = 2.0 * bj(0.0, std::sqrt(x)) / std::sqrt(x);
    CHECK(std::fabs(composite_gl(f, 0.0, 1.0, 10) + ref - 2.0 / std::sqrt(x)) < 1e-12);
    CHECK(hard_edge_kernel(0.0, 1, x, 0, 0.0) == doctest::Approx(-0.25 * ref).epsilon(1e-10));
  }
  SUBCASE("coincident positions in the backward branch") {
    // Offsets one apart: a jump at x = y, valued at the midpoint.
    const double below = hard_edge_kernel(0.0, 1, 0.5, 0, 0.5 - 1e-7), above = hard_edge_kernel(0.0, 1, 0.5, 0, 0.5 + 1e-7);
    CHECK(std::fabs(above - below) > 0.5);
    CHECK(hard_edge_kernel(0.0, 1, 0.5, 0, 0.5) == doctest::Approx(0.5 * (above + below)).epsilon(1e-5));
    // Offsets two apart: continuous.
    CHECK(hard_edge_kernel(0.3, 2, 1.5, 0, 1.5) ==
          doctest::Approx(0.5 * (hard_edge_kernel(0.3, 2, 1.5, 0, 1.5 - 1e-6) + hard_edge_kernel(0.3, 2, 1.5, 0, 1.5 + 1e-6))).epsilon(1e-5));
  }
  SUBCASE("errors and positivity") {
    CHECK_THROWS_AS(hard_edge_kernel(-1.0, 0, 1.0, 0, 1.0), ParameterError);
    CHECK_THROWS_AS(hard_edge_kernel(0.0, 0, -1.0, 0, 1.0), RangeError);
    for (double x = 0.0; x <= 30.0; x += 3.0) CHECK(hard_edge_kernel(0.7, 1, x, 1, x) >= 0.0);
  }
}

TEST_CASE("limit queries") {
  CHECK(parse_regime(to_string(Regime::SoftDrift)) == Regime::SoftDrift);
  CHECK_THROWS_AS(parse_regime("edge"), ArgumentError);
  CHECK_THROWS_AS(query(Regime::Bulk, EnsembleSpec::laguerre(0), 50, {0}, {0}).validate(), ParameterError);
  CHECK_THROWS_AS(query(Regime::HardEdge, EnsembleSpec::gaussian(), 50, {0}, {0}).validate(), ParameterError);
  CHECK_THROWS_AS(query(Regime::SoftFixed, EnsembleSpec::gaussian(), 50, {0.5}, {0}).validate(), ArgumentError);
  CHECK_THROWS_AS(query(Regime::SoftFixed, EnsembleSpec::gaussian(), 50, {0, 1}, {0}).validate(), ArgumentError);
  CHECK_THROWS_AS(map_query(query(Regime::HardEdge, EnsembleSpec::laguerre(0), 5, {5}, {1.0})), ArgumentError);
  CHECK_THROWS_AS(map_query(query(Regime::HardEdge, EnsembleSpec::jacobi(0, 0), 5, {0}, {200.0})), ArgumentError);
  CHECK_THROWS_AS(map_query(query(Regime::SoftDrift, EnsembleSpec::gaussian(), 50, {0.5}, {0})), ArgumentError);
  const auto m = map_query(query(Regime::SoftDrift, EnsembleSpec::laguerre(0), 100, {0.3}, {0.0}));
  CHECK(m[0].point.s == 100 - std::lround(0.6 * std::pow(200.0, 2.0 / 3.0)));
  CHECK(m[0].offset == doctest::Approx(0.3).epsilon(0.02));
  CHECK(m[0].jacobian == doctest::Approx(2.0 * std::cbrt(200.0)));
}

TEST_CASE("scaled finite kernels") {
  SUBCASE("soft edge, Gaussian") {
    double prev = 1.0;
    for (int N : {50, 100, 200}) {
      const double e = std::fabs(scaled_finite_kernel(query(Regime::SoftFixed, EnsembleSpec::gaussian(), N, {0}, {0.0}), 0, 0) -
                                 airy_kernel(0.0, 0.0));
      CHECK(e < prev);
      prev = e;
    }
    CHECK(prev < 5e-2);
    const LimitQuery q = query(Regime::SoftFixed, EnsembleSpec::gaussian(), 200, {0, 2}, {-1.0, 0.5});
    CHECK(scaled_finite_product(q, 0, 1) == doctest::Approx(limit_product(q, 0, 1)).epsilon(0.05));
  }
  SUBCASE("soft edge, Laguerre") {
    const LimitQuery q = query(Regime::SoftFixed, EnsembleSpec::laguerre(0.5), 200, {1}, {0.5});
    CHECK(std::fabs(scaled_finite_kernel(q, 0, 0) - limit_kernel(q, 0, 0)) < 0.01);
  }
  SUBCASE("bulk") {
    const LimitQuery d = query(Regime::Bulk, EnsembleSpec::gaussian(), 200, {0}, {0.0});
    CHECK(std::fabs(scaled_finite_kernel(d, 0, 0) - 1.0) < 0.05);
    const LimitQuery o = query(Regime::Bulk, EnsembleSpec::gaussian(), 200, {1, 1}, {0.2, 1.1});
    const double sine = std::sin(kPi * -0.9) / (kPi * -0.9);
    CHECK(std::fabs(scaled_finite_kernel(o, 0, 1) - sine) < 0.05);
    CHECK(limit_gauge_free(o, 0, 1) == doctest::Approx(sine).epsilon(1e-12));
    const LimitQuery x = query(Regime::Bulk, EnsembleSpec::gaussian(), 200, {0, 1}, {0.0, 0.7});
    CHECK(std::fabs(scaled_finite_det(x) - limit_det(x)) < 0.02);
  }
  SUBCASE("hard edge") {
    const LimitQuery d = query(Regime::HardEdge, EnsembleSpec::laguerre(0), 200, {0}, {0.0});
    CHECK(std::fabs(scaled_finite_kernel(d, 0, 0) - 0.25) < 0.02);
    const LimitQuery x = query(Regime::HardEdge, EnsembleSpec::laguerre(0), 200, {0, 1}, {1.0, 2.5});
    const double fp = scaled_finite_product(x, 0, 1), lp = limit_product(x, 0, 1);
    CHECK(fp * lp > 0.0);
    CHECK(std::fabs(std::sqrt(std::fabs(fp)) - std::sqrt(std::fabs(lp))) < 0.05);
    double prev = 1.0;
    for (int N : {50, 100, 200}) {
      const double e = std::fabs(scaled_finite_kernel(query(Regime::HardEdge, EnsembleSpec::jacobi(0.5, 1.0), N, {0}, {1.0}), 0, 0) -
                                 hard_edge_kernel(0.5, 0, 1.0, 0, 1.0));
      CHECK(e < prev);
      prev = e;
    }
    CHECK(prev < 0.01);
  }
  SUBCASE("soft edge with drifting species") {
    for (EnsembleSpec e : {EnsembleSpec::laguerre(0), EnsembleSpec::gaussian()}) {
      const double c = e.kind == EnsembleKind::Gaussian ? -0.3 : 0.3;
      double prev = 1.0;
      for (int N : {100, 200, 400}) {
        const LimitQuery q = query(Regime::SoftDrift, e, N, {0.0, c}, {0.0, -0.5});
        const double err = std::fabs(scaled_finite_det(q) - limit_det(q));
        CHECK(err < prev);
        prev = err;
        CHECK(std::fabs(scaled_finite_kernel(q, 1, 1) - limit_kernel(q, 1, 1)) < 0.02);
      }
      CHECK(prev < 0.1);
    }
  }
}

TEST_CASE("convergence reports") {
  const LimitQuery soft = query(Regime::SoftFixed, EnsembleSpec::gaussian(), 0, {0}, {0.0});
  const ConvergenceReport r = convergence_report(soft, {50, 100, 200}, 2);
  CHECK(r.monotone);
  CHECK(r.converging);
  CHECK(r.order_estimate > 0.3);
  CHECK(r.limit == doctest::Approx(0.0669875).epsilon(1e-6));
  CHECK(r.errors.back() < 5e-2);
  const ConvergenceReport r1 = convergence_report(soft, {50, 100, 200}, 1);
  CHECK(r1.finite == r.finite);
  const ConvergenceReport bulk =
      convergence_report(query(Regime::Bulk, EnsembleSpec::gaussian(), 0, {0}, {0.3}), {50, 100, 200});
  CHECK(bulk.converging);
  const ConvergenceReport stuck = convergence_report([](int) { return 1.25; }, 1.0, {50, 100, 200});
  CHECK_FALSE(stuck.monotone);
  CHECK_FALSE(stuck.converging);
  CHECK(stuck.order_estimate == doctest::Approx(0.0));
  CHECK_THROWS_AS(convergence_report(soft, {50, 100}), ArgumentError);
  CHECK_THROWS_AS(convergence_report(soft, {100, 50, 200}), ArgumentError);
}
