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

#include <cmath>
#include <vector>

#include "doctest.h"
#include "minorkern/errors.hpp"
#include "minorkern/kernel.hpp"
#include "minorkern/quadrature.hpp"
#include "minorkern/samplers.hpp"
#include "minorkern/validate.hpp"

using namespace minorkern;

TEST_CASE("brute force: examples") {
  const ProcessSpec g1{EnsembleSpec::gaussian(), 1};
  CHECK(brute_force_marginal(g1, {{1, 0.0}}) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-10));

  const ProcessSpec g2{EnsembleSpec::gaussian(), 2};
  const double k = kernel_K(g2, {1, 0.3}, {1, 0.3}).value;
  CHECK(std::abs(brute_force_marginal(g2, {{1, 0.3}}) - k) < 1e-4 * k);

  const ProcessSpec l2{EnsembleSpec::laguerre(1.0), 2};
  const GaussRule& g = gauss_legendre(64);
  double mass = 0.0;
  for (int panel = 0; panel < 4; ++panel) {
    const double a = 15.0 * panel, b = a + 15.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      mass += 0.5 * (b - a) * g.weights[i] *
              brute_force_marginal(l2, {{1, a + 0.5 * (b - a) * (g.nodes[i] + 1.0)}});
  }
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("brute force: errors") {
  CHECK_THROWS_AS(brute_force_marginal(ProcessSpec{EnsembleSpec::gaussian(), 4}, {{1, 0.0}}), ArgumentError);
  CHECK_THROWS_AS(brute_force_marginal(ProcessSpec{EnsembleSpec::gaussian(), 3}, {}), ArgumentError);
  CHECK_THROWS_AS(brute_force_marginal(ProcessSpec{EnsembleSpec::gaussian(), 2}, {{3, 0.0}}), ArgumentError);
}

TEST_CASE("brute force agrees with the kernel, N <= 2, every ensemble") {
  struct Case {
    EnsembleSpec e;
    double lo, hi;
  };
  for (const Case& c : {Case{EnsembleSpec::gaussian(), -1.5, 1.5}, Case{EnsembleSpec::laguerre(0.5), 0.3, 4.0},
                        Case{EnsembleSpec::jacobi(1.0, 0.5), 0.1, 0.9}}) {
    for (int N = 1; N <= 2; ++N) {
      const ProcessSpec proc{c.e, N};
      for (int s = 1; s <= N; ++s)
        for (int i = 0; i < 5; ++i) {
          const double y = c.lo + (c.hi - c.lo) * i / 4.0;
          const double bf = brute_force_marginal(proc, {{s, y}});
          const double k = kernel_K(proc, {s, y}, {s, y}).value;
          CAPTURE(to_string(c.e.kind));
          CAPTURE(s);
          CAPTURE(y);
          CHECK(std::abs(bf - k) < 1e-4 * std::max(k, 1e-3));
        }
    }
  }
}

TEST_CASE("brute force two-point, Gaussian N = 2") {
  const ProcessSpec g2{EnsembleSpec::gaussian(), 2};
  const double pairs[4][2] = {{0.0, 0.5}, {-0.4, 0.3}, {0.7, -0.2}, {0.2, 1.1}};
  for (const auto& pr : pairs) {
    const std::vector<SpeciesPoint> pts{{1, pr[0]}, {2, pr[1]}};
    const double bf = brute_force_marginal(g2, pts);
    const double k = correlation(g2, pts);
    CHECK(std::abs(bf - k) < 5e-4 * std::max(k, 1e-3));
  }
}

TEST_CASE("biorthogonality helper") {
  CHECK(biorthogonality_error(ProcessSpec{EnsembleSpec::laguerre(0.0), 10}, 10) < 1e-8);
  CHECK(biorthogonality_error(ProcessSpec{EnsembleSpec::jacobi(-0.5, 0.5), 6}, 4) < 1e-8);
  CHECK(biorthogonality_error(ProcessSpec{EnsembleSpec::gaussian(), 12}, 12) < 1e-8);
  CHECK_THROWS_AS(biorthogonality_gram(ProcessSpec{EnsembleSpec::gaussian(), 3}, 4), ArgumentError);
}

TEST_CASE("empirical density") {
  SUBCASE("single chain, one point") {
    InterlacedChain c;
    c.species[1] = {0.25};
    const DensityEstimate e = empirical_density({c}, 1, {});
    CHECK(e.mass() == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("mass equals s") {
    std::vector<InterlacedChain> chains;
    for (std::uint64_t k = 0; k < 1000; ++k) chains.push_back(sample_gue_minor_chain(3, 5, k));
    for (int s = 1; s <= 3; ++s) CHECK(empirical_density(chains, s, {}).mass() == doctest::Approx(s).epsilon(1e-12));
    const DensityEstimate e = empirical_density(chains, 2, {-6.0, 6.0, 40});
    for (std::size_t k = 0; k < e.value.size(); ++k) {
      CHECK(e.ci_lo[k] <= e.value[k]);
      CHECK(e.value[k] <= e.ci_hi[k]);
    }
  }
  SUBCASE("missing species") {
    InterlacedChain c;
    c.species[1] = {0.25};
    CHECK_THROWS_AS(empirical_density({c}, 2, {}), ArgumentError);
    CHECK_THROWS_AS(empirical_density({}, 1, {}), ArgumentError);
  }
  SUBCASE("Gaussian N = 2, s = 1, 1e6 chains") {
    const ProcessSpec proc{EnsembleSpec::gaussian(), 2};
    DensityAccumulator acc(1, -4.0, 4.0, 100);
    for (std::uint64_t k = 0; k < 1000000; ++k) acc.add(sample_gue_minor_chain(2, 9, k));
    const DensityEstimate e = acc.estimate();
    const GridFunction pred{e.centers(), bin_averaged_density(proc, 1, -4.0, 4.0, 100)};
    const ComparisonReport r = compare(pred, e, CompareTest::SupNorm, 0.02);
    CHECK(r.pass);
    CHECK(r.statistic < 0.02);
    CHECK(compare(pred, e, CompareTest::KolmogorovSmirnov).pass);
    CHECK(compare(pred, e, CompareTest::ChiSquare).pass);
  }
}

TEST_CASE("compare") {
  InterlacedChain c;
  c.species[1] = {0.1};
  DensityAccumulator acc(1, 0.0, 1.0, 4);
  for (double v : {0.1, 0.3, 0.6, 0.9}) acc.add_values({v});
  const DensityEstimate e = acc.estimate();
  GridFunction same{e.centers(), e.value};
  const ComparisonReport r0 = compare(same, e, CompareTest::SupNorm, 0.02);
  CHECK(r0.statistic == 0.0);
  CHECK(r0.pass);
  GridFunction shifted = same;
  for (double& v : shifted.value) v += 0.1;
  const ComparisonReport r1 = compare(shifted, e, CompareTest::SupNorm, 0.02);
  CHECK_FALSE(r1.pass);
  CHECK(r1.statistic == doctest::Approx(0.1));

  // Swapping the roles keeps the sup-norm verdict.
  DensityAccumulator acc2(1, 0.0, 1.0, 4);
  for (double v : {0.1, 0.3, 0.35, 0.9}) acc2.add_values({v});
  const DensityEstimate e2 = acc2.estimate();
  const ComparisonReport ab = compare({e.centers(), e2.value}, e, CompareTest::SupNorm, 0.5);
  const ComparisonReport ba = compare({e2.centers(), e.value}, e2, CompareTest::SupNorm, 0.5);
  CHECK(ab.statistic == ba.statistic);
  CHECK(ab.pass == ba.pass);

  GridFunction wrong{{0.0, 1.0}, {1.0, 1.0}};
  CHECK_THROWS_AS(compare(wrong, e, CompareTest::SupNorm), ArgumentError);
}

TEST_CASE("density point sampler") {
  const ProcessSpec g1{EnsembleSpec::gaussian(), 1};
  const DensityPointSampler d(g1, 1);
  // rho_1 for N = 1 is the standard normal with variance 1/2.
  CHECK(std::fabs(d.quantile(0.5)) < 1e-3);
  CHECK(d.quantile(0.8413447460685429) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
  CHECK(d.quantile(-1.0) == d.quantile(0.0));
  CHECK(d.quantile(2.0) == d.quantile(1.0));
  double prev = -1e300;
  for (int i = 0; i <= 100; ++i) {
    const double x = d.quantile(i / 100.0);
    CHECK(x >= prev);
    prev = x;
  }
  const ProcessSpec l3{EnsembleSpec::laguerre(0.5), 3};
  const DensityPointSampler d3(l3, 3);
  CHECK(d3.quantile(0.0) >= 0.0);
}

TEST_CASE("gauge check") {
  const ProcessSpec j{EnsembleSpec::jacobi(0.5, 1.0), 4};
  const GaugeCheck r = gauge_check(j, 20, 3);
  CHECK(r.pass);
  CHECK(r.pairs == 20);
  CHECK(r.seed == 3);
  CHECK(r.max_scaled <= 1e-8);
  CHECK(r.max_abs >= 0.0);
  CHECK(r.unconverged == 0);
  const GaugeCheck t = gauge_check(j, 20, 3, 1e-8, 4);
  CHECK(t.max_scaled == r.max_scaled);
  CHECK(t.worst_row == r.worst_row);
  CHECK(t.worst_col == r.worst_col);
  // A tolerance below rounding cannot pass.
  CHECK_FALSE(gauge_check(j, 20, 3, 0.0).pass);
  CHECK_THROWS_AS(gauge_check(j, 0, 3), ArgumentError);
}
