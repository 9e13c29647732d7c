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

#include "commands.hpp"
#include "minorkern/errors.hpp"
#include "minorkern/kernel.hpp"
#include "minorkern/linalg.hpp"
#include "minorkern/parallel.hpp"
#include "minorkern/random.hpp"
#include "minorkern/rsklab.hpp"
#include "minorkern/scaling.hpp"
#include "minorkern/validate.hpp"

namespace minorkern::cli {

namespace {

CheckResult at_most(std::string name, double stat, double threshold) {
  return {std::move(name), stat, threshold, stat <= threshold};
}

std::vector<CheckResult> suite_biorthogonality(const RunConfig& c) {
  const ProcessSpec proc{c.ensemble, c.N.value_or(10)};
  proc.validate();
  const double tol = c.tol("biorthogonality", 1e-8);
  std::vector<double> err(static_cast<std::size_t>(proc.N));
  parallel_for(err.size(), c.resolved_threads(),
               [&](std::size_t i, int) { err[i] = biorthogonality_error(proc, static_cast<int>(i) + 1); });
  std::vector<CheckResult> out;
  for (int n = 1; n <= proc.N; ++n) out.push_back(at_most("gram n=" + std::to_string(n), err[n - 1], tol));
  return out;
}

std::vector<CheckResult> suite_oracle(const RunConfig& c) {
  const ProcessSpec proc{c.ensemble, c.N.value_or(2)};
  proc.validate();
  if (proc.N > 3) throw ArgumentError("oracle suite supports N <= 3");
  double lo, hi;
  density_range(proc, lo, hi);
  const double y1 = lo + 0.41 * (hi - lo), y2 = lo + 0.58 * (hi - lo);
  struct Case {
    std::string name;
    std::vector<SpeciesPoint> pts;
    double tol;
  };
  std::vector<Case> cases;
  const double t1 = c.tol("oracle_1pt", 1e-4), t2 = c.tol("oracle_2pt", 5e-4);
  for (int s = 1; s <= proc.N; ++s)
    for (double y : {y1, y2})
      cases.push_back({"rho1 s=" + std::to_string(s), {{s, y}}, t1});
  cases.push_back({"rho2 top/bottom", {{proc.N, y1}, {1, y2}}, t2});
  if (proc.N >= 2) cases.push_back({"rho2 same species", {{proc.N, y1}, {proc.N, y2}}, t2});
  std::vector<CheckResult> out(cases.size());
  parallel_for(cases.size(), c.resolved_threads(), [&](std::size_t i, int) {
    const double brute = brute_force_marginal(proc, cases[i].pts);
    const double kern = correlation(proc, cases[i].pts);
    out[i] = at_most(cases[i].name, std::abs(brute - kern), cases[i].tol);
  });
  return out;
}

std::vector<CheckResult> suite_sampler(const RunConfig& c) {
  const int N = c.N.value_or(3);
  const long draws = c.draws.value_or(200000);
  const double tol = c.tol("sup_norm", 0.02);
  const SamplerClosure r = sampler_vs_kernel(c.ensemble, N, draws, resolve_seed(c), tol, c.resolved_threads());
  std::vector<CheckResult> out;
  out.push_back(at_most("interlacing violations", static_cast<double>(r.interlacing_violations), 0.0));
  for (const SamplerCheck& s : r.species)
    out.push_back({"sup-norm s=" + std::to_string(s.s), s.report.statistic, s.report.threshold, s.report.pass});
  return out;
}

std::vector<CheckResult> suite_gauge(const RunConfig& c) {
  const ProcessSpec proc{c.ensemble, c.N.value_or(10)};
  const double tol = c.tol("gauge", 1e-8);
  const GaugeCheck r = gauge_check(proc, 50, resolve_seed(c), tol, c.resolved_threads());
  return {{"max |direct - gauge * K| / max(1, |direct|) over 50 pairs", r.max_scaled, tol, r.pass}};
}

std::vector<CheckResult> suite_rsk(const RunConfig& c) {
  const std::uint64_t seed = resolve_seed(c);
  const long draws = c.draws.value_or(2000);
  LatticeConfig lc;
  lc.n1 = 4;
  lc.n2 = 2;
  lc.p = 2;
  lc.model = WeightModel::Geometric;
  lc.z = 0.6;
  lc.t = 0.9;
  lc.alpha = {0.5, 0.7};
  std::vector<char> inter(static_cast<std::size_t>(draws)), greene(static_cast<std::size_t>(draws));
  parallel_for(static_cast<std::size_t>(draws), c.resolved_threads(), [&](std::size_t k, int) {
    const LatticeGrid g = sample_lattice(lc, seed, k);
    const ShapeSequence seq = rsk_shape_sequence(g, lc.n2, lc.p);
    inter[k] = seq.interlaced() ? 0 : 1;
    bool ok = true;
    for (int s = 0; s <= lc.p; ++s) {
      const long first = seq.shapes[s].empty() ? 0 : seq.shapes[s][0];
      ok = ok && static_cast<double>(first) == last_passage(g, lc.n1, lc.n2 + s);
    }
    greene[k] = ok ? 0 : 1;
  });
  std::vector<CheckResult> out;
  out.push_back(at_most("shape interlacing violations", static_cast<double>(std::count(inter.begin(), inter.end(), 1)), 0.0));
  out.push_back(at_most("first row != last passage", static_cast<double>(std::count(greene.begin(), greene.end(), 1)), 0.0));
  const JacobiLimitParams prm{c.lattice.n1, c.lattice.n2, c.lattice.p, c.lattice.a, c.lattice.a_s};
  const SpeciesValues x = c.x.empty() ? SpeciesValues{{0.5}, {0.9, 0.3}, {1.2, 0.6, 0.2}} : c.x;
  const double rt = c.tol("ratio", 0.3);
  const DiscreteLimitReport r = discrete_limit_study(prm, x, {50, 100, 200}, rt);
  double worst = 0.0;
  for (std::size_t i = 0; i < r.ratios.size(); ++i) worst = std::max(worst, std::abs(r.ratios[i] - 2.0));
  out.push_back(at_most("continuum limit |error ratio - 2|", worst, rt));
  return out;
}

std::vector<CheckResult> suite_lpp_bridge(const RunConfig& c) {
  const std::uint64_t seed = resolve_seed(c);
  const long draws = c.draws.value_or(100000);
  const int n = c.n ? *c.n : c.N.value_or(4);
  const BridgeReport b = lpp_eigenvalue_bridge_test(n, draws, seed, 1.0, c.resolved_threads());
  const WishartReport w = wishart_homogeneous_test(n, draws, seed, 1.0, c.resolved_threads());
  return {{"KS l(n,n) vs largest eigenvalue", b.ks.statistic, b.ks.critical_value, b.ks.pass},
          {"KS homogeneous Wishart vs update chain", w.ks.statistic, w.ks.critical_value, w.ks.pass}};
}

std::vector<CheckResult> suite_bead(const RunConfig& c) {
  const std::uint64_t seed = resolve_seed(c);
  const double tol = c.tol("bead_det", 1e-7);
  const int trials = 100;
  std::vector<double> worst(trials);
  parallel_for(trials, c.resolved_threads(), [&](std::size_t k, int) {
    DrawRng rng(seed, k, 0x6b);
    double w = 0.0;
    for (int r = 1; r <= 3; ++r) {
      std::vector<int> off(r);
      std::vector<double> x(r);
      for (int i = 0; i < r; ++i) {
        off[i] = static_cast<int>(std::floor(7.0 * rng.uniform())) - 3;
        x[i] = -2.0 + 4.0 * rng.uniform();
      }
      Matrix a(r), b(r);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
          a(i, j) = bead_kernel(off[i], x[i], off[j], x[j]);
          b(i, j) = bead_kernel_alt(off[i], x[i], off[j], x[j]);
        }
      w = std::max(w, std::abs(determinant(a) - determinant(b)));
    }
    worst[k] = w;
  });
  return {at_most("max |det difference| over 100 configurations", *std::max_element(worst.begin(), worst.end()), tol)};
}

std::vector<CheckResult> suite_scaling(const RunConfig& c) {
  const int threads = c.resolved_threads();
  std::vector<CheckResult> out;
  LimitQuery soft;
  soft.regime = Regime::SoftFixed;
  soft.ensemble = EnsembleSpec::gaussian();
  soft.offsets = {0};
  soft.positions = {0.0};
  const ConvergenceReport r = convergence_report(soft, {50, 100, 200}, threads);
  out.push_back({"soft edge errors decreasing", r.monotone ? 1.0 : 0.0, 1.0, r.monotone});
  out.push_back(at_most("soft edge error at N=200", r.errors.back(), c.tol("soft", 5e-2)));

  LimitQuery bulk = soft;
  bulk.regime = Regime::Bulk;
  bulk.N = 200;
  out.push_back(at_most("bulk density at N=200", std::abs(scaled_finite_kernel(bulk, 0, 0) - 1.0), c.tol("bulk", 0.05)));

  LimitQuery hard = soft;
  hard.regime = Regime::HardEdge;
  hard.ensemble = EnsembleSpec::laguerre(0.0);
  hard.N = 200;
  out.push_back(at_most("hard edge diagonal at N=200", std::abs(scaled_finite_kernel(hard, 0, 0) - 0.25), c.tol("hard", 0.02)));
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"biorthogonality", "oracle", "sampler-vs-kernel", "gauge",
                                              "rsk",             "lpp-bridge", "bead-det",      "scaling"};
  return names;
}

Json run_suite(const RunConfig& c) {
  std::vector<CheckResult> checks;
  if (c.suite == "biorthogonality") checks = suite_biorthogonality(c);
  else if (c.suite == "oracle") checks = suite_oracle(c);
  else if (c.suite == "sampler-vs-kernel") checks = suite_sampler(c);
  else if (c.suite == "gauge") checks = suite_gauge(c);
  else if (c.suite == "rsk") checks = suite_rsk(c);
  else if (c.suite == "lpp-bridge") checks = suite_lpp_bridge(c);
  else if (c.suite == "bead-det") checks = suite_bead(c);
  else if (c.suite == "scaling") checks = suite_scaling(c);
  else throw ArgumentError("unknown suite '" + c.suite + "'");
  bool pass = !checks.empty();
  Json list = Json::array();
  for (const CheckResult& ch : checks) {
    pass = pass && ch.pass;
    list.push_back({{"name", ch.name}, {"statistic", ch.statistic}, {"threshold", ch.threshold}, {"pass", ch.pass}});
  }
  return {{"suite", c.suite}, {"pass", pass}, {"seed", resolve_seed(c)}, {"checks", list}};
}

}  // namespace minorkern::cli
