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

#include "minorkern/validate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "minorkern/errors.hpp"
#include "minorkern/orthopoly.hpp"
#include "minorkern/parallel.hpp"
#include "minorkern/quadrature.hpp"
#include "minorkern/random.hpp"
#include "minorkern/stats.hpp"

namespace minorkern {

namespace {

constexpr int kWeightNodes = 64;
constexpr int kPolyNodes = 4;
constexpr int kMaxVars = 6;

// Gelfand-Tsetlin layout: node (s, j), species s = 1..N, j = 1..s, x_1 largest.
struct Layout {
  int N = 0;
  int M = 0;
  std::array<int, kMaxVars> species{};
  // less[u] bit v set when x_u < x_v is implied by interlacing.
  std::array<unsigned, kMaxVars> less{};

  explicit Layout(int n) : N(n), M(n * (n + 1) / 2) {
    auto id = [](int s, int j) { return s * (s - 1) / 2 + (j - 1); };
    for (int s = 1; s <= N; ++s)
      for (int j = 1; j <= s; ++j) species[id(s, j)] = s;
    std::array<unsigned, kMaxVars> edge{};
    for (int s = 1; s < N; ++s)
      for (int j = 1; j <= s; ++j) {
        edge[id(s + 1, j + 1)] |= 1u << id(s, j);  // x^(s+1)_{j+1} < x^(s)_j
        edge[id(s, j)] |= 1u << id(s + 1, j);      // x^(s)_j < x^(s+1)_j
      }
    less = closure(edge);
  }

  int id(int s, int j) const { return s * (s - 1) / 2 + (j - 1); }

  std::array<unsigned, kMaxVars> closure(std::array<unsigned, kMaxVars> r) const {
    for (int k = 0; k < M; ++k)
      for (int i = 0; i < M; ++i)
        if (r[i] >> k & 1u) r[i] |= r[k];
    return r;
  }
};

struct Level {
  int var = 0;
  int nodes = kWeightNodes;
  bool top = false;
  unsigned lower = 0;  // assigned nodes below var when it is integrated
  unsigned upper = 0;
  unsigned assigned = 0;  // all variables with values when var is integrated
};

class BruteForce {
 public:
  BruteForce(const ProcessSpec& proc) : proc_(proc), lay_(proc.N), fam_(proc.ensemble, 0) {
    lo_ = proc.ensemble.kind == EnsembleKind::Gaussian ? -12.0 : proc.ensemble.support_lo();
    hi_ = proc.ensemble.kind == EnsembleKind::Gaussian ? 12.0
          : proc.ensemble.kind == EnsembleKind::Laguerre ? 90.0 + 4.0 * proc.ensemble.a
                                                         : 1.0;
    const auto non_integer = [](double v) { return std::abs(v - std::round(v)) > 1e-12; };
    sing_lo_ = proc.ensemble.kind != EnsembleKind::Gaussian && non_integer(proc.ensemble.a);
    sing_hi_ = proc.ensemble.kind == EnsembleKind::Jacobi && non_integer(proc.ensemble.b);
  }

  // Integral with the nodes in `fixed` (bit set) held at val.
  double integrate(unsigned fixed, const std::array<double, kMaxVars>& val) {
    std::array<unsigned, kMaxVars> rel = lay_.less;
    for (int u = 0; u < lay_.M; ++u) {
      if (!(fixed >> u & 1u)) continue;
      for (int v = 0; v < lay_.M; ++v) {
        if (!(fixed >> v & 1u) || u == v) continue;
        if ((rel[u] >> v & 1u) && !(val[u] < val[v])) return 0.0;
        if (val[u] < val[v]) rel[u] |= 1u << v;
      }
    }
    rel = lay_.closure(rel);
    for (int u = 0; u < lay_.M; ++u)
      if (rel[u] >> u & 1u) return 0.0;
    const std::vector<Level> levels = plan(fixed, rel);
    x_ = val;
    return nest(levels, 0, 1.0);
  }

 private:
  // Top-species variables outermost (they carry the weight), the rest inside
  // with a low-order rule: given the top row the integrand is a piecewise
  // polynomial whose breaks sit at already assigned values, and nest() splits
  // there.
  std::vector<Level> plan(unsigned fixed, const std::array<unsigned, kMaxVars>& rel) const {
    std::vector<int> order;
    for (int pass = 0; pass < 2; ++pass)
      for (int v = lay_.M - 1; v >= 0; --v) {
        if (fixed >> v & 1u) continue;
        const bool top = lay_.species[v] == lay_.N;
        if (top == (pass == 0)) order.push_back(v);
      }
    std::vector<Level> levels;
    unsigned assigned = fixed;
    for (int v : order) {
      Level l;
      l.var = v;
      l.top = lay_.species[v] == lay_.N;
      l.nodes = l.top ? kWeightNodes : kPolyNodes;
      l.assigned = assigned;
      for (int u = 0; u < lay_.M; ++u) {
        if (!(assigned >> u & 1u)) continue;
        if (rel[u] >> v & 1u) l.lower |= 1u << u;
        if (rel[v] >> u & 1u) l.upper |= 1u << u;
      }
      assigned |= 1u << v;
      levels.push_back(l);
    }
    return levels;
  }

  double top_factor() const {
    double v = 1.0;
    for (int j = 1; j <= lay_.N; ++j) {
      const double xj = x_[lay_.id(lay_.N, j)];
      v *= eval_weight(fam_, xj);
      for (int k = j + 1; k <= lay_.N; ++k) v *= xj - x_[lay_.id(lay_.N, k)];
    }
    return v;
  }

  double nest(const std::vector<Level>& levels, std::size_t depth, double acc) {
    if (depth == levels.size())
      return levels.empty() || levels.back().top ? acc * top_factor() : acc;
    const Level& l = levels[depth];
    if (!l.top && (depth == 0 || levels[depth - 1].top)) acc *= top_factor();
    double a = lo_, b = hi_;
    for (int u = 0; u < lay_.M; ++u) {
      if (l.lower >> u & 1u) a = std::max(a, x_[u]);
      if (l.upper >> u & 1u) b = std::min(b, x_[u]);
    }
    if (!(b > a)) return 0.0;
    std::array<double, kMaxVars + 2> cuts{};
    int nc = 0;
    cuts[nc++] = a;
    for (int u = 0; u < lay_.M; ++u)
      if ((l.assigned >> u & 1u) && x_[u] > a && x_[u] < b) cuts[nc++] = x_[u];
    cuts[nc++] = b;
    std::sort(cuts.begin(), cuts.begin() + nc);
    double sum = 0.0;
    for (int k = 0; k + 1 < nc; ++k) {
      if (cuts[k + 1] > cuts[k]) sum += piece(levels, depth, acc, cuts[k], cuts[k + 1]);
    }
    return sum;
  }

  double piece(const std::vector<Level>& levels, std::size_t depth, double acc, double a, double b) {
    const Level& l = levels[depth];
    const bool slo = l.top && sing_lo_ && a == lo_;
    const bool shi = l.top && sing_hi_ && b == hi_;
    const GaussRule& g = gauss_legendre(l.nodes);
    double sum = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      const double u = 0.5 * (g.nodes[i] + 1.0);
      double x, jac;
      if (slo && shi) {
        x = a + (b - a) * u * u * (3.0 - 2.0 * u);
        jac = (b - a) * 6.0 * u * (1.0 - u);
      } else if (slo) {
        x = a + (b - a) * u * u;
        jac = (b - a) * 2.0 * u;
      } else if (shi) {
        x = b - (b - a) * u * u;
        jac = (b - a) * 2.0 * u;
      } else {
        x = a + (b - a) * u;
        jac = b - a;
      }
      x_[l.var] = x;
      sum += 0.5 * g.weights[i] * jac * nest(levels, depth + 1, acc);
    }
    return sum;
  }

  ProcessSpec proc_;
  Layout lay_;
  ShiftedFamily fam_;
  double lo_ = 0.0, hi_ = 0.0;
  bool sing_lo_ = false, sing_hi_ = false;
  std::array<double, kMaxVars> x_{};
};

double species_mass_hint(const ProcessSpec& proc) {
  return proc.ensemble.kind == EnsembleKind::Laguerre ? 4.0 * proc.N + 2.0 * proc.ensemble.a : 0.0;
}

}  // namespace

double brute_force_marginal(const ProcessSpec& proc, const std::vector<SpeciesPoint>& targets) {
  proc.validate();
  if (proc.N > 3) throw ArgumentError("brute force supports N <= 3");
  const Layout lay(proc.N);
  if (lay.M - static_cast<int>(targets.size()) > 5)
    throw ArgumentError("brute force supports at most 5 integrated variables");
  if (static_cast<int>(targets.size()) > lay.M) throw ArgumentError("more targets than particles");
  for (const SpeciesPoint& t : targets) {
    if (t.s < 1 || t.s > proc.N) throw ArgumentError("target species outside 1..N");
    if (!std::isfinite(t.y)) throw ArgumentError("target position must be finite");
  }
  BruteForce bf(proc);
  const double norm = bf.integrate(0u, {});
  if (!(norm > 0.0) || !std::isfinite(norm)) throw NumericError("brute force normalization failed");

  double total = 0.0;
  std::array<double, kMaxVars> val{};
  std::function<void(std::size_t, unsigned)> assign = [&](std::size_t k, unsigned fixed) {
    if (k == targets.size()) {
      total += bf.integrate(fixed, val);
      return;
    }
    const SpeciesPoint& t = targets[k];
    if (!proc.ensemble.in_open_support(t.y)) return;
    for (int j = 1; j <= t.s; ++j) {
      const int v = lay.id(t.s, j);
      if (fixed >> v & 1u) continue;
      val[v] = t.y;
      assign(k + 1, fixed | (1u << v));
    }
  };
  assign(0, 0u);
  return total / norm;
}

namespace {

Matrix gram_impl(const ProcessSpec& proc, int n, double abs_tol, double& quad_error, bool& converged) {
  proc.validate();
  if (n < 1 || n > proc.N) throw ArgumentError("species outside 1..N");
  const EnsembleSpec eff = proc.family(n).effective();
  const int dim = n * n;
  std::vector<double> ph(static_cast<std::size_t>(n)), ps(static_cast<std::size_t>(n));
  auto fill = [&](double x, double jac, double* out) {
    for (int j = 0; j < n; ++j) {
      ph[j] = phi_cap(proc, n, j, x);
      ps[j] = psi(proc, n, j, x);
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out[j * n + k] = jac * ph[j] * ps[k];
  };
  QuadOptions o;
  o.rel_tol = 0.0;
  o.abs_tol = abs_tol;
  o.max_intervals = 4000;
  VectorQuadResult r;
  switch (eff.kind) {
    case EnsembleKind::Gaussian: {
      const double L = std::sqrt(2.0 * proc.N) + 12.0;
      r = integrate_vector([&](double x, double* out) { fill(x, 1.0, out); }, dim, -L, L, o);
      break;
    }
    case EnsembleKind::Laguerre: {
      const double X = 4.0 * (proc.N + eff.a) + 160.0;
      r = integrate_vector([&](double u, double* out) { fill(u * u, 2.0 * u, out); }, dim, 0.0,
                           std::sqrt(X), o);
      break;
    }
    case EnsembleKind::Jacobi: {
      constexpr double kPi = 3.14159265358979323846;
      r = integrate_vector(
          [&](double t, double* out) {
            fill(0.5 * (1.0 - std::cos(kPi * t)), 0.5 * kPi * std::sin(kPi * t), out);
          },
          dim, 0.0, 1.0, o);
      break;
    }
  }
  quad_error = r.error;
  converged = r.converged;
  Matrix g(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) g(j, k) = r.values[static_cast<std::size_t>(j * n + k)];
  return g;
}

double identity_distance(const Matrix& g) {
  double worst = 0.0;
  for (int j = 0; j < g.n; ++j)
    for (int k = 0; k < g.n; ++k) worst = std::max(worst, std::abs(g(j, k) - (j == k ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

Matrix biorthogonality_gram(const ProcessSpec& proc, int n, double abs_tol) {
  double err;
  bool ok;
  Matrix g = gram_impl(proc, n, abs_tol, err, ok);
  if (!ok) throw NumericError("biorthogonality quadrature did not converge", err);
  return g;
}

double biorthogonality_error(const ProcessSpec& proc, int n, double abs_tol) {
  return identity_distance(biorthogonality_gram(proc, n, abs_tol));
}

BiorthogonalityReport biorthogonality_report(const ProcessSpec& proc, int n, double abs_tol) {
  BiorthogonalityReport r;
  r.n = n;
  const Matrix g = gram_impl(proc, n, abs_tol, r.quad_error, r.converged);
  r.max_error = identity_distance(g);
  return r;
}

std::vector<double> DensityEstimate::centers() const {
  std::vector<double> c(counts.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = lo + (static_cast<double>(k) + 0.5) * width();
  return c;
}

double DensityEstimate::mass() const {
  double m = 0.0;
  for (double v : value) m += v * width();
  return m;
}

DensityAccumulator::DensityAccumulator(int s, double lo, double hi, int bins) {
  if (s < 1) throw ArgumentError("species must be >= 1");
  if (bins < 1 || !(hi > lo)) throw ArgumentError("histogram needs bins >= 1 and lo < hi");
  est_.s = s;
  est_.lo = lo;
  est_.hi = hi;
  est_.counts.assign(static_cast<std::size_t>(bins), 0.0);
}

void DensityAccumulator::add_values(const std::vector<double>& v) {
  ++est_.chains;
  const double w = est_.width();
  for (double x : v) {
    if (!(x >= est_.lo && x <= est_.hi)) {
      ++est_.outside;
      continue;
    }
    auto k = static_cast<std::size_t>((x - est_.lo) / w);
    if (k >= est_.counts.size()) k = est_.counts.size() - 1;
    est_.counts[k] += 1.0;
  }
}

void DensityAccumulator::add(const InterlacedChain& c) {
  const auto it = c.species.find(est_.s);
  if (it == c.species.end() || it->second.empty()) throw ArgumentError("chain lacks the requested species");
  add_values(it->second);
}

void DensityAccumulator::merge(const DensityAccumulator& o) {
  if (o.est_.s != est_.s || o.est_.counts.size() != est_.counts.size() || o.est_.lo != est_.lo ||
      o.est_.hi != est_.hi)
    throw ArgumentError("histogram layouts differ");
  for (std::size_t k = 0; k < est_.counts.size(); ++k) est_.counts[k] += o.est_.counts[k];
  est_.chains += o.est_.chains;
  est_.outside += o.est_.outside;
}

DensityEstimate DensityAccumulator::estimate() const {
  DensityEstimate e = est_;
  const std::size_t nb = e.counts.size();
  e.value.assign(nb, 0.0);
  e.ci_lo.assign(nb, 0.0);
  e.ci_hi.assign(nb, 0.0);
  if (e.chains == 0) return e;
  const double n = static_cast<double>(e.chains) * e.s;
  const double scale = static_cast<double>(e.s) / e.width();
  for (std::size_t k = 0; k < nb; ++k) {
    const double q = e.counts[k] / n;
    const double half = 2.5758293035489004 * std::sqrt(q * (1.0 - q) / n);
    e.value[k] = q * scale;
    e.ci_lo[k] = std::max(0.0, q - half) * scale;
    e.ci_hi[k] = (q + half) * scale;
  }
  return e;
}

DensityEstimate empirical_density(const std::vector<InterlacedChain>& chains, int s, BinSpec bins) {
  if (chains.empty()) throw ArgumentError("no chains");
  double lo = bins.lo, hi = bins.hi;
  if (!(hi > lo)) {
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (const InterlacedChain& c : chains) {
      const auto it = c.species.find(s);
      if (it == c.species.end() || it->second.empty()) throw ArgumentError("chain lacks the requested species");
      lo = std::min(lo, it->second.front());
      hi = std::max(hi, it->second.back());
    }
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  }
  DensityAccumulator acc(s, lo, hi, bins.bins);
  for (const InterlacedChain& c : chains) acc.add(c);
  return acc.estimate();
}

std::vector<double> bin_averaged_density(const ProcessSpec& proc, int s, double lo, double hi,
                                         int bins, int threads) {
  if (bins < 1 || !(hi > lo)) throw ArgumentError("bins need lo < hi");
  const GaussRule& g = gauss_legendre(8);
  const double w = (hi - lo) / bins;
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(bins) * 8);
  for (int k = 0; k < bins; ++k)
    for (double t : g.nodes) grid.push_back(lo + w * (k + 0.5 * (t + 1.0)));
  const std::vector<double> rho = density(proc, s, grid, threads);
  std::vector<double> out(static_cast<std::size_t>(bins), 0.0);
  for (int k = 0; k < bins; ++k)
    for (std::size_t i = 0; i < 8; ++i) out[k] += 0.5 * g.weights[i] * rho[k * 8 + i];
  return out;
}

std::string to_string(CompareTest t) {
  switch (t) {
    case CompareTest::SupNorm: return "sup-norm";
    case CompareTest::KolmogorovSmirnov: return "ks";
    case CompareTest::ChiSquare: return "chi-square";
  }
  return "unknown";
}

ComparisonReport compare(const GridFunction& predicted, const DensityEstimate& est, CompareTest test,
                         double sup_threshold, std::uint64_t seed) {
  const std::vector<double> c = est.centers();
  if (predicted.x.size() != c.size() || predicted.value.size() != c.size())
    throw ArgumentError("predicted grid does not match the histogram");
  for (std::size_t k = 0; k < c.size(); ++k)
    if (std::abs(predicted.x[k] - c[k]) > 1e-9 * std::max(1.0, std::abs(c[k])))
      throw ArgumentError("predicted grid does not match the histogram");
  ComparisonReport r;
  r.test = test;
  r.draws = est.chains;
  r.seed = seed;
  const double w = est.width();
  switch (test) {
    case CompareTest::SupNorm: {
      for (std::size_t k = 0; k < c.size(); ++k)
        r.statistic = std::max(r.statistic, std::abs(predicted.value[k] - est.value[k]));
      r.threshold = sup_threshold;
      break;
    }
    case CompareTest::KolmogorovSmirnov: {
      double fp = 0.0, fe = 0.0;
      for (std::size_t k = 0; k < c.size(); ++k) {
        fp += predicted.value[k] * w / est.s;
        fe += est.value[k] * w / est.s;
        r.statistic = std::max(r.statistic, std::abs(fp - fe));
      }
      r.threshold = 1.628 / std::sqrt(static_cast<double>(std::max<long>(1, est.chains)));
      break;
    }
    case CompareTest::ChiSquare: {
      std::vector<double> expected(c.size());
      for (std::size_t k = 0; k < c.size(); ++k) expected[k] = predicted.value[k] * w * est.chains;
      const ChiSquareResult cs = chi_square(est.counts, expected);
      r.statistic = cs.statistic;
      r.threshold = cs.critical_value;
      break;
    }
  }
  r.pass = r.statistic < r.threshold;
  return r;
}

void density_range(const ProcessSpec& proc, double& lo, double& hi) {
  switch (proc.ensemble.kind) {
    case EnsembleKind::Gaussian:
      hi = std::sqrt(2.0 * proc.N) + 4.5;
      lo = -hi;
      break;
    case EnsembleKind::Laguerre:
      lo = 0.0;
      hi = species_mass_hint(proc) + 12.0 * std::sqrt(proc.N + proc.ensemble.a) + 25.0;
      break;
    case EnsembleKind::Jacobi:
      lo = 0.0;
      hi = 1.0;
      break;
  }
}

SamplerClosure sampler_vs_kernel(const EnsembleSpec& ens, int N, long draws, std::uint64_t seed,
                                 double tol, int threads) {
  const ProcessSpec proc{ens, N};
  proc.validate();
  if (draws < 1) throw ArgumentError("draws must be >= 1");
  double lo, hi;
  density_range(proc, lo, hi);
  SamplerClosure out;
  out.ensemble = ens;
  out.N = N;
  out.draws = draws;
  std::vector<int> bins(static_cast<std::size_t>(N) + 1, 100);
  for (int s = 1; s <= N; ++s) {
    std::vector<double> grid(401);
    for (int i = 0; i <= 400; ++i) grid[i] = lo + (hi - lo) * (i + 0.5) / 401.5;
    const std::vector<double> rho = density(proc, s, grid, threads);
    const double rmax = *std::max_element(rho.begin(), rho.end());
    const double se = tol / 4.0;
    const double wmin = rmax / (static_cast<double>(draws) * se * se);
    bins[s] = std::clamp(static_cast<int>(std::floor((hi - lo) / wmin)), 1, 100);
  }
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(draws)));
  std::vector<std::vector<DensityAccumulator>> acc(static_cast<std::size_t>(nt));
  for (auto& a : acc)
    for (int s = 1; s <= N; ++s) a.emplace_back(s, lo, hi, bins[s]);
  std::vector<long> bad(static_cast<std::size_t>(nt), 0);
  parallel_for(static_cast<std::size_t>(draws), nt, [&](std::size_t k, int w) {
    const InterlacedChain c = sample_process_chain(ens, N, seed, k);
    if (!c.interlaced()) ++bad[w];
    for (int s = 1; s <= N; ++s) acc[w][s - 1].add(c);
  });
  out.interlacing_violations = std::accumulate(bad.begin(), bad.end(), 0L);
  out.pass = out.interlacing_violations == 0;
  for (int s = 1; s <= N; ++s) {
    DensityAccumulator total = acc[0][s - 1];
    for (int w = 1; w < nt; ++w) total.merge(acc[w][s - 1]);
    const DensityEstimate e = total.estimate();
    GridFunction pred{e.centers(), bin_averaged_density(proc, s, lo, hi, bins[s], threads)};
    SamplerCheck chk;
    chk.s = s;
    chk.bins = bins[s];
    chk.report = compare(pred, e, CompareTest::SupNorm, tol, seed);
    out.pass = out.pass && chk.report.pass;
    out.species.push_back(chk);
  }
  return out;
}

DensityPointSampler::DensityPointSampler(const ProcessSpec& proc, int s, int threads) {
  proc.validate();
  if (s < 1 || s > proc.N) throw ArgumentError("species outside 1..N");
  double lo, hi;
  density_range(proc, lo, hi);
  const int n = 2001;
  x_.resize(n);
  for (int i = 0; i < n; ++i) x_[i] = lo + (hi - lo) * (i + 0.5) / n;
  const std::vector<double> rho = density(proc, s, x_, threads);
  cdf_.assign(n, 0.0);
  for (int i = 1; i < n; ++i) cdf_[i] = cdf_[i - 1] + 0.5 * (rho[i] + rho[i - 1]) * (x_[i] - x_[i - 1]);
  const double total = cdf_.back();
  if (!(total > 0.0) || !std::isfinite(total)) throw NumericError("density table has no mass");
  for (double& c : cdf_) c /= total;
}

double DensityPointSampler::quantile(double u) const {
  u = std::clamp(u, 0.0, 1.0);
  const auto it = std::lower_bound(cdf_.begin(), cdf_.end(), u);
  if (it == cdf_.begin()) return x_.front();
  if (it == cdf_.end()) return x_.back();
  const std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
  const double span = cdf_[k] - cdf_[k - 1];
  const double w = span > 0.0 ? (u - cdf_[k - 1]) / span : 0.0;
  return x_[k - 1] + w * (x_[k] - x_[k - 1]);
}

GaugeCheck gauge_check(const ProcessSpec& proc, int pairs, std::uint64_t seed, double tol, int threads) {
  proc.validate();
  if (pairs < 1) throw ArgumentError("need at least one pair");
  std::vector<DensityPointSampler> samplers;
  for (int s = 1; s <= proc.N; ++s) samplers.emplace_back(proc, s, threads);
  std::vector<std::array<SpeciesPoint, 2>> pts(static_cast<std::size_t>(pairs));
  for (int k = 0; k < pairs; ++k) {
    DrawRng rng(seed, static_cast<std::uint64_t>(k), stream_tag::kPoints);
    for (SpeciesPoint& p : pts[k]) {
      p.s = std::min(proc.N, 1 + static_cast<int>(rng.uniform() * proc.N));
      p.y = samplers[p.s - 1].quantile(rng.uniform());
    }
  }
  std::vector<double> diff(pts.size()), scaled(pts.size());
  std::vector<long> terms(pts.size(), 0);
  std::vector<char> missed(pts.size(), 0);
  SeriesOptions opts;
  opts.target = 0.1 * tol;
  parallel_for(pts.size(), threads, [&](std::size_t k, int) {
    const SpeciesPoint& p = pts[k][0];
    const SpeciesPoint& q = pts[k][1];
    double f;
    if (p.s < q.s) {
      const SeriesResult sr = direct_series(proc, p, q, opts);
      f = sr.value;
      terms[k] = sr.terms;
      missed[k] = sr.converged ? 0 : 1;
    } else {
      f = kernel_direct(proc, p, q).value;
    }
    const double g = gauge_factor(proc, p, q) * kernel_K(proc, p, q).value;
    diff[k] = std::abs(f - g);
    scaled[k] = diff[k] / std::max(1.0, std::abs(f));
  });
  GaugeCheck r;
  r.pairs = pairs;
  r.seed = seed;
  const std::size_t w = static_cast<std::size_t>(std::max_element(scaled.begin(), scaled.end()) - scaled.begin());
  r.max_abs = *std::max_element(diff.begin(), diff.end());
  r.max_scaled = scaled[w];
  r.worst_row = pts[w][0];
  r.worst_col = pts[w][1];
  r.unconverged = static_cast<int>(std::count(missed.begin(), missed.end(), 1));
  for (long t : terms) r.series_terms += t;
  r.pass = r.max_scaled <= tol;
  return r;
}

}  // namespace minorkern
