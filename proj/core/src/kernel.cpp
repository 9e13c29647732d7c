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

#include "minorkern/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <thread>

#include "mathutil.hpp"
#include "minorkern/errors.hpp"
#include "minorkern/orthopoly.hpp"
#include "minorkern/quadrature.hpp"

namespace minorkern {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_species(const ProcessSpec& proc, int s) {
  if (s < 1 || s > proc.N)
    throw ArgumentError("species " + std::to_string(s) + " outside [1, " +
                        std::to_string(proc.N) + "]");
}

void check_point(const ProcessSpec& proc, const SpeciesPoint& p) {
  check_species(proc, p.s);
  if (!proc.ensemble.in_support(p.y))
    throw ArgumentError("position " + std::to_string(p.y) + " outside the support");
}

SignedLog rodrigues_log(const EnsembleSpec& spec, int j) {
  const RodriguesData r = rodrigues_constants(spec, j);
  return {r.log_abs_e, r.sign};
}

// gamma^{(s)}_{js} / gamma^{(t)}_{jt}
SignedLog gamma_ratio(const ProcessSpec& proc, int s, int js, int t, int jt) {
  const SignedLog es = rodrigues_log(proc.ensemble, js);
  const SignedLog et = rodrigues_log(proc.ensemble, jt);
  const double ln = 0.5 * (log_norm_constant(proc.family(s), js) -
                           log_norm_constant(proc.family(t), jt));
  return {es.log_abs - et.log_abs + ln, es.sign * et.sign};
}

// sum_{k=1}^{kmax} gamma^{(s)}_{s-k}/gamma^{(t)}_{t-k} u^{(s)}_{s-k}(x) u^{(t)}_{t-k}(y)
SignedLog finite_sum(const ProcessSpec& proc, int s, int t, double x, double y, int kmax) {
  if (kmax <= 0) return {};
  const auto us = orthonormal_sequence(proc.family(s), s - 1, x);
  const auto ut = orthonormal_sequence(proc.family(t), t - 1, y);
  LogSum acc;
  for (int k = 1; k <= kmax; ++k) {
    acc.add(gamma_ratio(proc, s, s - k, t, t - k) * us[s - k] * ut[t - k]);
  }
  return acc.result();
}

SignedLog weight_log(const ProcessSpec& proc, int s, double x) {
  const double lw = log_weight(proc.family(s), x);
  if (lw == -kInf) return {};
  return {lw, 1};
}

// Peak-relative quadrature of exp(L(t)) on [lo, hi]; hi may be +inf.
SignedLog log_integral(const std::function<double(double)>& L, double lo, double hi,
                       double scale) {
  // Coarse scan for the peak.
  std::vector<double> ts;
  if (std::isinf(hi)) {
    for (double d = 1e-9 * std::max(1.0, scale); d < 60.0 * scale + 200.0; d *= 1.04)
      ts.push_back(lo + d);
  } else {
    const double w = hi - lo;
    for (int i = 1; i < 600; ++i) ts.push_back(lo + w * i / 600.0);
    for (double d = 1e-12 * w; d < w / 600.0; d *= 2.0) {
      ts.push_back(lo + d);
      ts.push_back(hi - d);
    }
    std::sort(ts.begin(), ts.end());
  }
  double tpk = ts.front(), lpk = -kInf;
  std::vector<double> ls(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    ls[i] = L(ts[i]);
    if (ls[i] > lpk) {
      lpk = ls[i];
      tpk = ts[i];
    }
  }
  if (lpk == -kInf || std::isnan(lpk)) return {};
  auto g = [&](double t) {
    const double v = L(t);
    return v == -kInf ? 0.0 : std::exp(v - lpk);
  };
  QuadOptions opts;
  opts.rel_tol = 1e-11;
  opts.max_intervals = 4000;
  QuadResult left = integrate(g, lo, tpk, opts);
  QuadResult right;
  if (std::isinf(hi)) {
    double width = 1e-3 * std::max(1.0, scale);
    for (std::size_t i = 0; i < ts.size(); ++i) {
      if (ts[i] > tpk && ls[i] < lpk - 2.0) {
        width = std::max(ts[i] - tpk, width);
        break;
      }
    }
    right = integrate_to_infinity(g, tpk, width, opts, 1e-15);
  } else {
    right = integrate(g, tpk, hi, opts);
  }
  const double total = left.value + right.value;
  const double err = left.error + right.error;
  if (!left.converged || !right.converged || !(total > 0.0) ||
      err > 1e-10 * std::fabs(total)) {
    throw NumericError("psi quadrature did not reach relative tolerance 1e-10 (achieved " +
                           std::to_string(err / std::fabs(total)) + ")",
                       err / std::fabs(total));
  }
  return {lpk + std::log(total), 1};
}

// int_x^hi (y - x)^p w^{(m)}(y) dy, in log scale.
SignedLog psi_integral(const ProcessSpec& proc, int m, int p, double x) {
  const ShiftedFamily fam(proc.ensemble, m);
  const EnsembleSpec eff = fam.effective();
  const double lo = std::max(x, proc.ensemble.support_lo());
  switch (eff.kind) {
    case EnsembleKind::Gaussian: {
      auto L = [&](double y) {
        const double d = y - x;
        return (p > 0 ? p * std::log(d) : 0.0) - y * y;
      };
      return log_integral(L, lo, kInf, std::sqrt(1.0 + p) + std::fabs(x));
    }
    case EnsembleKind::Laguerre: {
      auto L = [&](double y) {
        const double d = y - x;
        return (p > 0 ? p * std::log(d) : 0.0) + log_weight(fam, y);
      };
      return log_integral(L, lo, kInf, 1.0 + std::fabs(eff.a) + p + std::fabs(x));
    }
    case EnsembleKind::Jacobi: {
      if (eff.b < 0.0) {
        // y = 1 - v^2 removes the singularity at 1.
        auto L = [&](double v) {
          const double y = 1.0 - v * v;
          const double d = y - x;
          if (v <= 0.0) return -kInf;
          return (p > 0 ? p * std::log(d) : 0.0) + eff.a * std::log(y) +
                 eff.b * 2.0 * std::log(v) + std::log(2.0 * v);
        };
        return log_integral(L, 0.0, std::sqrt(1.0 - lo), 1.0);
      }
      auto L = [&](double y) {
        const double d = y - x;
        return (p > 0 ? p * std::log(d) : 0.0) + log_weight(fam, y);
      };
      return log_integral(L, lo, 1.0, 1.0);
    }
  }
  return {};
}

}  // namespace

void ProcessSpec::validate() const {
  ensemble.validate();
  if (N < 1) throw ParameterError("N must be at least 1");
  if (N > 100000) throw ParameterError("N is unreasonably large");
}

double phi_conv(int n1, int n2, double x, double y) {
  if (n1 >= n2) return 0.0;
  if (!(y > x)) return 0.0;
  const int p = n2 - n1 - 1;
  if (p == 0) return 1.0;
  return std::exp(p * std::log(y - x) - detail::log_factorial(p));
}

SignedLog psi_log(const ProcessSpec& proc, int n, int j, double x) {
  proc.validate();
  check_species(proc, n);
  const int m = proc.N - n + j;
  if (m < 0)
    throw ArgumentError("psi index j = " + std::to_string(j) + " below -(N - n)");
  if (j >= 0) {
    const SignedLog w = weight_log(proc, n, x);
    if (w.is_zero()) return {};
    const SignedLog ej = rodrigues_log(proc.ensemble, j);
    const SignedLog em = rodrigues_log(proc.ensemble, m);
    const auto u = orthonormal_sequence(proc.family(n), j, x);
    const SignedLog pj = u[j] * SignedLog{0.5 * log_norm_constant(proc.family(n), j), 1};
    SignedLog r = ej / em * w * pj;
    if ((proc.N - n) % 2) r = -r;
    return r;
  }
  const int p = -j - 1;
  SignedLog r = psi_integral(proc, m, p, x);
  r = r / rodrigues_log(proc.ensemble, m);
  r.log_abs -= detail::log_factorial(p);
  if (m % 2) r = -r;
  return r;
}

double psi(const ProcessSpec& proc, int n, int j, double x) {
  return psi_log(proc, n, j, x).value();
}

SignedLog phi_cap_log(const ProcessSpec& proc, int n, int j, double x) {
  proc.validate();
  check_species(proc, n);
  if (j < 0 || j > n - 1)
    throw ArgumentError("Phi index j = " + std::to_string(j) + " outside [0, n-1]");
  const SignedLog em = rodrigues_log(proc.ensemble, proc.N - n + j);
  const SignedLog ej = rodrigues_log(proc.ensemble, j);
  const auto u = orthonormal_sequence(proc.family(n), j, x);
  SignedLog r = em / ej * u[j] / SignedLog{0.5 * log_norm_constant(proc.family(n), j), 1};
  if ((proc.N - n) % 2) r = -r;
  return r;
}

double phi_cap(const ProcessSpec& proc, int n, int j, double x) {
  return phi_cap_log(proc, n, j, x).value();
}

namespace {

struct SeriesSums {
  std::vector<double> values;  // one per Abel level, or a single plain sum
  long terms = 0;
  double tail = 0.0;
};

// sum_{m >= 0} gamma^{(s)}_{s+m}/gamma^{(t)}_{t+m} u^{(s)}_{s+m}(x) u^{(t)}_{t+m}(y)
// relative to exp(ref).
SeriesSums series_sums(const ProcessSpec& proc, int s, int t, double x, double y,
                       const SeriesOptions& opts, double& ref) {
  OrthonormalStream xs(proc.family(s), x);
  OrthonormalStream yt(proc.family(t), y);
  for (int k = 0; k < s; ++k) xs.next();
  for (int k = 0; k < t; ++k) yt.next();
  const EnsembleSpec es = proc.family(s).effective();
  const EnsembleSpec et = proc.family(t).effective();
  // ratio_m tracked incrementally in log scale
  SignedLog ratio = gamma_ratio(proc, s, s, t, t);
  auto log_e_step = [&](int j) {  // log|e_{j+1}| - log|e_j|
    return proc.ensemble.kind == EnsembleKind::Gaussian ? 0.0 : std::log(j + 1.0);
  };
  const int e_step_sign = proc.ensemble.kind == EnsembleKind::Gaussian ? -1 : 1;
  auto log_norm_step = [](const EnsembleSpec& e, int j) {  // log N_{j+1} - log N_j
    switch (e.kind) {
      case EnsembleKind::Gaussian: return std::log(2.0 * (j + 1.0));
      case EnsembleKind::Laguerre: return std::log((j + e.a + 1.0) / (j + 1.0));
      case EnsembleKind::Jacobi: {
        const double c = e.a + e.b;
        if (j == 0)
          return detail::lgam(e.a + 2.0) + detail::lgam(e.b + 2.0) - std::log(c + 3.0) -
                 detail::lgam(c + 2.0) - (detail::lgam(e.a + 1.0) + detail::lgam(e.b + 1.0) -
                                          detail::lgam(c + 2.0));
        return std::log((j + e.a + 1.0) * (j + e.b + 1.0) * (2.0 * j + c + 1.0) /
                        ((j + 1.0) * (2.0 * j + c + 3.0) * (j + c + 1.0)));
      }
    }
    return 0.0;
  };

  SeriesSums out;
  const bool abel = opts.levels > 0;
  const int levels = abel ? opts.levels : 1;
  const double eps_min = abel ? opts.eps0 / std::pow(2.0, levels - 1) : 0.0;
  const long mmax = abel ? std::min<long>(opts.max_terms, static_cast<long>(opts.cutoff / eps_min))
                         : opts.max_terms;
  out.values.assign(levels, 0.0);
  ref = -kInf;
  const int d = t - s;
  const double q = 0.5 * (d + 1.0);
  // Plain mode stops once the index is past both turning points and the
  // tail estimate |term| m / (q - 1) is small for a full block.
  long turn = 0;
  auto turning = [](const EnsembleSpec& e, double z) -> long {
    switch (e.kind) {
      case EnsembleKind::Gaussian: return static_cast<long>(0.5 * z * z) + 1;
      case EnsembleKind::Laguerre: return static_cast<long>(0.25 * z) + 1;
      case EnsembleKind::Jacobi: return 1;
    }
    return 1;
  };
  turn = std::max(turning(es, x), turning(et, y));
  double block_max = 0.0;
  int quiet_blocks = 0;
  std::vector<double> eps(levels), step(levels), weight(levels, 1.0);
  for (int i = 0; i < levels; ++i) {
    eps[i] = opts.eps0 / std::pow(2.0, i);
    step[i] = std::exp(-eps[i]);
  }
  for (long m = 0; m < mmax; ++m) {
    const SignedLog ux = xs.next();
    const SignedLog uy = yt.next();
    const SignedLog term = ratio * ux * uy;
    if (term.sign != 0) {
      if (ref == -kInf) ref = term.log_abs;
      if (term.log_abs > ref + 600.0) {
        const double sc = std::exp(ref - term.log_abs);
        for (auto& v : out.values) v *= sc;
        ref = term.log_abs;
      }
      const double tv = term.sign * std::exp(term.log_abs - ref);
      if (abel) {
        for (int i = 0; i < levels; ++i) out.values[i] += tv * weight[i];
      } else {
        out.values[0] += tv;
        block_max = std::max(block_max, std::fabs(tv) * (m + 1.0) / std::max(q - 1.0, 0.5));
      }
    }
    out.terms = m + 1;
    if (!abel && (m + 1) % 256 == 0) {
      if (m > 4 * turn + 64 && block_max <= opts.rel_tol * std::fabs(out.values[0])) {
        if (++quiet_blocks >= 2) {
          out.tail = block_max;
          break;
        }
      } else {
        quiet_blocks = 0;
      }
      out.tail = block_max;
      block_max = 0.0;
    }
    if (abel) {
      // exp(-eps_i m) by recurrence, resynchronized exactly every 1024 terms
      if ((m + 1) % 1024 == 0) {
        for (int i = 0; i < levels; ++i) weight[i] = std::exp(-eps[i] * static_cast<double>(m + 1));
      } else {
        for (int i = 0; i < levels; ++i) weight[i] *= step[i];
      }
    }
    // advance the ratio to m + 1
    const int js = s + static_cast<int>(m), jt = t + static_cast<int>(m);
    ratio.log_abs += log_e_step(js) - log_e_step(jt) +
                     0.5 * (log_norm_step(es, js) - log_norm_step(et, jt));
    ratio.sign *= e_step_sign * e_step_sign;
  }
  if (!abel && out.tail > 1e3 * opts.rel_tol * std::fabs(out.values[0]))
    throw NumericError("series did not converge within max_terms",
                       out.tail / std::fabs(out.values[0]));
  return out;
}

// Richardson on values at eps0 / 2^i, error ~ c1 eps + c2 eps^2 + ...
double richardson(const std::vector<double>& v, double& err) {
  std::vector<double> r = v;
  double prev = r.back();
  for (int k = 1; k < static_cast<int>(v.size()); ++k) {
    const double f = std::pow(2.0, k);
    prev = r.back();
    for (int i = static_cast<int>(v.size()) - 1; i >= k; --i) r[i] = (f * r[i] - r[i - 1]) / (f - 1.0);
  }
  err = std::fabs(r.back() - prev);
  return r.back();
}

// Series in the kernel gauge: -(-1)^{s-t} w_s(x) sum ...
SignedLog series_kernel(const ProcessSpec& proc, int s, int t, double x, double y,
                        const SeriesOptions& opts, double* err_out = nullptr,
                        long* terms_out = nullptr) {
  double ref = 0.0;
  const SeriesSums sums = series_sums(proc, s, t, x, y, opts, ref);
  double err = sums.tail;
  double v = sums.values[0];
  if (opts.levels > 0) v = richardson(sums.values, err);
  if (err_out) *err_out = err == 0.0 ? 0.0 : std::exp(std::log(err) + ref);
  if (terms_out) *terms_out = sums.terms;
  if (v == 0.0) return {};
  SignedLog r{ref + std::log(std::fabs(v)), v > 0 ? 1 : -1};
  return r;
}

}  // namespace

double gauge_factor(const ProcessSpec& proc, const SpeciesPoint& p1, const SpeciesPoint& p2) {
  const double l = 0.5 * (log_weight(proc.family(p2.s), p2.y) - log_weight(proc.family(p1.s), p1.y));
  return detail::parity_sign(p1.s - p2.s) * std::exp(l);
}

KernelValue kernel_K(const ProcessSpec& proc, const SpeciesPoint& p1, const SpeciesPoint& p2) {
  proc.validate();
  check_point(proc, p1);
  check_point(proc, p2);
  const int s = p1.s, t = p2.s;
  const double x = p1.y, y = p2.y;
  KernelValue out;
  out.row = p1;
  out.col = p2;
  out.gauge = Gauge::Kernel;
  const SignedLog w = weight_log(proc, s, x);
  if (s >= t) {
    SignedLog v = w * finite_sum(proc, s, t, x, y, t);
    if ((s - t) % 2) v = -v;
    out.value = v.value();
    return out;
  }
  if (t - s >= kSeriesSeparation) {
    SeriesOptions o;
    o.levels = 0;
    SignedLog v = w * series_kernel(proc, s, t, x, y, o);
    if ((t - s) % 2 == 0) v = -v;
    out.value = v.value();
    return out;
  }
  LogSum acc;
  acc.add(-phi_conv(s, t, x, y));
  SignedLog head = w * finite_sum(proc, s, t, x, y, s);
  if ((t - s) % 2) head = -head;
  acc.add(head);
  for (int l = s + 1; l <= t; ++l) acc.add(psi_log(proc, s, s - l, x) * phi_cap_log(proc, t, t - l, y));
  out.value = acc.value();
  return out;
}

namespace {

SeriesResult direct_series_once(const ProcessSpec& proc, const SpeciesPoint& p1,
                                const SpeciesPoint& p2, const SeriesOptions& opts) {
  double err = 0.0;
  long terms = 0;
  const SignedLog sum = series_kernel(proc, p1.s, p2.s, p1.y, p2.y, opts, &err, &terms);
  const double half = 0.5 * (log_weight(proc.family(p1.s), p1.y) + log_weight(proc.family(p2.s), p2.y));
  SeriesResult r;
  r.terms = terms;
  if (half == -kInf) return r;
  r.value = -sum.value() * std::exp(half);
  // The error estimate was accumulated relative to the same scale as sum.
  r.error_estimate = err * std::exp(half);
  return r;
}

}  // namespace

SeriesResult direct_series(const ProcessSpec& proc, const SpeciesPoint& p1,
                           const SpeciesPoint& p2, const SeriesOptions& opts) {
  proc.validate();
  check_point(proc, p1);
  check_point(proc, p2);
  if (p1.s >= p2.s) throw ArgumentError("direct_series requires s1 < s2");
  if (!(opts.target > 0.0) || opts.levels == 0) return direct_series_once(proc, p1, p2, opts);
  SeriesOptions o = opts;
  SeriesResult prev = direct_series_once(proc, p1, p2, o);
  long spent = prev.terms;
  while (true) {
    o.eps0 /= 4.0;
    o.max_terms = std::max(o.max_terms, 4 * prev.terms);
    if (spent + 4 * prev.terms > opts.budget) {
      prev.converged = false;
      prev.terms = spent;
      return prev;
    }
    SeriesResult cur = direct_series_once(proc, p1, p2, o);
    spent += cur.terms;
    const double scale = opts.target * std::max(1.0, std::fabs(cur.value));
    const double change = std::fabs(cur.value - prev.value);
    cur.error_estimate = std::max(cur.error_estimate, 0.0);
    if (cur.error_estimate <= scale && change <= scale) {
      cur.terms = spent;
      return cur;
    }
    prev = cur;
  }
}

KernelValue kernel_direct(const ProcessSpec& proc, const SpeciesPoint& p1,
                          const SpeciesPoint& p2, const SeriesOptions& opts) {
  proc.validate();
  check_point(proc, p1);
  check_point(proc, p2);
  KernelValue out;
  out.row = p1;
  out.col = p2;
  out.gauge = Gauge::Direct;
  if (p1.s < p2.s) {
    out.value = direct_series(proc, p1, p2, opts).value;
    return out;
  }
  const double half = 0.5 * (log_weight(proc.family(p1.s), p1.y) + log_weight(proc.family(p2.s), p2.y));
  if (half == -kInf) return out;
  const SignedLog v = finite_sum(proc, p1.s, p2.s, p1.y, p2.y, p2.s) * SignedLog{half, 1};
  out.value = v.value();
  return out;
}

Matrix kernel_matrix(const ProcessSpec& proc, const std::vector<SpeciesPoint>& points) {
  const int r = static_cast<int>(points.size());
  Matrix m(r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) m(i, j) = kernel_K(proc, points[i], points[j]).value;
  return m;
}

double correlation(const ProcessSpec& proc, const std::vector<SpeciesPoint>& points) {
  const std::size_t r = points.size();
  if (r < 1 || r > 12) throw ArgumentError("correlation needs between 1 and 12 points");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j)
      if (points[i] == points[j]) throw ArgumentError("duplicate point in correlation");
  const Matrix m = kernel_matrix(proc, points);
  const double det = determinant(m);
  double scale = 1.0;
  for (int i = 0; i < m.n; ++i) scale *= std::max(std::fabs(m(i, i)), 1e-300);
  if (std::fabs(det) < 1e-14 * scale) return 0.0;
  return det;
}

std::vector<double> density(const ProcessSpec& proc, int s, const std::vector<double>& grid,
                            int threads) {
  proc.validate();
  check_species(proc, s);
  std::vector<double> out(grid.size(), 0.0);
  const ShiftedFamily fam = proc.family(s);
  auto work = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      const double y = grid[i];
      if (!proc.ensemble.in_support(y)) continue;
      const double lw = log_weight(fam, y);
      if (lw == -kInf) continue;
      OrthonormalStream st(fam, y);
      double acc = 0.0;
      for (int k = 0; k < s; ++k) {
        const SignedLog u = st.next();
        if (u.sign != 0) acc += std::exp(lw + 2.0 * u.log_abs);
      }
      out[i] = acc;
    }
  };
  const std::size_t n = grid.size();
  const int nt = std::max(1, std::min<int>(threads, static_cast<int>(n / 64) + 1));
  if (nt == 1) {
    work(0, n);
    return out;
  }
  std::vector<std::thread> pool;
  for (int k = 0; k < nt; ++k) pool.emplace_back(work, n * k / nt, n * (k + 1) / nt);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace minorkern
