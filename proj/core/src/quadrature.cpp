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

#include "minorkern/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <string>

#include "minorkern/errors.hpp"

namespace minorkern {

namespace {

constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077600525373800, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk21(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resk = fc * kWgk[10];
  double resg = 0.0;
  double resabs = std::fabs(resk);
  double fv1[10], fv2[10];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    const double f1 = f(c - dx);
    const double f2 = f(c + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[10] * std::fabs(fc - mean);
  for (int j = 0; j < 10; ++j)
    resasc += kWgk[j] * (std::fabs(fv1[j] - mean) + std::fabs(fv2[j] - mean));
  const double value = resk * h;
  resabs *= std::fabs(h);
  resasc *= std::fabs(h);
  double err = std::fabs((resk - resg) * h);
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  const double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps))
    err = std::max(50.0 * eps * resabs, err);
  if (!std::isfinite(value)) err = std::numeric_limits<double>::infinity();
  return {a, b, value, err};
}

struct VecPanel {
  double a, b, error;
  std::vector<double> value;
  bool operator<(const VecPanel& o) const { return error < o.error; }
};

VecPanel gk21_vector(const VectorIntegrand& f, int dim, double a, double b, std::vector<double>& buf) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const auto n = static_cast<std::size_t>(dim);
  std::vector<double> resk(n), resg(n, 0.0);
  buf.resize(2 * n);
  f(c, buf.data());
  for (std::size_t i = 0; i < n; ++i) resk[i] = kWgk[10] * buf[i];
  for (int j = 0; j < 10; ++j) {
    const double dx = h * kXgk[j];
    f(c - dx, buf.data());
    f(c + dx, buf.data() + n);
    for (std::size_t i = 0; i < n; ++i) {
      const double s = buf[i] + buf[n + i];
      resk[i] += kWgk[j] * s;
      if (j % 2 == 1) resg[i] += kWg[j / 2] * s;
    }
  }
  VecPanel p{a, b, 0.0, std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    p.value[i] = resk[i] * h;
    const double e = std::fabs((resk[i] - resg[i]) * h);
    p.error = std::max(p.error, std::isfinite(p.value[i]) ? e : std::numeric_limits<double>::infinity());
  }
  return p;
}

}  // namespace

VectorQuadResult integrate_vector(const VectorIntegrand& f, int dim, double a, double b,
                                  const QuadOptions& opts) {
  VectorQuadResult r;
  r.values.assign(static_cast<std::size_t>(dim), 0.0);
  if (a == b || dim <= 0) {
    r.converged = true;
    return r;
  }
  std::vector<double> buf;
  std::priority_queue<VecPanel> heap;
  heap.push(gk21_vector(f, dim, a, b, buf));
  double err = heap.top().error;
  int intervals = 1;
  auto scale = [&] {
    std::vector<double> tot(static_cast<std::size_t>(dim), 0.0);
    double e = 0.0;
    auto copy = heap;
    while (!copy.empty()) {
      for (std::size_t i = 0; i < tot.size(); ++i) tot[i] += copy.top().value[i];
      e += copy.top().error;
      copy.pop();
    }
    r.values = tot;
    err = e;
    double m = 0.0;
    for (double v : tot) m = std::max(m, std::fabs(v));
    return m;
  };
  double mag = scale();
  while (err > std::max(opts.abs_tol, opts.rel_tol * mag) && intervals < opts.max_intervals) {
    VecPanel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(std::fabs(worst.b - worst.a) > 1e-15 * std::max(1.0, std::fabs(mid)))) break;
    heap.pop();
    VecPanel l = gk21_vector(f, dim, worst.a, mid, buf);
    VecPanel rr = gk21_vector(f, dim, mid, worst.b, buf);
    err += l.error + rr.error - worst.error;
    heap.push(std::move(l));
    heap.push(std::move(rr));
    ++intervals;
    if (intervals % 32 == 0) mag = scale();
  }
  mag = scale();
  r.error = err;
  r.converged = err <= std::max(opts.abs_tol, opts.rel_tol * mag);
  return r;
}

QuadResult integrate(const Integrand& f, double a, double b, const QuadOptions& opts) {
  QuadResult r;
  if (a == b) {
    r.converged = true;
    return r;
  }
  std::priority_queue<Panel> heap;
  Panel p0 = gk21(f, a, b);
  r.evaluations = 21;
  double total = p0.value, err = p0.error;
  heap.push(p0);
  int intervals = 1;
  auto done = [&] { return err <= std::max(opts.abs_tol, opts.rel_tol * std::fabs(total)); };
  while (!done() && intervals < opts.max_intervals) {
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(std::fabs(worst.b - worst.a) > 1e-15 * std::max(1.0, std::fabs(mid)))) break;
    heap.pop();
    Panel l = gk21(f, worst.a, mid);
    Panel rr = gk21(f, mid, worst.b);
    r.evaluations += 42;
    total += l.value + rr.value - worst.value;
    err += l.error + rr.error - worst.error;
    heap.push(l);
    heap.push(rr);
    ++intervals;
    if (intervals % 64 == 0) {
      // Re-sum to shed accumulated cancellation in the running totals.
      auto copy = heap;
      total = 0.0;
      err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        err += copy.top().error;
        copy.pop();
      }
    }
  }
  r.value = total;
  r.error = err;
  r.converged = done() && std::isfinite(total);
  return r;
}

double integrate_or_throw(const Integrand& f, double a, double b, const QuadOptions& opts) {
  const QuadResult r = integrate(f, a, b, opts);
  if (!r.converged)
    throw NumericError("quadrature did not converge on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "], error estimate " + std::to_string(r.error),
                       r.error);
  return r.value;
}

QuadResult integrate_to_infinity(const Integrand& f, double a, double width,
                                 const QuadOptions& opts, double tail_tol, int max_panels) {
  QuadResult out;
  double left = a, w = width;
  for (int k = 0; k < max_panels; ++k) {
    QuadOptions po = opts;
    po.abs_tol = std::max(opts.abs_tol, 0.1 * opts.rel_tol * std::fabs(out.value));
    const QuadResult r = integrate(f, left, left + w, po);
    out.value += r.value;
    out.error += r.error;
    out.evaluations += r.evaluations;
    if (!r.converged) {
      out.converged = false;
      return out;
    }
    if (k >= 1 && std::fabs(r.value) <= tail_tol * std::fabs(out.value)) {
      out.converged = true;
      return out;
    }
    if (k >= 3 && out.value == 0.0 && r.value == 0.0) {
      out.converged = true;
      return out;
    }
    left += w;
    w *= 2.0;
  }
  out.converged = false;
  return out;
}

const GaussRule& gauss_legendre(int n) {
  if (n < 1) throw ArgumentError("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<int, std::unique_ptr<GaussRule>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  auto rule = std::make_unique<GaussRule>();
  rule->nodes.resize(n);
  rule->weights.resize(n);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    long double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    long double dp = 0.0L;
    for (int it2 = 0; it2 < 100; ++it2) {
      long double p0 = 1.0L, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0L;
      dp = n * (x * p1 - p0) / (x * x - 1.0L);
      const long double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-19L) break;
    }
    // Recompute derivative at the converged node.
    long double p0 = 1.0L, p1 = x;
    for (int k = 2; k <= n; ++k) {
      const long double p2 = ((2.0L * k - 1.0L) * x * p1 - (k - 1.0L) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0L;
    dp = n * (x * p1 - p0) / (x * x - 1.0L);
    const double w = static_cast<double>(2.0L / ((1.0L - x * x) * dp * dp));
    rule->nodes[i] = -static_cast<double>(x);
    rule->nodes[n - 1 - i] = static_cast<double>(x);
    rule->weights[i] = w;
    rule->weights[n - 1 - i] = w;
  }
  auto& ref = *rule;
  cache.emplace(n, std::move(rule));
  return ref;
}

}  // namespace minorkern
