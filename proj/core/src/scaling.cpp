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

#include "minorkern/scaling.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "mathutil.hpp"
#include "minorkern/errors.hpp"
#include "minorkern/parallel.hpp"
#include "minorkern/quadrature.hpp"
#include "minorkern/special.hpp"

namespace minorkern {

namespace {

using cd = std::complex<double>;
using detail::kPi;

double ai(double x) { return detail::airy_unchecked(x).ai; }

QuadOptions tight(double rel = 1e-12, int intervals = 20000) {
  QuadOptions o;
  o.rel_tol = rel;
  o.abs_tol = 1e-14;
  o.max_intervals = intervals;
  return o;
}

// Adds int_lo^hi f to acc; the absolute tolerance follows the running total
// since method switches in the special functions leave jumps near 1e-15.
void add_panel(const Integrand& f, double lo, double hi, double& acc) {
  QuadOptions o = tight(1e-13);
  o.abs_tol = std::max(1e-14, 1e-13 * std::fabs(acc));
  acc += integrate_or_throw(f, lo, hi, o);
}

// int_0^1 s^m e^{i w s} ds, m >= 0.
cd moment01(int m, double w) {
  if (std::fabs(w) < m + 2.0) {
    cd sum = 0.0, term = 1.0;
    for (int k = 0; k < 200; ++k) {
      if (k > 0) term *= cd(0.0, w) / static_cast<double>(k);
      const cd add = term / static_cast<double>(m + k + 1);
      sum += add;
      if (std::abs(add) < 1e-18 * std::max(1.0, std::abs(sum)) && k > std::fabs(w)) break;
    }
    return sum;
  }
  const cd iw(0.0, w), e = std::exp(iw);
  cd v = (e - 1.0) / iw;
  for (int k = 1; k <= m; ++k) v = (e - static_cast<double>(k) * v) / iw;
  return v;
}

// int_1^inf s^m e^{i w s} ds, m <= -1; w = 0 requires m <= -2.
cd moment1inf(int m, double w) {
  if (w == 0.0) {
    if (m >= -1) throw NumericError("divergent tail integral");
    return cd(-1.0 / (m + 1.0), 0.0);
  }
  return expint_en(-m, cd(0.0, -w));
}

// J_nu for nu > -1 via one downward step when nu < 0.
double bessel_jx(double nu, double z) {
  if (nu >= 0.0) return bessel_j(nu, z);
  if (z == 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 * (nu + 1.0) / z * bessel_j(nu + 1.0, z) - bessel_j(nu + 2.0, z);
}

// Hankel expansion of J_nu(alpha u) = Re[e^{i alpha u} sum_k c_k u^{-k-1/2}].
std::vector<cd> hankel_coeffs(double nu, double alpha, double z0) {
  std::vector<cd> c;
  const double mu = 4.0 * nu * nu;
  cd pref = std::sqrt(2.0 / (kPi * alpha)) * std::exp(cd(0.0, -(0.5 * nu + 0.25) * kPi));
  double ak = 1.0;
  cd ik = 1.0;
  for (int k = 0; k < 40; ++k) {
    if (k > 0) {
      ak *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
      ik *= cd(0.0, 1.0);
    }
    const double size = std::fabs(ak) / std::pow(alpha, k) / std::pow(z0 / alpha, k);
    c.push_back(pref * ik * ak / std::pow(alpha, k));
    if (size < 1e-17 || ak == 0.0) break;
  }
  return c;
}

// 2 int_U^inf u^{m+1} J_{n1}(a1 u) J_{n2}(a2 u) du, U a1 and U a2 large.
double bessel_pair_tail(int m, double n1, double a1, double n2, double a2, double U) {
  const double z0 = U * std::min(a1, a2);
  const std::vector<cd> c1 = hankel_coeffs(n1, a1, z0), c2 = hankel_coeffs(n2, a2, z0);
  // J J = (1/2) Re[A1 A2 + A1 conj(A2)]; u^{m+1} u^{-k-l-1} = u^{m-k-l}.
  double total = 0.0;
  for (int sgn : {1, -1}) {
    const double w = a1 + sgn * a2;
    for (std::size_t k = 0; k < c1.size(); ++k)
      for (std::size_t l = 0; l < c2.size(); ++l) {
        const cd coef = c1[k] * (sgn > 0 ? c2[l] : std::conj(c2[l]));
        const int p = m - static_cast<int>(k + l);
        cd v;
        if (std::fabs(w) * U < 1e-12) {
          if (p >= -1) {
            // v is real here, so only Re(coef) contributes; orders differing
            // by an odd integer make it vanish.
            if (std::abs(coef.real()) > 1e-12 * std::max(1.0, std::abs(coef)))
              throw NumericError("hard_edge_kernel: divergent integral");
            continue;
          }
          v = std::pow(U, p + 1.0) / (-p - 1.0);
        } else {
          v = std::pow(U, p + 1.0) * expint_en(-p, cd(0.0, -w * U));
        }
        total += 0.5 * (coef * v).real();
      }
  }
  return 2.0 * total;
}

// Lower branch of the hard-edge kernel without the -1/4 prefactor:
// int_1^inf s^{m/2} J_{n1}(sqrt(s x)) J_{n2}(sqrt(s y)) ds, m < 0.
double hard_lower(int m, double n1, double x, double n2, double y) {
  if (m >= 0) throw std::logic_error("hard_edge_kernel lower branch needs cy < cx");
  const double a1 = std::sqrt(x), a2 = std::sqrt(y);
  auto f = [&](double u) { return 2.0 * std::pow(u, m + 1.0) * bessel_jx(n1, a1 * u) * bessel_jx(n2, a2 * u); };
  if (a1 == 0.0 || a2 == 0.0) {
    // One factor is constant: J_0(0) = 1, otherwise J_nu(0) = 0.
    const double nz = a1 == 0.0 ? n1 : n2, nv = a1 == 0.0 ? n2 : n1, av = a1 == 0.0 ? a2 : a1;
    if (nz < 0.0) throw RangeError("hard_edge_kernel: J_nu(0) infinite for nu < 0");
    if (nz > 0.0 || av == 0.0) {
      if (nz > 0.0) return 0.0;
      throw NumericError("hard_edge_kernel: divergent integral");
    }
    // 2 int_0^inf u^{m+1} J_{-m}(av u) du = 2^{m+2} av^{-m-2} / (-m-1)!, minus [0, 1].
    const double mu = m + 1.0;
    const double full = std::exp((m + 2.0) * std::log(2.0) - (m + 2.0) * std::log(av) - detail::lgam(-m));
    auto g = [&](double u) { return 2.0 * std::pow(u, mu) * bessel_jx(nv, av * u); };
    return full - integrate_or_throw(g, 0.0, 1.0, tight());
  }
  const double numax = std::max(std::fabs(n1), std::fabs(n2));
  const double U = std::max(1.0, (30.0 + numax * numax) / std::min(a1, a2));
  double head = 0.0;
  if (U > 1.0) {
    // Panels of a few oscillations each.
    const double width = std::max(1.0, 20.0 / (a1 + a2));
    for (double lo = 1.0; lo < U; lo += width) {
      const double hi = std::min(U, lo + width);
      add_panel(f, lo, hi, head);
    }
  }
  return head + bessel_pair_tail(m, n1, a1, n2, a2, U);
}

double hard_upper(int m, double n1, double x, double n2, double y) {
  const double a1 = std::sqrt(x), a2 = std::sqrt(y);
  auto f = [&](double u) { return 2.0 * std::pow(u, m + 1.0) * bessel_jx(n1, a1 * u) * bessel_jx(n2, a2 * u); };
  double acc = 0.0;
  add_panel(f, 0.0, 1.0, acc);
  return acc;
}

}  // namespace

double airy_kernel_integral(double x, double y) {
  auto f = [&](double u) { return ai(x + u) * ai(y + u); };
  const QuadResult r = integrate_to_infinity(f, 0.0, 4.0, tight(1e-13));
  if (!r.converged) throw NumericError("airy_kernel: integral did not converge", r.error);
  return r.value;
}

double airy_kernel(double x, double y) {
  if (!(std::fabs(x) <= 20.0 && std::fabs(y) <= 20.0))
    throw RangeError("airy_kernel: arguments must satisfy |x|, |y| <= 20");
  if (std::fabs(x - y) < 1e-4) return airy_kernel_integral(x, y);
  const AiryValue ax = airy(x), ay = airy(y);
  return (ax.ai * ay.aip - ay.ai * ax.aip) / (x - y);
}

double extended_airy(double tx, double x, double ty, double y) {
  if (!std::isfinite(tx) || !std::isfinite(ty) || !std::isfinite(x) || !std::isfinite(y))
    throw RangeError("extended_airy: non-finite argument");
  const double tau = ty - tx;
  if (tau >= 0.0) {
    auto f = [&](double u) { return std::exp(-tau * u) * ai(x + u) * ai(y + u); };
    const QuadResult r = integrate_to_infinity(f, 0.0, 4.0, tight(1e-13));
    if (!r.converged) throw NumericError("extended_airy: integral did not converge", r.error);
    return r.value;
  }
  // -int_{-inf}^0 e^{-tau u} Ai(x+u) Ai(y+u) du with e^{-tau u} = e^{-|tau| |u|}.
  const double t = -tau;
  auto f = [&](double v) { return std::exp(-t * v) * ai(x - v) * ai(y - v); };
  double acc = 0.0;
  const double width = 4.0;
  for (double lo = 0.0;; lo += width) {
    add_panel(f, lo, lo + width, acc);
    const double v = lo + width;
    // |Ai(z)| <= |z|^{-1/4} / sqrt(pi) far left; tail of e^{-t v} / (pi sqrt(v')).
    const double vv = std::max(1.0, v - std::max(x, y));
    const double bound = std::exp(-t * v) / (kPi * t * std::sqrt(vv));
    if (bound < 1e-14 * std::max(std::fabs(acc), 1e-300)) break;
    if (v > 1e7) throw NumericError("extended_airy: truncation not reached");
  }
  return -acc;
}

double bead_kernel(int cx, double x, int cy, double y) {
  const int m = cy - cx;
  const double w = kPi * (x - y), phase = 0.5 * kPi * (cx - cy);
  const cd e(std::cos(phase), std::sin(phase));
  if (m >= 0) {
    if (m <= 6) return (e * moment01(m, w)).real();
    auto f = [&](double s) { return std::pow(s, m) * std::cos(w * s + phase); };
    return integrate_or_throw(f, 0.0, 1.0, tight());
  }
  if (m >= -6) return -(e * moment1inf(m, w)).real();
  auto f = [&](double s) { return std::pow(s, m) * std::cos(w * s + phase); };
  const QuadResult r = integrate_to_infinity(f, 1.0, 4.0, tight());
  if (!r.converged) throw NumericError("bead_kernel: tail integral did not converge", r.error);
  return -r.value;
}

double bead_kernel_alt(int cx, double x, int cy, double y) {
  const int m = cy - cx;
  const double w = kPi * (x - y);
  cd im = 1.0;
  for (int k = 0; k < std::abs(m); ++k) im *= cd(0.0, 1.0);
  if (m < 0) im = 1.0 / im;
  const double par = (m % 2 == 0) ? 1.0 : -1.0;
  if (m >= 0) return (0.5 * im * (moment01(m, w) + par * moment01(m, -w))).real();
  if (w == 0.0) {
    if (m == -1) return 0.0;
    return (-0.5 * im * (1.0 + par) * (-1.0 / (m + 1.0))).real();
  }
  return (-0.5 * im * (moment1inf(m, w) + par * moment1inf(m, -w))).real();
}

double hard_edge_kernel(double a, int cx, double x, int cy, double y) {
  if (!(a > -1.0) || !std::isfinite(a)) throw ParameterError("hard_edge_kernel: requires a > -1");
  if (!(x >= 0.0) || !(y >= 0.0) || !std::isfinite(x) || !std::isfinite(y))
    throw RangeError("hard_edge_kernel: requires finite x, y >= 0");
  const double n1 = a + cx, n2 = a + cy;
  if (!(n1 > -1.0) || !(n2 > -1.0)) throw ParameterError("hard_edge_kernel: requires a + c > -1");
  const int m = cy - cx;
  if (m >= 0) return 0.25 * hard_upper(m, n1, x, n2, y);
  return -0.25 * hard_lower(m, n1, x, n2, y);
}

std::string to_string(Regime r) {
  switch (r) {
    case Regime::SoftFixed: return "soft";
    case Regime::Bulk: return "bulk";
    case Regime::HardEdge: return "hard";
    case Regime::SoftDrift: return "soft-drift";
  }
  return "?";
}

Regime parse_regime(const std::string& name) {
  if (name == "soft") return Regime::SoftFixed;
  if (name == "bulk") return Regime::Bulk;
  if (name == "hard") return Regime::HardEdge;
  if (name == "soft-drift") return Regime::SoftDrift;
  throw ArgumentError("unknown regime '" + name + "' (soft, bulk, hard, soft-drift)");
}

void LimitQuery::validate() const {
  ensemble.validate();
  const EnsembleKind k = ensemble.kind;
  bool ok = false;
  switch (regime) {
    case Regime::SoftFixed:
    case Regime::SoftDrift: ok = k != EnsembleKind::Jacobi; break;
    case Regime::Bulk: ok = k == EnsembleKind::Gaussian; break;
    case Regime::HardEdge: ok = k != EnsembleKind::Gaussian; break;
  }
  if (!ok)
    throw ParameterError("regime " + to_string(regime) + " is not available for the " +
                         minorkern::to_string(k) + " ensemble");
  if (N < 1) throw ArgumentError("N must be >= 1");
  if (positions.empty() || offsets.size() != positions.size())
    throw ArgumentError("offsets and positions must be non-empty and of equal length");
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (!std::isfinite(offsets[i]) || !std::isfinite(positions[i]))
      throw ArgumentError("non-finite offset or position");
    if (regime != Regime::SoftDrift && (offsets[i] != std::round(offsets[i]) || offsets[i] < 0.0))
      throw ArgumentError("offsets must be integers >= 0 outside the soft-drift regime");
  }
}

std::vector<MappedPoint> map_query(const LimitQuery& q) {
  q.validate();
  const double N = q.N, a = q.ensemble.a;
  const bool gauss = q.ensemble.kind == EnsembleKind::Gaussian;
  std::vector<MappedPoint> out;
  for (int i = 0; i < q.size(); ++i) {
    const double c = q.offsets[i], Y = q.positions[i];
    MappedPoint mp;
    mp.position = Y;
    mp.offset = c;
    long s = q.N - std::lround(c);
    double y = 0.0;
    switch (q.regime) {
      case Regime::SoftFixed:
        if (gauss) {
          mp.jacobian = 1.0 / (std::sqrt(2.0) * std::pow(N, 1.0 / 6.0));
          y = std::sqrt(2.0 * N) + Y * mp.jacobian;
        } else {
          mp.jacobian = 2.0 * std::cbrt(2.0 * N);
          y = 4.0 * N + 2.0 * a + Y * mp.jacobian;
        }
        break;
      case Regime::Bulk:
        mp.jacobian = kPi / std::sqrt(2.0 * N);
        y = Y * mp.jacobian;
        break;
      case Regime::HardEdge:
        mp.jacobian = q.ensemble.kind == EnsembleKind::Laguerre ? 1.0 / (4.0 * N) : 1.0 / (4.0 * N * N);
        y = Y * mp.jacobian;
        break;
      case Regime::SoftDrift:
        if (gauss) {
          s = std::lround(N + 2.0 * c * std::pow(N, 2.0 / 3.0));
          mp.offset = (s - N) / (2.0 * std::pow(N, 2.0 / 3.0));
          if (s >= 1) {
            mp.jacobian = 1.0 / (std::sqrt(2.0) * std::pow(static_cast<double>(s), 1.0 / 6.0));
            y = std::sqrt(2.0 * s) + Y * mp.jacobian;
          }
        } else {
          const double scale = std::pow(2.0 * N, 2.0 / 3.0);
          s = std::lround(N - 2.0 * c * scale);
          mp.offset = (N - s) / (2.0 * scale);
          mp.jacobian = 2.0 * std::cbrt(2.0 * N);
          // The edge of species s curves away from 4s + 2(a + N - s) by c^2 in Y.
          y = 4.0 * s + 2.0 * (a + N - s) + (Y - mp.offset * mp.offset) * mp.jacobian;
        }
        break;
    }
    if (s < 1 || s > q.N)
      throw ArgumentError("point " + std::to_string(i) + ": species " + std::to_string(s) +
                          " outside [1, N=" + std::to_string(q.N) + "]");
    if (!q.ensemble.in_support(y))
      throw ArgumentError("point " + std::to_string(i) + ": position " + std::to_string(y) +
                          " outside the support");
    mp.point = {static_cast<int>(s), y};
    out.push_back(mp);
  }
  return out;
}

namespace {

double limit_entry(const LimitQuery& q, const std::vector<MappedPoint>& m, int j, int k) {
  const double cj = q.offsets[j], ck = q.offsets[k], yj = m[j].position, yk = m[k].position;
  switch (q.regime) {
    case Regime::SoftFixed: return airy_kernel(yj, yk);
    case Regime::Bulk: return bead_kernel(static_cast<int>(cj), yj, static_cast<int>(ck), yk);
    case Regime::HardEdge:
      return hard_edge_kernel(q.ensemble.a, static_cast<int>(cj), yj, static_cast<int>(ck), yk);
    case Regime::SoftDrift:
      if (q.ensemble.kind == EnsembleKind::Gaussian) return extended_airy(-cj, yj, -ck, yk);
      return extended_airy(cj, yj, ck, yk);
  }
  return 0.0;
}

double finite_entry(const LimitQuery& q, const std::vector<MappedPoint>& m, int j, int k) {
  const ProcessSpec proc{q.ensemble, q.N};
  return std::sqrt(m[j].jacobian * m[k].jacobian) * kernel_K(proc, m[j].point, m[k].point).value;
}

double gauge_free(double jk, double kj) {
  const double mag = std::sqrt(std::fabs(jk * kj));
  return jk < 0.0 ? -mag : mag;
}

void check_index(const LimitQuery& q, int j, int k) {
  if (j < 0 || k < 0 || j >= q.size() || k >= q.size()) throw ArgumentError("point index out of range");
}

}  // namespace

double limit_kernel(const LimitQuery& q, int j, int k) {
  check_index(q, j, k);
  const auto m = map_query(q);
  return limit_entry(q, m, j, k);
}

Matrix limit_matrix(const LimitQuery& q) {
  const auto m = map_query(q);
  Matrix out(q.size());
  for (int j = 0; j < q.size(); ++j)
    for (int k = 0; k < q.size(); ++k) out(j, k) = limit_entry(q, m, j, k);
  return out;
}

Matrix scaled_finite_matrix(const LimitQuery& q) {
  const auto m = map_query(q);
  Matrix out(q.size());
  for (int j = 0; j < q.size(); ++j)
    for (int k = 0; k < q.size(); ++k) out(j, k) = finite_entry(q, m, j, k);
  return out;
}

double scaled_finite_kernel(const LimitQuery& q, int j, int k) {
  check_index(q, j, k);
  const auto m = map_query(q);
  if (j == k) return finite_entry(q, m, j, j);
  return gauge_free(finite_entry(q, m, j, k), finite_entry(q, m, k, j));
}

double limit_gauge_free(const LimitQuery& q, int j, int k) {
  check_index(q, j, k);
  const auto m = map_query(q);
  if (j == k) return limit_entry(q, m, j, j);
  return gauge_free(limit_entry(q, m, j, k), limit_entry(q, m, k, j));
}

double scaled_finite_product(const LimitQuery& q, int j, int k) {
  check_index(q, j, k);
  const auto m = map_query(q);
  return finite_entry(q, m, j, k) * finite_entry(q, m, k, j);
}

double limit_product(const LimitQuery& q, int j, int k) {
  check_index(q, j, k);
  const auto m = map_query(q);
  return limit_entry(q, m, j, k) * limit_entry(q, m, k, j);
}

double scaled_finite_det(const LimitQuery& q) { return determinant(scaled_finite_matrix(q)); }
double limit_det(const LimitQuery& q) { return determinant(limit_matrix(q)); }

ConvergenceReport convergence_report(const std::function<double(int)>& finite, double limit,
                                     const std::vector<int>& N_list, int threads) {
  if (N_list.size() < 3) throw ArgumentError("convergence_report needs at least three values of N");
  for (std::size_t i = 1; i < N_list.size(); ++i)
    if (N_list[i] <= N_list[i - 1]) throw ArgumentError("N values must be strictly increasing");
  ConvergenceReport r;
  r.N_list = N_list;
  r.limit = limit;
  r.finite.assign(N_list.size(), 0.0);
  parallel_for(N_list.size(), threads, [&](std::size_t i, int) { r.finite[i] = finite(N_list[i]); });
  for (double f : r.finite) r.errors.push_back(std::fabs(f - limit));
  r.monotone = true;
  for (std::size_t i = 1; i < r.errors.size(); ++i) r.monotone = r.monotone && r.errors[i] < r.errors[i - 1];
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(N_list.size());
  for (std::size_t i = 0; i < N_list.size(); ++i) {
    const double lx = std::log(static_cast<double>(N_list[i]));
    const double ly = -std::log(std::max(r.errors[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  r.order_estimate = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  r.converging = r.monotone && r.order_estimate > kMinOrder;
  return r;
}

ConvergenceReport convergence_report(const LimitQuery& q, const std::vector<int>& N_list, int threads) {
  if (N_list.size() < 3) throw ArgumentError("convergence_report needs at least three values of N");
  LimitQuery at = q;
  at.N = N_list.back();
  at.validate();
  const bool single = q.size() == 1;
  const double limit = single ? limit_kernel(at, 0, 0) : limit_det(at);
  auto finite = [&](int N) {
    LimitQuery qq = q;
    qq.N = N;
    return single ? scaled_finite_kernel(qq, 0, 0) : scaled_finite_det(qq);
  };
  ConvergenceReport r = convergence_report(finite, limit, N_list, threads);
  r.regime = q.regime;
  r.ensemble = q.ensemble;
  r.offsets = q.offsets;
  r.positions = q.positions;
  return r;
}

}  // namespace minorkern
