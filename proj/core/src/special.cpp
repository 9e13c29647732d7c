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

#include "minorkern/special.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mathutil.hpp"
#include "minorkern/errors.hpp"

namespace minorkern {

namespace {

using ld = long double;

constexpr double kAirySwitch = 8.0;
constexpr double kEuler = 0.57721566490153286061;

// On the right axis f and g grow like e^{zeta} while Ai decays like e^{-zeta};
// the cancellation needs more than long double beyond x ~ 2.
#if defined(__SIZEOF_FLOAT128__)
using wide = __float128;
#else
using wide = long double;
#endif

// Decimal string "0.ddd..." to T, exact digit accumulation.
template <typename T>
T parse_fraction(const char* digits) {
  T v = 0, scale = 1;
  for (const char* c = digits; *c; ++c) {
    v = v * 10 + (*c - '0');
    scale *= 10;
  }
  return v / scale;
}

template <typename T>
AiryValue airy_maclaurin_t(double xd) {
  static const T ai0 = parse_fraction<T>("355028053887817239260063186004183176");
  static const T aip0 = parse_fraction<T>("258819403792806798405183560189203963");
  const T x = xd;
  const T x3 = x * x * x;
  // f = sum a_k x^{3k}, g = x sum b_k x^{3k}
  T t = 1, f = 1;              // a_k x^{3k}
  T p = x * x / 6, fp = 0;     // a_k x^{3k-1}, k >= 1
  T q = 1, g = 1, gp = 1;      // b_k x^{3k}
  for (int k = 1; k < 200; ++k) {
    const T k3 = 3 * k;
    t *= x3 / ((k3 - 1) * k3);
    if (k > 1) p *= x3 / ((k3 - 1) * k3);
    q *= x3 / (k3 * (k3 + 1));
    f += t;
    fp += k3 * p;
    g += q;
    gp += (k3 + 1) * q;
    T mag = t < 0 ? -t : t;
    mag += (q < 0 ? -q : q) * (k3 + 1);
    const T ref = (f < 0 ? -f : f) + (g < 0 ? -g : g) + 1;
    if (mag < static_cast<T>(1e-36L) * ref) break;
  }
  g *= x;
  AiryValue r;
  r.ai = static_cast<double>(ai0 * f - aip0 * g);
  r.aip = static_cast<double>(ai0 * fp - aip0 * gp);
  return r;
}

AiryValue airy_maclaurin(double x) {
  if (std::fabs(x) > 2.0) return airy_maclaurin_t<wide>(x);
  return airy_maclaurin_t<ld>(x);
}

// u_k and v_k of the large-argument expansions.
void airy_uv(int kmax, std::vector<double>& u, std::vector<double>& v) {
  u.assign(kmax + 1, 1.0);
  v.assign(kmax + 1, 1.0);
  for (int k = 1; k <= kmax; ++k) {
    u[k] = u[k - 1] * (6.0 * k - 5.0) * (6.0 * k - 3.0) * (6.0 * k - 1.0) /
           ((2.0 * k - 1.0) * 216.0 * k);
    v[k] = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * u[k];
  }
}

const std::vector<double>& airy_u() {
  static const std::vector<double> u = [] {
    std::vector<double> uu, vv;
    airy_uv(60, uu, vv);
    return uu;
  }();
  return u;
}
const std::vector<double>& airy_v() {
  static const std::vector<double> v = [] {
    std::vector<double> uu, vv;
    airy_uv(60, uu, vv);
    return vv;
  }();
  return v;
}

AiryValue airy_asymptotic(double x) {
  const auto& u = airy_u();
  const auto& v = airy_v();
  const double sqrtpi = std::sqrt(detail::kPi);
  AiryValue r;
  if (x > 0.0) {
    const double zeta = 2.0 / 3.0 * x * std::sqrt(x);
    if (zeta > 745.0) return r;
    double su = 0.0, sv = 0.0, pw = 1.0, last = INFINITY;
    for (std::size_t k = 0; k < u.size(); ++k) {
      const double tu = ((k % 2) ? -1.0 : 1.0) * u[k] * pw;
      const double tv = ((k % 2) ? -1.0 : 1.0) * v[k] * pw;
      if (std::fabs(tu) > last) break;
      su += tu;
      sv += tv;
      last = std::fabs(tu);
      if (last < 1e-18) break;
      pw /= zeta;
    }
    const double e = std::exp(-zeta);
    const double x4 = std::sqrt(std::sqrt(x));
    r.ai = e / (2.0 * sqrtpi * x4) * su;
    r.aip = -x4 * e / (2.0 * sqrtpi) * sv;
    return r;
  }
  const double z = -x;
  const double zeta = 2.0 / 3.0 * z * std::sqrt(z);
  double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0;
  double pw = 1.0, last = INFINITY;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double tu = u[k] * pw;
    if (std::fabs(tu) > last) break;
    last = std::fabs(tu);
    // sign pattern (-1)^{floor(k/2)}
    const double sg = ((k / 2) % 2) ? -1.0 : 1.0;
    if (k % 2 == 0) {
      ue += sg * tu;
      ve += sg * v[k] * pw;
    } else {
      uo += sg * tu;
      vo += sg * v[k] * pw;
    }
    if (last < 1e-18) break;
    pw /= zeta;
  }
  const double th = zeta - 0.25 * detail::kPi;
  const double c = std::cos(th), s = std::sin(th);
  const double z4 = std::sqrt(std::sqrt(z));
  r.ai = (c * ue + s * uo) / (sqrtpi * z4);
  r.aip = z4 / sqrtpi * (s * ve - c * vo);
  return r;
}

ld lgaml(ld x) {
#if defined(__GLIBC__)
  int sg = 0;
  return ::lgammal_r(x, &sg);
#else
  return std::lgamma(x);
#endif
}

double bessel_series(double nu, double xd) {
  const ld x = xd;
  const ld y = -x * x / 4.0L;
  ld term = 1.0L, sum = 1.0L;
  for (int k = 1; k < 500; ++k) {
    term *= y / (k * (nu + k));
    sum += term;
    if (std::fabs(term) < 1e-21L * std::fabs(sum)) break;
  }
  const ld pref = std::exp(static_cast<ld>(nu) * std::log(x / 2.0L) - lgaml(nu + 1.0L));
  return static_cast<double>(pref * sum);
}

double bessel_miller(double nu, double xd) {
  const ld x = xd;
  const int n = static_cast<int>(std::floor(nu));
  const ld mu = static_cast<ld>(nu) - n;
  const double big = std::max<double>(n, xd);
  int M = static_cast<int>(std::ceil(big + 40.0 + 8.0 * std::cbrt(big)));
  if (M % 2) ++M;
  std::vector<ld> J(M + 2, 0.0L);
  J[M + 1] = 0.0L;
  J[M] = 1e-30L;
  for (int m = M; m >= 1; --m) {
    J[m - 1] = 2.0L * (mu + m) / x * J[m] - J[m + 1];
    if (std::fabs(J[m - 1]) > 1e1000L) {
      for (int i = m - 1; i <= M; ++i) J[i] *= 1e-1000L;
    }
  }
  // (x/2)^mu = Gamma(mu+1) J_mu + sum_k (mu+2k) Gamma(mu+k)/k! J_{mu+2k}
  const ld g1 = std::exp(lgaml(mu + 1.0L));
  ld s = g1 * J[0];
  ld c = g1;  // Gamma(mu+k)/k! at k = 1
  for (int k = 1; 2 * k <= M; ++k) {
    if (k > 1) c *= (mu + k - 1.0L) / k;
    s += (mu + 2.0L * k) * c * J[2 * k];
  }
  const ld scale = std::pow(x / 2.0L, mu) / s;
  return static_cast<double>(J[n] * scale);
}

double bessel_hankel(double nu, double x) {
  double p = 0.0, q = 0.0;
  detail::bessel_hankel_pq(nu, x, p, q);
  const double chi = x - (0.5 * nu + 0.25) * detail::kPi;
  return std::sqrt(2.0 / (detail::kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

namespace detail {

AiryValue airy_unchecked(double x) {
  if (std::isnan(x)) throw RangeError("airy: NaN argument");
  if (std::fabs(x) <= kAirySwitch) return airy_maclaurin(x);
  return airy_asymptotic(x);
}

void bessel_hankel_pq(double nu, double x, double& p, double& q) {
  const double m = 4.0 * nu * nu;
  p = 1.0;
  q = 0.0;
  double a = 1.0;  // a_k(nu) / x^k
  double last = INFINITY;
  for (int k = 1; k < 200; ++k) {
    a *= (m - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k * x);
    if (std::fabs(a) > last && k > 2) break;
    last = std::fabs(a);
    // P takes even k with sign (-1)^{k/2}, Q odd k with sign (-1)^{(k-1)/2}.
    if (k % 2 == 0)
      p += ((k / 2) % 2 ? -1.0 : 1.0) * a;
    else
      q += (((k - 1) / 2) % 2 ? -1.0 : 1.0) * a;
    if (a == 0.0 || last < 1e-17) break;
  }
}

}  // namespace detail

AiryValue airy(double x) {
  if (!(std::fabs(x) <= 50.0))
    throw RangeError("airy: argument " + std::to_string(x) + " outside [-50, 50]");
  return detail::airy_unchecked(x);
}

double bessel_j(double nu, double x) {
  if (!(nu >= 0.0) || !(x >= 0.0) || !std::isfinite(nu) || !std::isfinite(x))
    throw RangeError("bessel_j: requires nu >= 0 and finite x >= 0");
  if (x == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (x <= 12.0 || x * x <= 4.0 * (nu + 1.0)) return bessel_series(nu, x);
  if (x >= 30.0 + 0.5 * nu * nu) return bessel_hankel(nu, x);
  return bessel_miller(nu, x);
}

std::complex<double> expint_en(int n, std::complex<double> z) {
  using cd = std::complex<double>;
  if (n < 1) throw ArgumentError("expint_en: order must be >= 1");
  if (z.real() < 0.0) throw RangeError("expint_en: requires Re z >= 0");
  if (z == cd(0.0, 0.0)) {
    if (n == 1) throw RangeError("expint_en: E_1(0) diverges");
    return cd(1.0 / (n - 1), 0.0);
  }
  const int nm1 = n - 1;
  if (std::abs(z) >= 1.0) {
    // Modified Lentz on the continued fraction.
    const double tiny = 1e-300;
    cd b = z + static_cast<double>(n);
    cd c = 1.0 / tiny;
    cd d = 1.0 / b;
    cd h = d;
    for (int i = 1; i < 100000; ++i) {
      const double an = -static_cast<double>(i) * (nm1 + i);
      b += 2.0;
      d = 1.0 / (an * d + b);
      c = b + an / c;
      const cd del = c * d;
      h *= del;
      if (std::abs(del - 1.0) < 1e-16) return h * std::exp(-z);
    }
    throw NumericError("expint_en: continued fraction did not converge");
  }
  cd ans = nm1 != 0 ? cd(1.0 / nm1, 0.0) : -std::log(z) - kEuler;
  cd fact = 1.0;
  for (int i = 1; i < 1000; ++i) {
    fact *= -z / static_cast<double>(i);
    cd del;
    if (i != nm1) {
      del = -fact / static_cast<double>(i - nm1);
    } else {
      double psi = -kEuler;
      for (int ii = 1; ii <= nm1; ++ii) psi += 1.0 / ii;
      del = fact * (-std::log(z) + psi);
    }
    ans += del;
    if (std::abs(del) < std::abs(ans) * 1e-17) return ans;
  }
  throw NumericError("expint_en: series did not converge");
}

double sine_integral(double x) {
  if (!(x > 0.0)) {
    if (x == 0.0) return 0.0;
    return -sine_integral(-x);
  }
  const auto e1 = expint_en(1, std::complex<double>(0.0, x));
  return e1.imag() + 0.5 * detail::kPi;
}

double cosine_integral(double x) {
  if (!(x > 0.0)) throw RangeError("cosine_integral: requires x > 0");
  return -expint_en(1, std::complex<double>(0.0, x)).real();
}

}  // namespace minorkern
