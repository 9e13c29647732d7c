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

#include "minorkern/orthopoly.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "mathutil.hpp"
#include "minorkern/errors.hpp"

namespace minorkern {

using detail::lgam;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// log(x^p) with the conventions 0^0 = 1, 0^p = 0 (p > 0), 0^p = inf (p < 0).
double log_pow(double x, double p) {
  if (x > 0.0) return p * std::log(x);
  if (p == 0.0) return 0.0;
  return p > 0.0 ? -kInf : kInf;
}

double log_weight_eff(const EnsembleSpec& e, double x) {
  switch (e.kind) {
    case EnsembleKind::Gaussian:
      return std::isfinite(x) ? -x * x : -kInf;
    case EnsembleKind::Laguerre:
      if (!(x >= 0.0) || !std::isfinite(x)) return -kInf;
      return log_pow(x, e.a) - x;
    case EnsembleKind::Jacobi:
      if (!(x >= 0.0 && x <= 1.0)) return -kInf;
      return log_pow(x, e.a) + log_pow(1.0 - x, e.b);
  }
  return -kInf;
}

}  // namespace

double log_weight(const ShiftedFamily& fam, double x) {
  fam.validate();
  return log_weight_eff(fam.effective(), x);
}

double eval_weight(const ShiftedFamily& fam, double x) {
  const double lw = log_weight(fam, x);
  if (lw == -kInf) return 0.0;
  return std::exp(lw);
}

std::vector<double> poly_sequence(const ShiftedFamily& fam, int jmax, double x) {
  fam.validate();
  if (jmax < 0) throw ArgumentError("negative polynomial degree");
  const EnsembleSpec e = fam.effective();
  std::vector<double> p(jmax + 1);
  p[0] = 1.0;
  if (jmax == 0) return p;
  switch (e.kind) {
    case EnsembleKind::Gaussian:
      p[1] = 2.0 * x;
      for (int k = 1; k < jmax; ++k) p[k + 1] = 2.0 * x * p[k] - 2.0 * k * p[k - 1];
      break;
    case EnsembleKind::Laguerre:
      p[1] = 1.0 + e.a - x;
      for (int k = 1; k < jmax; ++k)
        p[k + 1] = ((2.0 * k + 1.0 + e.a - x) * p[k] - (k + e.a) * p[k - 1]) / (k + 1.0);
      break;
    case EnsembleKind::Jacobi: {
      const double al = e.a, be = e.b;
      const double t = 1.0 - 2.0 * x;
      p[1] = (al + 1.0) + 0.5 * (al + be + 2.0) * (t - 1.0);
      for (int k = 1; k < jmax; ++k) {
        const double s = 2.0 * k + al + be;
        const double c0 = 2.0 * (k + 1.0) * (k + al + be + 1.0) * s;
        const double c1 = (s + 1.0) * ((s + 2.0) * s * t + al * al - be * be);
        const double c2 = 2.0 * (k + al) * (k + be) * (s + 2.0);
        p[k + 1] = (c1 * p[k] - c2 * p[k - 1]) / c0;
      }
      break;
    }
  }
  return p;
}

double eval_poly(const ShiftedFamily& fam, int j, double x) {
  return poly_sequence(fam, j, x)[j];
}

double log_norm_constant(const ShiftedFamily& fam, int j) {
  fam.validate();
  if (j < 0) throw ArgumentError("negative polynomial degree");
  const EnsembleSpec e = fam.effective();
  switch (e.kind) {
    case EnsembleKind::Gaussian:
      return j * detail::kLog2 + lgam(j + 1.0) + 0.5 * detail::kLogPi;
    case EnsembleKind::Laguerre:
      return lgam(j + e.a + 1.0) - lgam(j + 1.0);
    case EnsembleKind::Jacobi:
      if (j == 0) return lgam(e.a + 1.0) + lgam(e.b + 1.0) - lgam(e.a + e.b + 2.0);
      return lgam(j + e.a + 1.0) + lgam(j + e.b + 1.0) - lgam(j + 1.0) -
             std::log(2.0 * j + e.a + e.b + 1.0) - lgam(j + e.a + e.b + 1.0);
  }
  return 0.0;
}

double norm_constant(const ShiftedFamily& fam, int j) {
  const double l = log_norm_constant(fam, j);
  if (l > 709.0)
    throw RangeError("norm constant of degree " + std::to_string(j) +
                     " overflows; use log_norm_constant");
  return std::exp(l);
}

double log_weight_mass(const ShiftedFamily& fam) { return log_norm_constant(fam, 0); }

RodriguesData rodrigues_constants(const EnsembleSpec& spec, int j) {
  spec.validate();
  if (j < 0) throw ArgumentError("negative polynomial degree");
  RodriguesData r;
  switch (spec.kind) {
    case EnsembleKind::Gaussian:
      r.sign = detail::parity_sign(j);
      r.log_abs_e = 0.0;
      r.Q = {1.0, 0.0, 0.0};
      break;
    case EnsembleKind::Laguerre:
      r.sign = 1;
      r.log_abs_e = detail::log_factorial(j);
      r.Q = {0.0, 1.0, 0.0};
      break;
    case EnsembleKind::Jacobi:
      r.sign = 1;
      r.log_abs_e = detail::log_factorial(j);
      r.Q = {0.0, 1.0, -1.0};
      break;
  }
  r.e = r.sign * std::exp(r.log_abs_e);
  return r;
}

RecurrenceCoeffs recurrence_coeffs(const EnsembleSpec& e, int k) {
  RecurrenceCoeffs c;
  switch (e.kind) {
    case EnsembleKind::Gaussian:
      c.alpha = 0.0;
      c.beta = std::sqrt(0.5 * k);
      break;
    case EnsembleKind::Laguerre:
      c.alpha = 2.0 * k + e.a + 1.0;
      c.beta = k == 0 ? 0.0 : std::sqrt(k * (k + e.a));
      break;
    case EnsembleKind::Jacobi: {
      // Monic Jacobi recurrence in t = 1 - 2x with (alpha, beta) = (a, b).
      const double al = e.a, be = e.b;
      const double s = 2.0 * k + al + be;
      double A;
      if (k == 0)
        A = (be - al) / (al + be + 2.0);
      else
        A = (be * be - al * al) / (s * (s + 2.0));
      double B = 0.0;
      if (k == 1) {
        B = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + al + be) * (2.0 + al + be) * (3.0 + al + be));
      } else if (k > 1) {
        B = 4.0 * k * (k + al) * (k + be) * (k + al + be) / (s * s * (s + 1.0) * (s - 1.0));
      }
      c.alpha = 0.5 * (1.0 - A);
      c.beta = 0.5 * std::sqrt(B);
      break;
    }
  }
  return c;
}

int leading_sign(const EnsembleSpec& spec, int k) {
  return spec.kind == EnsembleKind::Gaussian ? 1 : detail::parity_sign(k);
}

OrthonormalStream::OrthonormalStream(const ShiftedFamily& fam, double x)
    : e_(fam.effective()), x_(x), lsc_(-0.5 * log_weight_mass(fam)),
      ck_(recurrence_coeffs(e_, 0)) {}

SignedLog OrthonormalStream::next() {
  SignedLog out;
  if (q_ != 0.0) out = {lsc_ + std::log(std::fabs(q_)), (q_ > 0 ? 1 : -1) * leading_sign(e_, k_)};
  const RecurrenceCoeffs cn = recurrence_coeffs(e_, k_ + 1);
  const double qn = ((x_ - ck_.alpha) * q_ - ck_.beta * qm1_) / cn.beta;
  qm1_ = q_;
  q_ = qn;
  ck_ = cn;
  ++k_;
  const double big = std::max(std::fabs(q_), std::fabs(qm1_));
  if (big > 1e150 || (big < 1e-150 && big > 0.0)) {
    q_ /= big;
    qm1_ /= big;
    lsc_ += std::log(big);
  }
  return out;
}

std::vector<SignedLog> orthonormal_sequence(const ShiftedFamily& fam, int kmax, double x) {
  fam.validate();
  if (kmax < 0) throw ArgumentError("negative polynomial degree");
  std::vector<SignedLog> out(kmax + 1);
  OrthonormalStream st(fam, x);
  for (int k = 0; k <= kmax; ++k) out[k] = st.next();
  return out;
}

std::vector<double> eta_sequence(const ShiftedFamily& fam, int kmax, double x) {
  const auto u = orthonormal_sequence(fam, kmax, x);
  const double half_lw = 0.5 * log_weight(fam, x);
  std::vector<double> out(kmax + 1, 0.0);
  if (half_lw == -kInf) return out;
  for (int k = 0; k <= kmax; ++k) {
    if (u[k].sign != 0) out[k] = u[k].sign * std::exp(half_lw + u[k].log_abs);
  }
  return out;
}

double eval_eta(const ShiftedFamily& fam, int k, double x) {
  if (k < 0) throw ArgumentError("negative polynomial degree");
  return eta_sequence(fam, k, x)[k];
}

}  // namespace minorkern
