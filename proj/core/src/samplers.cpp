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

#include "minorkern/samplers.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "minorkern/errors.hpp"
#include "minorkern/random.hpp"

namespace minorkern {

namespace {

constexpr double kMergeGap = 1e-12;
constexpr double kBisectRel = 1e-13;
constexpr int kMaxExpansions = 1100;

using CMatrix = Eigen::MatrixXcd;

std::vector<double> ascending(const Eigen::VectorXd& v) {
  std::vector<double> out(v.data(), v.data() + v.size());
  std::sort(out.begin(), out.end());
  return out;
}

// Complex Gaussian matrix with independent parts of standard deviation sd.
CMatrix complex_gaussian(DrawRng& rng, int rows, int cols, double sd) {
  CMatrix x(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) x(i, j) = {sd * rng.normal(), sd * rng.normal()};
  return x;
}

// exp(-tr M^2): diagonal variance 1/2, off-diagonal parts variance 1/4.
CMatrix gue_matrix(DrawRng& rng, int n) {
  CMatrix m(n, n);
  const double sd_diag = std::sqrt(0.5);
  for (int i = 0; i < n; ++i) {
    m(i, i) = sd_diag * rng.normal();
    for (int j = i + 1; j < n; ++j) {
      const std::complex<double> z(0.5 * rng.normal(), 0.5 * rng.normal());
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

std::vector<double> hermitian_eigs(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("hermitian eigensolver failed");
  return ascending(es.eigenvalues());
}

int integer_param(double v, const char* name) {
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-12 || r < 0)
    throw ParameterError(std::string("sampler needs a non-negative integer ") + name);
  return static_cast<int>(r);
}

struct Pole {
  double d;
  double w;
};

double bisect_root(const SecularProblem& prob, double lo, double hi) {
  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= kBisectRel * std::max(std::abs(lo), std::abs(hi))) break;
    if (prob.eval(mid) < 0.0) lo = mid; else hi = mid;
  }
  double x = 0.5 * (lo + hi);
  for (int k = 0; k < 2; ++k) {
    const double f = prob.eval(x);
    if (f == 0.0) break;
    double df = prob.form == SecularForm::GueBordered ? 1.0 : 0.0;
    for (std::size_t i = 0; i < prob.poles.size(); ++i) {
      const double r = x - prob.poles[i];
      df += prob.weights[i] / (r * r);
    }
    if (prob.form == SecularForm::LueUpdate && prob.zero_weight > 0.0)
      df += prob.zero_weight / (x * x);
    const double xn = x - f / df;
    if (!(xn > lo && xn < hi) || !(std::abs(prob.eval(xn)) < std::abs(f))) break;
    x = xn;
  }
  return x;
}

}  // namespace

void SecularProblem::validate() const {
  if (poles.size() != weights.size()) throw ArgumentError("poles and weights differ in size");
  for (std::size_t i = 0; i < poles.size(); ++i) {
    if (!std::isfinite(poles[i]) || !(weights[i] > 0.0) || !std::isfinite(weights[i]))
      throw ArgumentError("secular weights must be positive and finite");
    if (i > 0 && !(poles[i] > poles[i - 1]))
      throw ArgumentError("secular poles must be strictly increasing");
  }
  if (form == SecularForm::LueUpdate) {
    if (!(zero_weight >= 0.0)) throw ArgumentError("zero-pole weight must be >= 0");
    if (!poles.empty() && !(poles.front() > 0.0))
      throw ArgumentError("update poles must be positive");
  }
  if (form == SecularForm::Projection && poles.empty())
    throw ArgumentError("projection needs at least one pole");
}

double SecularProblem::eval(double lambda) const {
  double f = 0.0;
  switch (form) {
    case SecularForm::GueBordered: f = lambda - border; break;
    case SecularForm::LueUpdate: f = 1.0 - zero_weight / lambda; break;
    case SecularForm::Projection: f = 0.0; break;
  }
  for (std::size_t i = 0; i < poles.size(); ++i) f -= weights[i] / (lambda - poles[i]);
  return f;
}

double SecularProblem::scale(double lambda) const {
  double s = 0.0;
  switch (form) {
    case SecularForm::GueBordered: s = std::abs(lambda) + std::abs(border); break;
    case SecularForm::LueUpdate: s = 1.0 + std::abs(zero_weight / lambda); break;
    case SecularForm::Projection: break;
  }
  for (std::size_t i = 0; i < poles.size(); ++i) s += std::abs(weights[i] / (lambda - poles[i]));
  return s;
}

std::vector<double> secular_roots(const SecularProblem& prob, std::vector<std::string>* notes) {
  prob.validate();
  std::vector<Pole> raw;
  if (prob.form == SecularForm::LueUpdate && prob.zero_weight > 0.0)
    raw.push_back({0.0, prob.zero_weight});
  for (std::size_t i = 0; i < prob.poles.size(); ++i) raw.push_back({prob.poles[i], prob.weights[i]});

  std::vector<Pole> poles;
  std::vector<double> roots;
  for (const Pole& p : raw) {
    if (!poles.empty() &&
        p.d - poles.back().d < kMergeGap * std::max(1.0, std::abs(p.d))) {
      poles.back().w += p.w;
      roots.push_back(poles.back().d);
      if (notes) notes->push_back("merged near-degenerate poles at " + std::to_string(p.d));
      continue;
    }
    poles.push_back(p);
  }

  // Reduced problem in the generic form, zero pole included as a plain pole.
  SecularProblem red;
  red.form = prob.form;
  red.border = prob.border;
  for (const Pole& p : poles) {
    red.poles.push_back(p.d);
    red.weights.push_back(p.w);
  }
  if (prob.form == SecularForm::GueBordered && poles.empty()) return {prob.border};

  for (std::size_t i = 0; i + 1 < poles.size(); ++i)
    roots.push_back(bisect_root(red, poles[i].d, poles[i + 1].d));

  if (prob.form != SecularForm::Projection) {
    const double last = poles.back().d;
    double step = 1.0;
    double hi = last + step;
    int k = 0;
    while (!(red.eval(hi) > 0.0)) {
      if (++k > kMaxExpansions) throw NumericError("secular bracket expansion failed");
      step *= 2.0;
      hi = last + step;
    }
    roots.push_back(bisect_root(red, last, hi));
  }
  if (prob.form == SecularForm::GueBordered) {
    const double first = poles.front().d;
    double step = 1.0;
    double lo = first - step;
    int k = 0;
    while (!(red.eval(lo) < 0.0)) {
      if (++k > kMaxExpansions) throw NumericError("secular bracket expansion failed");
      step *= 2.0;
      lo = first - step;
    }
    roots.push_back(bisect_root(red, lo, first));
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

bool InterlacedChain::interlaced() const {
  const std::vector<double>* prev = nullptr;
  int prev_s = 0;
  for (const auto& [s, v] : species) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!std::isfinite(v[i])) return false;
      if (!ensemble.in_open_support(v[i])) return false;
      if (i > 0 && !(v[i] > v[i - 1])) return false;
    }
    if (prev && s == prev_s + 1) {
      const std::vector<double>& lo = *prev;
      if (v.size() != lo.size() + 1) return false;
      for (std::size_t i = 0; i < lo.size(); ++i)
        if (!(v[i] < lo[i] && lo[i] < v[i + 1])) return false;
    }
    prev = &v;
    prev_s = s;
  }
  return true;
}

InterlacedChain sample_gue_minor_chain(int N, std::uint64_t seed, std::uint64_t draw) {
  if (N < 1 || N > 400) throw ArgumentError("GUE minor chain needs 1 <= N <= 400");
  DrawRng rng(seed, draw, stream_tag::kGue);
  const CMatrix m = gue_matrix(rng, N);
  InterlacedChain c{EnsembleSpec::gaussian(), N, seed, draw, {}, {}};
  for (int s = 1; s <= N; ++s) c.species[s] = hermitian_eigs(m.topLeftCorner(s, s));
  return c;
}

InterlacedChain sample_lue_chain(int N, int n_max, std::uint64_t seed, std::uint64_t draw) {
  if (N < 1 || n_max < 1 || n_max > N) throw ArgumentError("LUE chain needs 1 <= n_max <= N");
  DrawRng rng(seed, draw, stream_tag::kLue);
  InterlacedChain c{EnsembleSpec::laguerre(0.0), N, seed, draw, {}, {}};
  std::vector<double> cur;
  for (int n = 0; n < n_max; ++n) {
    SecularProblem prob;
    prob.form = SecularForm::LueUpdate;
    prob.poles = cur;
    for (int j = 0; j < n; ++j) prob.weights.push_back(rng.exponential(1.0));
    for (int j = n; j < N; ++j) prob.zero_weight += rng.exponential(1.0);
    cur = secular_roots(prob, &c.notes);
    c.species[n + 1] = cur;
  }
  return c;
}

std::vector<double> sample_ensemble_eigs(const EnsembleSpec& ens, int n, std::uint64_t seed,
                                         std::uint64_t draw) {
  ens.validate();
  if (n < 1) throw ArgumentError("ensemble draw needs n >= 1");
  DrawRng rng(seed, draw, stream_tag::kEnsemble);
  const double sd = std::sqrt(0.5);
  switch (ens.kind) {
    case EnsembleKind::Gaussian: return hermitian_eigs(gue_matrix(rng, n));
    case EnsembleKind::Laguerre: {
      const int a = integer_param(ens.a, "a");
      const CMatrix x = complex_gaussian(rng, n + a, n, sd);
      return hermitian_eigs(x.adjoint() * x);
    }
    case EnsembleKind::Jacobi: {
      const int a = integer_param(ens.a, "a");
      const int b = integer_param(ens.b, "b");
      const CMatrix x = complex_gaussian(rng, n + a, n, sd);
      const CMatrix y = complex_gaussian(rng, n + b, n, sd);
      const CMatrix wx = x.adjoint() * x;
      const CMatrix wy = y.adjoint() * y;
      Eigen::GeneralizedSelfAdjointEigenSolver<CMatrix> es(wx, wx + wy, Eigen::EigenvaluesOnly);
      if (es.info() != Eigen::Success) throw NumericError("generalized eigensolver failed");
      return ascending(es.eigenvalues());
    }
  }
  throw ParameterError("unknown ensemble");
}

InterlacedChain sample_projection_chain(const EnsembleSpec& ens, int n, int p,
                                        std::uint64_t seed, std::uint64_t draw) {
  if (n < 1 || p < 0 || p >= n) throw ArgumentError("projection chain needs 0 <= p < n");
  InterlacedChain c{ens, n, seed, draw, {}, {}};
  std::vector<double> cur = sample_ensemble_eigs(ens, n, seed, draw);
  c.species[n] = cur;
  DrawRng rng(seed, draw, stream_tag::kProjection);
  for (int k = 1; k <= p; ++k) {
    SecularProblem prob;
    prob.form = SecularForm::Projection;
    prob.poles = cur;
    for (std::size_t j = 0; j < cur.size(); ++j) prob.weights.push_back(rng.exponential(1.0));
    cur = secular_roots(prob, &c.notes);
    c.species[n - k] = cur;
  }
  return c;
}

InterlacedChain sample_process_chain(const EnsembleSpec& ens, int N, std::uint64_t seed,
                                     std::uint64_t draw) {
  ens.validate();
  if (ens.kind == EnsembleKind::Gaussian) return sample_gue_minor_chain(N, seed, draw);
  if (ens.kind == EnsembleKind::Laguerre && ens.a == 0.0) return sample_lue_chain(N, N, seed, draw);
  return sample_projection_chain(ens, N, N - 1, seed, draw);
}

}  // namespace minorkern
