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

#include "minorkern/rsklab.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "mathutil.hpp"
#include "minorkern/errors.hpp"
#include "minorkern/parallel.hpp"
#include "minorkern/random.hpp"

namespace minorkern {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

bool in_unit_open(double v) { return v > 0.0 && v < 1.0; }

// sum_{l=1}^{n} log l!
double log_superfactorial(int n) {
  double s = 0.0;
  for (int l = 1; l <= n; ++l) s += detail::log_factorial(l);
  return s;
}

// log (t; t)_l for l = 0..n, cumulative.
class QPochhammer {
 public:
  explicit QPochhammer(double t) : log_t_(std::log(t)) { table_.push_back(0.0); }
  double operator()(long l) {
    while (static_cast<long>(table_.size()) <= l) {
      const long i = static_cast<long>(table_.size());
      table_.push_back(table_.back() + std::log1p(-std::exp(static_cast<double>(i) * log_t_)));
    }
    return table_[static_cast<std::size_t>(l)];
  }

 private:
  double log_t_;
  std::vector<double> table_;
};

// log (t^lo - t^hi) for lo < hi.
double log_tdiff(long lo, long hi, double log_t) {
  return static_cast<double>(lo) * log_t +
         std::log(-std::expm1(static_cast<double>(hi - lo) * log_t));
}

void insert_row(std::vector<std::vector<long>>& rows, long v) {
  for (auto& row : rows) {
    auto it = std::upper_bound(row.begin(), row.end(), v);
    if (it == row.end()) {
      row.push_back(v);
      return;
    }
    std::swap(*it, v);
  }
  rows.push_back({v});
}

Partition shape_of(const std::vector<std::vector<long>>& rows) {
  Partition mu;
  for (const auto& r : rows) mu.push_back(static_cast<long>(r.size()));
  return mu;
}

long integer_site(double v) {
  const double r = std::round(v);
  if (!(v >= 0.0) || std::abs(v - r) > 0.0) throw ArgumentError("RSK needs a non-negative integer grid");
  return static_cast<long>(r);
}

Partition padded(const Partition& mu, int len) {
  Partition out(static_cast<std::size_t>(len), 0);
  if (static_cast<int>(mu.size()) > len) {
    for (std::size_t j = static_cast<std::size_t>(len); j < mu.size(); ++j)
      if (mu[j] != 0) throw ArgumentError("shape has more parts than its species allows");
  }
  for (int j = 0; j < len && j < static_cast<int>(mu.size()); ++j) out[j] = mu[j];
  return out;
}

void check_partition(const Partition& mu) {
  for (std::size_t j = 0; j < mu.size(); ++j) {
    if (mu[j] < 0) throw ArgumentError("partition parts must be non-negative");
    if (j > 0 && mu[j] > mu[j - 1]) throw ArgumentError("partition parts must be non-increasing");
  }
}

long nonzero_parts(const Partition& mu) {
  return std::count_if(mu.begin(), mu.end(), [](long v) { return v != 0; });
}

}  // namespace

void LatticeConfig::validate() const {
  if (n1 < 1 || n2 < 0 || p < 0 || n2 + p < 1) throw ParameterError("lattice needs n1 >= 1, n2 + p >= 1");
  switch (model) {
    case WeightModel::Geometric:
      if (!in_unit_open(z) || !in_unit_open(t)) throw ParameterError("z and t must lie in (0, 1)");
      if (static_cast<int>(alpha.size()) != p) throw ParameterError("need one alpha per s");
      for (double al : alpha)
        if (!in_unit_open(al)) throw ParameterError("alpha_s must lie in (0, 1)");
      break;
    case WeightModel::ExponentialHomogeneous: break;
    case WeightModel::ExponentialJacobi:
      if (static_cast<int>(a_s.size()) != p) throw ParameterError("need one a_s per s");
      if (!(a > 0.0)) throw ParameterError("exponential rates need a > 0");
      for (double v : a_s)
        if (!(a + v > 0.0)) throw ParameterError("exponential rates need a + a_s > 0");
      break;
    case WeightModel::ExponentialInhomogeneous:
      if (static_cast<int>(pi.size()) != n1 || static_cast<int>(pihat.size()) != n2 + p)
        throw ParameterError("pi needs n1 entries and pihat n2 + p entries");
      for (double u : pi)
        for (double v : pihat)
          if (!(u + v > 0.0) || !std::isfinite(u + v)) throw ParameterError("rates pi_i + pihat_j must be > 0");
      break;
  }
}

double LatticeConfig::site_q(int i, int j) const {
  if (model != WeightModel::Geometric) throw ArgumentError("site_q needs geometric weights");
  if (j <= n2) return z * z * std::pow(t, i + j - 2);
  return alpha[static_cast<std::size_t>(j - n2 - 1)] * z * std::pow(t, i - 1);
}

double LatticeConfig::site_rate(int i, int j) const {
  switch (model) {
    case WeightModel::ExponentialHomogeneous: return 1.0;
    case WeightModel::ExponentialJacobi:
      if (j <= n2) return i + j - 2 + 2.0 * a;
      return i - 1 + a + a_s[static_cast<std::size_t>(j - n2 - 1)];
    case WeightModel::ExponentialInhomogeneous:
      return pi[static_cast<std::size_t>(i - 1)] + pihat[static_cast<std::size_t>(j - 1)];
    case WeightModel::Geometric: break;
  }
  throw ArgumentError("site_rate needs exponential weights");
}

LatticeGrid sample_lattice(const LatticeConfig& cfg, std::uint64_t seed, std::uint64_t draw) {
  cfg.validate();
  DrawRng rng(seed, draw, stream_tag::kLattice);
  LatticeGrid g(cfg.rows(), cfg.cols());
  for (int i = 1; i <= g.rows; ++i)
    for (int j = 1; j <= g.cols; ++j)
      g.at(i, j) = cfg.model == WeightModel::Geometric
                       ? static_cast<double>(rng.geometric(cfg.site_q(i, j)))
                       : rng.exponential(cfg.site_rate(i, j));
  return g;
}

double last_passage(const LatticeGrid& grid, int m, int n) {
  if (m < 1 || n < 1 || m > grid.rows || n > grid.cols) throw ArgumentError("last_passage index outside grid");
  std::vector<double> row(static_cast<std::size_t>(n), 0.0);
  for (int i = 1; i <= m; ++i) {
    double left = 0.0;
    for (int j = 1; j <= n; ++j) {
      double& up = row[static_cast<std::size_t>(j - 1)];
      const double best = (i == 1) ? left : (j == 1 ? up : std::max(left, up));
      up = grid.at(i, j) + best;
      left = up;
    }
  }
  return row.back();
}

std::vector<long> ShapeSequence::h(int s) const {
  const int len = n2 + s;
  const Partition mu = padded(shapes.at(static_cast<std::size_t>(s)), len);
  std::vector<long> out(static_cast<std::size_t>(len));
  for (int j = 1; j <= len; ++j) out[j - 1] = mu[j - 1] + n2 + s - j;
  return out;
}

bool ShapeSequence::interlaced() const {
  for (int s = 1; s <= p(); ++s) {
    const std::vector<long> hs = h(s), hm = h(s - 1);
    for (std::size_t j = 0; j < hm.size(); ++j)
      if (!(hs[j] > hm[j] && hm[j] >= hs[j + 1])) return false;
  }
  return true;
}

Partition rsk_shape(const LatticeGrid& grid) {
  std::vector<std::vector<long>> rows;
  for (int j = 1; j <= grid.cols; ++j)
    for (int i = 1; i <= grid.rows; ++i)
      for (long k = integer_site(grid.at(i, j)); k > 0; --k) insert_row(rows, i);
  return shape_of(rows);
}

ShapeSequence rsk_shape_sequence(const LatticeGrid& grid, int n2, int p) {
  if (n2 < 0 || p < 0 || n2 + p > grid.cols || n2 + p < 1) throw ArgumentError("blocks exceed the grid");
  ShapeSequence seq;
  seq.n2 = n2;
  std::vector<std::vector<long>> rows;
  for (int j = 1; j <= n2 + p; ++j) {
    for (int i = 1; i <= grid.rows; ++i)
      for (long k = integer_site(grid.at(i, j)); k > 0; --k) insert_row(rows, i);
    if (j >= n2) seq.shapes.push_back(shape_of(rows));
  }
  if (n2 == 0) seq.shapes.insert(seq.shapes.begin(), Partition{});
  return seq;
}

double eval_discrete_joint_log(const LatticeConfig& cfg, const ShapeSequence& seq) {
  if (cfg.model != WeightModel::Geometric) throw ArgumentError("discrete joint needs geometric weights");
  if (!in_unit_open(cfg.z) || !in_unit_open(cfg.t)) throw ArgumentError("z and t must lie in (0, 1)");
  if (static_cast<int>(cfg.alpha.size()) != cfg.p) throw ArgumentError("need one alpha per s");
  for (double al : cfg.alpha)
    if (!in_unit_open(al)) throw ArgumentError("alpha_s must lie in (0, 1)");
  const int n1 = cfg.n1, n2 = cfg.n2, p = cfg.p;
  const int d = n1 - n2 - p;
  if (n2 < 0 || p < 0 || d < 0) throw ArgumentError("discrete joint needs n1 >= n2 + p");
  if (seq.n2 != n2 || seq.p() != p) throw ArgumentError("shape sequence does not match the lattice");
  for (const Partition& mu : seq.shapes) check_partition(mu);
  for (const Partition& mu : seq.shapes)
    if (nonzero_parts(mu) > n1) return kNegInf;
  if (!seq.interlaced()) return kNegInf;

  const double lz = std::log(cfg.z), lt = std::log(cfg.t);
  QPochhammer qp(cfg.t);
  const double np = n2 + p;

  double lk = -(np * (np - 1.0) / 2.0 + n2 * (n2 - 1.0) / 2.0) * lz;
  for (int s = 1; s <= p; ++s) lk -= (n2 + s - 1.0) * std::log(cfg.alpha[s - 1]);
  double texp = 0.0;
  for (int j = 1; j <= d; ++j) texp -= j * (j - 1.0);
  texp -= np * d * (d + 1.0) / 2.0;
  for (int j = 1; j <= n2; ++j) texp -= (j - 1.0) * (n2 - j);
  for (int j = 1; j <= n1; ++j) texp -= (j - 1.0) * (np - j);
  lk += texp * lt;
  for (int l = 1; l < n2; ++l) lk -= qp(l);
  for (int l = 1; l < n1; ++l) lk -= qp(l);
  for (int l = 1; l < d; ++l) lk += qp(l);
  for (int i = 1; i <= n1; ++i) {
    for (int j = 1; j <= n2; ++j) lk += std::log1p(-cfg.z * cfg.z * std::pow(cfg.t, i + j - 2));
    for (int s = 1; s <= p; ++s) lk += std::log1p(-cfg.alpha[s - 1] * cfg.z * std::pow(cfg.t, i - 1));
  }

  std::vector<std::vector<long>> h(static_cast<std::size_t>(p + 1));
  for (int s = 0; s <= p; ++s) h[s] = seq.h(s);
  auto sum = [](const std::vector<long>& v) {
    double acc = 0.0;
    for (long x : v) acc += static_cast<double>(x);
    return acc;
  };
  double lv = lk + (sum(h[p]) + sum(h[0])) * lz;
  for (int s = 1; s <= p; ++s) lv += (sum(h[s]) - sum(h[s - 1])) * std::log(cfg.alpha[s - 1]);
  for (long hv : h[p]) lv += qp(hv + d) - qp(hv);
  for (int s : {p, 0}) {
    const auto& v = h[s];
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = i + 1; j < v.size(); ++j) lv += log_tdiff(v[j], v[i], lt);
  }
  return lv;
}

double eval_discrete_joint(const LatticeConfig& cfg, const ShapeSequence& seq) {
  const double l = eval_discrete_joint_log(cfg, seq);
  return l == kNegInf ? 0.0 : std::exp(l);
}

void JacobiLimitParams::validate() const {
  if (n1 < 1 || n2 < 0 || p < 0 || n2 + p < 1 || n1 < n2 + p)
    throw ParameterError("limit density needs n1 >= n2 + p >= 1");
  if (static_cast<int>(a_s.size()) != p) throw ParameterError("need one a_s per s");
  if (!(a > 0.0)) throw ParameterError("limit density needs a > 0");
  for (double v : a_s)
    if (!(a + v > 0.0)) throw ParameterError("limit density needs a + a_s > 0");
}

double JacobiLimitParams::log_constant() const {
  validate();
  const int d = n1 - n2 - p;
  double lk = log_superfactorial(d - 1) - log_superfactorial(n1 - 1) - log_superfactorial(n2 - 1);
  for (double v : a_s) lk += detail::lgam(v + a + n1) - detail::lgam(v + a);
  for (int i = 1; i <= n1; ++i) lk += detail::lgam(2.0 * a + i + n2 - 1) - detail::lgam(2.0 * a + i - 1);
  return lk;
}

namespace {

void check_species_sizes(int n2, int p, const SpeciesValues& x) {
  if (static_cast<int>(x.size()) != p + 1) throw ArgumentError("need species 0..p");
  for (int s = 0; s <= p; ++s)
    if (static_cast<int>(x[s].size()) != n2 + s) throw ArgumentError("species s needs n2 + s values");
}

// Decreasing positive values with x^(s) and x^(s-1) alternating.
bool x_ordered(int p, const SpeciesValues& x) {
  for (const auto& v : x) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!(v[j] > 0.0) || !std::isfinite(v[j])) return false;
      if (j > 0 && !(v[j] < v[j - 1])) return false;
    }
  }
  for (int s = 1; s <= p; ++s)
    for (std::size_t j = 0; j < x[s - 1].size(); ++j)
      if (!(x[s][j] > x[s - 1][j] && x[s - 1][j] > x[s][j + 1])) return false;
  return true;
}

// 0 < y < 1 increasing with y^(s) and y^(s-1) alternating.
bool y_ordered(int p, const SpeciesValues& y) {
  for (const auto& v : y) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (!(v[j] > 0.0 && v[j] < 1.0)) return false;
      if (j > 0 && !(v[j] > v[j - 1])) return false;
    }
  }
  for (int s = 1; s <= p; ++s)
    for (std::size_t j = 0; j < y[s - 1].size(); ++j)
      if (!(y[s][j] < y[s - 1][j] && y[s - 1][j] < y[s][j + 1])) return false;
  return true;
}

double log_vandermonde(const std::vector<double>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) acc += std::log(std::abs(v[j] - v[i]));
  return acc;
}

double sum_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s;
}

}  // namespace

double eval_jacobi_limit_pdf(const JacobiLimitParams& prm, const SpeciesValues& x) {
  const double lk = prm.log_constant();
  const int n2 = prm.n2, p = prm.p, d = prm.n1 - n2 - p;
  check_species_sizes(n2, p, x);
  if (!x_ordered(p, x)) return 0.0;
  double lv = lk - prm.a * (sum_of(x[p]) + sum_of(x[0]));
  for (int s = 1; s <= p; ++s) lv -= prm.a_s[s - 1] * (sum_of(x[s]) - sum_of(x[s - 1]));
  std::vector<double> ep(x[p].size()), e0(x[0].size());
  for (std::size_t i = 0; i < x[p].size(); ++i) {
    lv += d * std::log(-std::expm1(-x[p][i]));
    ep[i] = std::exp(-x[p][i]);
  }
  for (std::size_t i = 0; i < x[0].size(); ++i) e0[i] = std::exp(-x[0][i]);
  lv += log_vandermonde(ep);
  lv += log_vandermonde(e0);
  return std::exp(lv);
}

double eval_jacobi_limit_pdf_y(const JacobiLimitParams& prm, const SpeciesValues& y) {
  const double lk = prm.log_constant();
  const int n2 = prm.n2, p = prm.p, d = prm.n1 - n2 - p;
  check_species_sizes(n2, p, y);
  if (!y_ordered(p, y)) return 0.0;
  double lv = lk;
  for (double v : y[p]) lv += (prm.a - 1.0) * std::log(v) + d * std::log1p(-v);
  for (double v : y[0]) lv += prm.a * std::log(v);
  for (int s = 1; s <= p; ++s) {
    for (double v : y[s]) lv += prm.a_s[s - 1] * std::log(v);
    for (double v : y[s - 1]) lv -= (prm.a_s[s - 1] + 1.0) * std::log(v);
  }
  lv += log_vandermonde(y[p]);
  lv += log_vandermonde(y[0]);
  return std::exp(lv);
}

KwExponents kw_exponents(int n1, int n2, int p, double a) {
  return {2.0 * a - p - 1.0, static_cast<double>(n1 - n2 - p)};
}

double eval_kw_form(const KwExponents& w, int n2, int p, const SpeciesValues& y) {
  check_species_sizes(n2, p, y);
  if (!y_ordered(p, y)) return 0.0;
  double lv = 0.0;
  for (double v : y[p]) lv += w.alpha * std::log(v) + w.beta * std::log1p(-v);
  lv += log_vandermonde(y[p]);
  lv += log_vandermonde(y[0]);
  return std::exp(lv);
}

InterlacedChain sample_wishart_chain_inhomogeneous(int p, const std::vector<double>& pi,
                                                   const std::vector<double>& pihat,
                                                   std::uint64_t seed, std::uint64_t draw) {
  if (p < 1 || static_cast<int>(pi.size()) < p || static_cast<int>(pihat.size()) < p)
    throw ArgumentError("Wishart chain needs p >= 1 and p entries of pi and pihat");
  for (int i = 0; i < p; ++i)
    for (int n = 0; n < p; ++n)
      if (!(pi[i] + pihat[n] > 0.0)) throw ParameterError("rates pi_i + pihat_n must be > 0");
  DrawRng rng(seed, draw, stream_tag::kWishart);
  InterlacedChain c{EnsembleSpec::laguerre(0.0), p, seed, draw, {}, {}};
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(p, p);
  for (int n = 0; n < p; ++n) {
    Eigen::VectorXcd x(p);
    for (int i = 0; i < p; ++i) {
      const double mod = std::sqrt(rng.exponential(pi[i] + pihat[n]));
      const double th = 2.0 * detail::kPi * rng.uniform();
      x(i) = std::polar(mod, th);
    }
    SecularProblem prob;
    prob.form = SecularForm::LueUpdate;
    if (n == 0) {
      prob.zero_weight = x.squaredNorm();
    } else {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
      if (es.info() != Eigen::Success) throw NumericError("hermitian eigensolver failed");
      const Eigen::VectorXcd y = es.eigenvectors().adjoint() * x;
      for (int k = 0; k < p; ++k) {
        if (k < p - n) {
          prob.zero_weight += std::norm(y(k));
        } else {
          prob.poles.push_back(es.eigenvalues()(k));
          prob.weights.push_back(std::norm(y(k)));
        }
      }
    }
    c.species[n + 1] = secular_roots(prob, &c.notes);
    A += x * x.adjoint();
  }
  return c;
}

BridgeReport lpp_eigenvalue_bridge_test(int n, long draws, std::uint64_t seed, double scale,
                                        int threads) {
  if (n < 1 || n > 20) throw ArgumentError("bridge test needs 1 <= n <= 20");
  if (draws < 1) throw ArgumentError("bridge test needs draws >= 1");
  if (!(scale > 0.0)) throw ArgumentError("scale must be positive");
  LatticeConfig cfg;
  cfg.n1 = n;
  cfg.n2 = n;
  cfg.p = 0;
  cfg.model = WeightModel::ExponentialHomogeneous;
  std::vector<double> lpp(static_cast<std::size_t>(draws)), eig(static_cast<std::size_t>(draws));
  parallel_for(static_cast<std::size_t>(draws), threads, [&](std::size_t k, int) {
    const LatticeGrid g = sample_lattice(cfg, seed, k);
    lpp[k] = scale * last_passage(g, n, n);
    eig[k] = sample_lue_chain(n, n, seed, k).species.at(n).back();
  });
  BridgeReport r;
  r.n = n;
  r.draws = draws;
  r.seed = seed;
  r.scale = scale;
  r.ks = ks_two_sample(std::move(lpp), std::move(eig));
  return r;
}

double scaled_discrete_joint(const JacobiLimitParams& prm, const SpeciesValues& x, double L) {
  prm.validate();
  if (!(L > 0.0) || !std::isfinite(L)) throw ArgumentError("L must be positive");
  check_species_sizes(prm.n2, prm.p, x);
  LatticeConfig cfg;
  cfg.n1 = prm.n1;
  cfg.n2 = prm.n2;
  cfg.p = prm.p;
  cfg.model = WeightModel::Geometric;
  cfg.z = std::exp(-prm.a / L);
  cfg.t = std::exp(-1.0 / L);
  for (double v : prm.a_s) cfg.alpha.push_back(std::exp(-v / L));
  ShapeSequence seq;
  seq.n2 = prm.n2;
  for (int s = 0; s <= prm.p; ++s) {
    Partition mu;
    for (int j = 1; j <= prm.n2 + s; ++j)
      mu.push_back(std::lround(L * x[s][j - 1]) - (prm.n2 + s - j));
    while (!mu.empty() && mu.back() == 0) mu.pop_back();
    seq.shapes.push_back(mu);
  }
  return eval_discrete_joint(cfg, seq) * std::pow(L, (1.0 + prm.p) * (prm.n2 + prm.p / 2.0));
}

DiscreteLimitReport discrete_limit_study(const JacobiLimitParams& prm, const SpeciesValues& x,
                                         const std::vector<double>& L_list, double ratio_tol) {
  if (L_list.size() < 2) throw ArgumentError("need at least two L values");
  for (std::size_t i = 0; i + 1 < L_list.size(); ++i)
    if (!(L_list[i + 1] > L_list[i])) throw ArgumentError("L values must increase strictly");
  DiscreteLimitReport r;
  r.L = L_list;
  r.limit = eval_jacobi_limit_pdf(prm, x);
  for (double L : L_list) {
    r.scaled.push_back(scaled_discrete_joint(prm, x, L));
    r.errors.push_back(r.scaled.back() - r.limit);
  }
  r.pass = true;
  for (std::size_t i = 0; i + 1 < r.errors.size(); ++i) {
    const double q = r.errors[i] / r.errors[i + 1];
    r.ratios.push_back(q);
    if (!(std::abs(q - L_list[i + 1] / L_list[i]) <= ratio_tol)) r.pass = false;
  }
  return r;
}

WishartReport wishart_homogeneous_test(int p, long draws, std::uint64_t seed, double rate,
                                       int threads) {
  if (p < 1 || p > 20) throw ArgumentError("Wishart test needs 1 <= p <= 20");
  if (draws < 1) throw ArgumentError("Wishart test needs draws >= 1");
  if (!(rate > 0.0)) throw ArgumentError("rate must be positive");
  const std::vector<double> pi(static_cast<std::size_t>(p), rate), ph(static_cast<std::size_t>(p), 0.0);
  std::vector<double> a(static_cast<std::size_t>(draws)), b(static_cast<std::size_t>(draws));
  parallel_for(static_cast<std::size_t>(draws), threads, [&](std::size_t k, int) {
    a[k] = sample_wishart_chain_inhomogeneous(p, pi, ph, seed, k).species.at(p).back();
    b[k] = sample_lue_chain(p, p, seed, k).species.at(p).back();
  });
  WishartReport r;
  r.p = p;
  r.draws = draws;
  r.seed = seed;
  r.rate = rate;
  r.ks = ks_two_sample(std::move(a), std::move(b));
  return r;
}

}  // namespace minorkern
