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

#pragma once

#include <cstdint>
#include <vector>

#include "minorkern/samplers.hpp"
#include "minorkern/stats.hpp"

namespace minorkern {

enum class WeightModel { Geometric, ExponentialHomogeneous, ExponentialJacobi, ExponentialInhomogeneous };

// n1 x (n2 + p) lattice. Rows i = 1..n1, columns j = 1..n2+p; column n2 + s
// carries the parameter of index s.
struct LatticeConfig {
  int n1 = 1;
  int n2 = 1;
  int p = 0;
  WeightModel model = WeightModel::ExponentialHomogeneous;
  // Geometric: q_ij = z^2 t^{i+j-2} for j <= n2, alpha_s z t^{i-1} for j = n2+s.
  double z = 0.5;
  double t = 0.5;
  std::vector<double> alpha;
  // ExponentialJacobi: rates i+j-2+2a for j <= n2, i-1+a+a_s for j = n2+s.
  double a = 1.0;
  std::vector<double> a_s;
  // ExponentialInhomogeneous: rate pi_i + pihat_j; sizes n1 and n2 + p.
  std::vector<double> pi;
  std::vector<double> pihat;

  int rows() const { return n1; }
  int cols() const { return n2 + p; }
  // Throws ParameterError.
  void validate() const;
  // Geometric parameter q of site (i, j), 1-based.
  double site_q(int i, int j) const;
  // Exponential rate of site (i, j), 1-based.
  double site_rate(int i, int j) const;
};

// Row-major rows x cols grid, 1-based accessors.
struct LatticeGrid {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  LatticeGrid() = default;
  LatticeGrid(int r, int c) : rows(r), cols(c), v(static_cast<std::size_t>(r) * c, 0.0) {}
  double& at(int i, int j) { return v[static_cast<std::size_t>(i - 1) * cols + (j - 1)]; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(i - 1) * cols + (j - 1)]; }
};

LatticeGrid sample_lattice(const LatticeConfig& cfg, std::uint64_t seed, std::uint64_t draw = 0);

// l(m, n) = x_mn + max(l(m-1, n), l(m, n-1)).
double last_passage(const LatticeGrid& grid, int m, int n);

using Partition = std::vector<long>;

struct ShapeSequence {
  int n2 = 0;
  std::vector<Partition> shapes;  // mu^(0) .. mu^(p), trailing zeros trimmed

  int p() const { return static_cast<int>(shapes.size()) - 1; }
  // h_j^(s) = mu_j^(s) + n2 + s - j for j = 1..n2+s.
  std::vector<long> h(int s) const;
  // The strict-first interlacing h_1^(s) > h_1^(s-1) >= h_2^(s) > ... for s = 1..p.
  bool interlaced() const;
};

// RSK shapes of the n1 x (n2 + s) leading column blocks, s = 0..p, by row
// insertion of the biword read column by column, rows ascending.
ShapeSequence rsk_shape_sequence(const LatticeGrid& grid, int n2, int p);

// Row lengths of the insertion tableau of the whole grid.
Partition rsk_shape(const LatticeGrid& grid);

// Probability of a shape sequence under geometric weights. Returns 0 when the
// interlacing fails or a shape has more than n1 rows. Parameters outside (0, 1)
// or malformed shapes throw ArgumentError.
double eval_discrete_joint(const LatticeConfig& cfg, const ShapeSequence& seq);
double eval_discrete_joint_log(const LatticeConfig& cfg, const ShapeSequence& seq);

struct JacobiLimitParams {
  int n1 = 1;
  int n2 = 1;
  int p = 0;
  double a = 1.0;
  std::vector<double> a_s;

  void validate() const;
  // log of the normalization constant of the exponential-variable density.
  double log_constant() const;
};

// Species s = 0..p, each x^(s) of length n2 + s, listed in decreasing order.
using SpeciesValues = std::vector<std::vector<double>>;

// Density of the exponential-variable limit. Returns 0 when
// x_1^(s) > x_1^(s-1) > ... > x_{n2+s}^(s) > 0 fails.
double eval_jacobi_limit_pdf(const JacobiLimitParams& prm, const SpeciesValues& x);
// The same density in y = exp(-x), with y^(s) increasing.
double eval_jacobi_limit_pdf_y(const JacobiLimitParams& prm, const SpeciesValues& y);

// With a_s = a - s the y-density is proportional to
// prod w(y^(p)) Delta(y^(p)) Delta(y^(0)) chi, w(y) = y^alpha (1 - y)^beta.
struct KwExponents {
  double alpha = 0.0;
  double beta = 0.0;
};
KwExponents kw_exponents(int n1, int n2, int p, double a);
// Unnormalized functional form; y^(s) increasing, interlacing 0 < y_1^(s) <
// y_1^(s-1) < ... < y_{n2+s}^(s) < 1.
double eval_kw_form(const KwExponents& w, int n2, int p, const SpeciesValues& y);

// Rank-one Wishart chain A_(n+1) = A_(n) + x x^dagger in dimension p with
// |x_i|^2 exponential of rate pi_i + pihat_{n+1}. Species s = 1..p.
InterlacedChain sample_wishart_chain_inhomogeneous(int p, const std::vector<double>& pi,
                                                   const std::vector<double>& pihat,
                                                   std::uint64_t seed, std::uint64_t draw = 0);

// Geometric weights z = e^{-a/L}, t = e^{-1/L}, alpha_s = e^{-a_s/L} at
// mu_j^(s) = round(L x_j^(s)) - (n2 + s - j), times L^{(1+p)(n2+p/2)}.
// Throws ArgumentError when the rounded shapes are not partitions.
double scaled_discrete_joint(const JacobiLimitParams& prm, const SpeciesValues& x, double L);

struct DiscreteLimitReport {
  std::vector<double> L;
  std::vector<double> scaled;
  std::vector<double> errors;  // scaled - limit
  std::vector<double> ratios;  // errors[i] / errors[i + 1]
  double limit = 0.0;
  bool pass = false;  // every ratio within ratio_tol of L[i + 1] / L[i]
};
// Needs at least two strictly increasing L values.
DiscreteLimitReport discrete_limit_study(const JacobiLimitParams& prm, const SpeciesValues& x,
                                         const std::vector<double>& L_list,
                                         double ratio_tol = 0.3);

struct BridgeReport {
  int n = 0;
  long draws = 0;
  std::uint64_t seed = 0;
  double scale = 1.0;
  KsResult ks;
};

// Compares l(n, n) over exponential sites of mean `scale` with the largest
// eigenvalue of the rank-one update chain in dimension n. scale = 1 is the
// matched case.
BridgeReport lpp_eigenvalue_bridge_test(int n, long draws, std::uint64_t seed,
                                        double scale = 1.0, int threads = 1);


struct WishartReport {
  int p = 0;
  long draws = 0;
  std::uint64_t seed = 0;
  double rate = 1.0;
  KsResult ks;
};
// Largest eigenvalue of species p: the inhomogeneous chain with pi_i = rate,
// pihat_n = 0 against the rank-one update chain. rate = 1 is the matched case.
WishartReport wishart_homogeneous_test(int p, long draws, std::uint64_t seed, double rate = 1.0,
                                       int threads = 1);

}  // namespace minorkern
