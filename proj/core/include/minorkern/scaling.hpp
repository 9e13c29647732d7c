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

#include <functional>
#include <string>
#include <vector>

#include "minorkern/ensemble.hpp"
#include "minorkern/kernel.hpp"
#include "minorkern/linalg.hpp"

namespace minorkern {

// Limit kernels. Inputs are scaled coordinates.
double airy_kernel(double x, double y);
double airy_kernel_integral(double x, double y);
double extended_airy(double tx, double x, double ty, double y);
double bead_kernel(int cx, double x, int cy, double y);
double bead_kernel_alt(int cx, double x, int cy, double y);
double hard_edge_kernel(double a, int cx, double x, int cy, double y);

enum class Regime { SoftFixed, Bulk, HardEdge, SoftDrift };

std::string to_string(Regime r);
Regime parse_regime(const std::string& name);

// Points (c_i, Y_i). Fixed regimes take integer offsets c_i >= 0 (species
// N - c_i); SoftDrift takes real c_i.
//   SoftFixed  Gaussian: y = sqrt(2N) + Y / (sqrt(2) N^{1/6})
//              Laguerre: y = 4N + 2a + 2 (2N)^{1/3} Y
//   Bulk       Gaussian: y = pi Y / sqrt(2N)
//   HardEdge   Laguerre: y = X / (4N);  Jacobi: y = X / (4N^2)
//   SoftDrift  Gaussian: s = N + 2c N^{2/3}, y = sqrt(2s) + Y / (sqrt(2) s^{1/6})
//              Laguerre: s = N - 2c (2N)^{2/3}, y = 4s + 2(a + N - s) + 2 (2N)^{1/3} (Y - c^2)
// with c the realized offset. Each point carries its Jacobian dy/dY.
struct LimitQuery {
  Regime regime = Regime::SoftFixed;
  EnsembleSpec ensemble;
  int N = 50;
  std::vector<double> offsets;
  std::vector<double> positions;

  // Throws ParameterError for an unsupported regime/ensemble pair and
  // ArgumentError for malformed points.
  void validate() const;
  int size() const { return static_cast<int>(positions.size()); }
};

struct MappedPoint {
  SpeciesPoint point;
  double jacobian = 1.0;  // dy/dY
  double offset = 0.0;    // realized c after species rounding
  double position = 0.0;
};

// Throws ArgumentError naming the violated bound when a point leaves the model.
std::vector<MappedPoint> map_query(const LimitQuery& q);

// Limit kernel entry at the nominal offsets.
double limit_kernel(const LimitQuery& q, int j, int k);
Matrix limit_matrix(const LimitQuery& q);

// sqrt(J_j J_k) K(s_j, y_j; s_k, y_k) in the kernel gauge.
Matrix scaled_finite_matrix(const LimitQuery& q);

// Gauge-free entry: sign of the (j,k) entry times sqrt|K_jk K_kj|, scaled.
double scaled_finite_kernel(const LimitQuery& q, int j, int k);
double limit_gauge_free(const LimitQuery& q, int j, int k);

// Scaled K_jk K_kj and its limit.
double scaled_finite_product(const LimitQuery& q, int j, int k);
double limit_product(const LimitQuery& q, int j, int k);

double scaled_finite_det(const LimitQuery& q);
double limit_det(const LimitQuery& q);

struct ConvergenceReport {
  Regime regime = Regime::SoftFixed;
  EnsembleSpec ensemble;
  std::vector<int> N_list;
  std::vector<double> offsets;
  std::vector<double> positions;
  double limit = 0.0;
  std::vector<double> finite;
  std::vector<double> errors;
  double order_estimate = 0.0;  // least-squares slope of -log(error) in log N
  bool monotone = false;        // errors strictly decreasing
  bool converging = false;      // monotone with order_estimate > kMinOrder
};

inline constexpr double kMinOrder = 0.1;

// Diagonal for one point, determinant otherwise. q.N is ignored. Needs at
// least three values of N.
ConvergenceReport convergence_report(const LimitQuery& q, const std::vector<int>& N_list,
                                     int threads = 1);

// Same bookkeeping for an arbitrary finite-N sequence.
ConvergenceReport convergence_report(const std::function<double(int)>& finite, double limit,
                                     const std::vector<int>& N_list, int threads = 1);

}  // namespace minorkern
