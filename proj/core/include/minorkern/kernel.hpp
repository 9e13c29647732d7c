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

#include <vector>

#include "minorkern/ensemble.hpp"
#include "minorkern/linalg.hpp"
#include "minorkern/signed_log.hpp"

namespace minorkern {

struct ProcessSpec {
  EnsembleSpec ensemble;
  int N = 1;

  void validate() const;
  // Family of species s: shift N - s.
  ShiftedFamily family(int s) const { return ShiftedFamily(ensemble, N - s); }
};

struct SpeciesPoint {
  int s = 1;
  double y = 0.0;
  bool operator==(const SpeciesPoint&) const = default;
};

// Kernel: K of the phi/Psi/Phi construction. Direct: the orthonormal-function
// form f = (-1)^{s-t} sqrt(w_t(y) / w_s(x)) K.
enum class Gauge { Kernel, Direct };

struct KernelValue {
  double value = 0.0;
  Gauge gauge = Gauge::Kernel;
  SpeciesPoint row;
  SpeciesPoint col;
};

// chi_{y > x} (y - x)^{n2-n1-1} / (n2-n1-1)! for n1 < n2, else 0.
double phi_conv(int n1, int n2, double x, double y);

// Psi_j^n(x) for j >= -(N - n). Negative j by adaptive quadrature; throws
// NumericError when the quadrature fails.
double psi(const ProcessSpec& proc, int n, int j, double x);
SignedLog psi_log(const ProcessSpec& proc, int n, int j, double x);

// Phi_j^n(x), 0 <= j <= n - 1.
double phi_cap(const ProcessSpec& proc, int n, int j, double x);
SignedLog phi_cap_log(const ProcessSpec& proc, int n, int j, double x);

// K(s1, y1; s2, y2).
KernelValue kernel_K(const ProcessSpec& proc, const SpeciesPoint& p1, const SpeciesPoint& p2);

// (-1)^{s-t} sqrt(w_t(y) / w_s(x)), the factor taking K to the direct form.
double gauge_factor(const ProcessSpec& proc, const SpeciesPoint& p1, const SpeciesPoint& p2);

struct SeriesOptions {
  // Abel factors exp(-eps m), eps = eps0 / 2^i for i < levels, followed by
  // Richardson extrapolation in eps. levels = 0 sums plainly with a tail bound.
  double eps0 = 1.6e-3;
  int levels = 4;
  double cutoff = 40.0;  // terms beyond eps_min * m > cutoff are dropped
  long max_terms = 2000000;
  double rel_tol = 1e-13;  // plain summation only
  // target > 0: divide eps0 by 4 until the error estimate and the change from
  // the previous refinement are both below target * max(1, |value|), or the
  // total work would exceed budget terms.
  double target = 0.0;
  long budget = 300000000;
};

struct SeriesResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long terms = 0;
  bool converged = true;  // adaptive mode: target reached within budget
};

// The infinite series over k <= 0 for s < t, returned in the direct gauge. At
// y = x with t - s = 1 it converges to the midpoint of the jump.
SeriesResult direct_series(const ProcessSpec& proc, const SpeciesPoint& p1,
                           const SpeciesPoint& p2, const SeriesOptions& opts = {});

// Direct-form entry f(s1, y1; s2, y2): finite sum for s1 >= s2, accelerated
// series for s1 < s2.
KernelValue kernel_direct(const ProcessSpec& proc, const SpeciesPoint& p1,
                          const SpeciesPoint& p2, const SeriesOptions& opts = {});

// det[K(p_j, p_k)] for 1 <= r <= 12 distinct points. Values below 1e-14 of the
// diagonal scale are reported as 0.
double correlation(const ProcessSpec& proc, const std::vector<SpeciesPoint>& points);

// Kernel matrix [K(p_j, p_k)].
Matrix kernel_matrix(const ProcessSpec& proc, const std::vector<SpeciesPoint>& points);

// rho_1(s, y) on a grid. Points outside the support give 0.
std::vector<double> density(const ProcessSpec& proc, int s, const std::vector<double>& grid,
                            int threads = 1);

// Species separation at or above which s < t entries use the absolutely
// convergent series rather than the finite phi/Psi/Phi form.
inline constexpr int kSeriesSeparation = 8;

}  // namespace minorkern
