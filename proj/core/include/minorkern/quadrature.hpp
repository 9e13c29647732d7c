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
#include <vector>

namespace minorkern {

using Integrand = std::function<double(double)>;

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 2000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (G10/K21) on a finite interval. Endpoints are
// never evaluated.
QuadResult integrate(const Integrand& f, double a, double b,
                     const QuadOptions& opts = {});

// Same, throwing NumericError when the tolerance is not reached.
double integrate_or_throw(const Integrand& f, double a, double b,
                          const QuadOptions& opts = {});

// int_a^inf f. Panels [a, a+T], [a+T, a+3T], ... with doubling width until a
// panel contributes less than tail_tol of the running total. The integrand must
// decay; throws NumericError after max_panels.
QuadResult integrate_to_infinity(const Integrand& f, double a, double width,
                                 const QuadOptions& opts = {},
                                 double tail_tol = 1e-14, int max_panels = 60);

using VectorIntegrand = std::function<void(double, double*)>;

struct VectorQuadResult {
  std::vector<double> values;
  double error = 0.0;  // summed panel errors, max-norm over components
  bool converged = false;
};

// Adaptive G10/K21 for a vector of integrands sharing one mesh. f(x, out)
// fills dim values. Tolerances apply to the max-norm.
VectorQuadResult integrate_vector(const VectorIntegrand& f, int dim, double a, double b,
                                  const QuadOptions& opts = {});

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]. Cached, thread safe.
const GaussRule& gauss_legendre(int n);

}  // namespace minorkern
