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

#include <complex>

namespace minorkern {

struct AiryValue {
  double ai = 0.0;
  double aip = 0.0;
};

// Ai and Ai' for |x| <= 50. Throws RangeError outside.
AiryValue airy(double x);

// Bessel function of the first kind, nu >= 0 and x >= 0.
double bessel_j(double nu, double x);

// Generalized exponential integral E_n(z) = int_1^inf e^{-zt} t^{-n} dt for
// integer n >= 1 and Re z >= 0, z != 0.
std::complex<double> expint_en(int n, std::complex<double> z);

// Sine and cosine integrals for x > 0.
double sine_integral(double x);
double cosine_integral(double x);

namespace detail {
// Same as airy() without the range check; large positive x returns 0.
AiryValue airy_unchecked(double x);
// Hankel large-argument pieces: J_nu(x) = sqrt(2/(pi x)) (P cos chi - Q sin chi),
// chi = x - (nu/2 + 1/4) pi.
void bessel_hankel_pq(double nu, double x, double& p, double& q);
}  // namespace detail

}  // namespace minorkern
