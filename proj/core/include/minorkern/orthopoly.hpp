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
#include "minorkern/signed_log.hpp"

namespace minorkern {

// w(x); exactly 0 outside the support.
double eval_weight(const ShiftedFamily& fam, double x);
// log w(x); -inf outside the support.
double log_weight(const ShiftedFamily& fam, double x);

// p_j(x): H_j, L_j^{(a)} or P_j^{(a,b)}(1 - 2x), by three-term recurrence.
double eval_poly(const ShiftedFamily& fam, int j, double x);
// p_0 .. p_jmax at x.
std::vector<double> poly_sequence(const ShiftedFamily& fam, int jmax, double x);

// Squared norm of p_j under w. Throws RangeError when it overflows.
double norm_constant(const ShiftedFamily& fam, int j);
double log_norm_constant(const ShiftedFamily& fam, int j);

// log of the total mass of w.
double log_weight_mass(const ShiftedFamily& fam);

RodriguesData rodrigues_constants(const EnsembleSpec& spec, int j);

// Recurrence for the monic polynomials in x:
// x r_k = r_{k+1} + alpha_k r_k + beta_k^2 r_{k-1}.
struct RecurrenceCoeffs {
  double alpha = 0.0;
  double beta = 0.0;  // beta_k, with beta_0 = 0
};
RecurrenceCoeffs recurrence_coeffs(const EnsembleSpec& spec, int k);

// Sign of the leading coefficient of p_k.
int leading_sign(const EnsembleSpec& spec, int k);

// Streams p_k(x) / sqrt(N_k) for k = 0, 1, 2, ... as sign and log magnitude.
class OrthonormalStream {
 public:
  OrthonormalStream(const ShiftedFamily& fam, double x);
  // Value of the current degree, then advance.
  SignedLog next();
  int degree() const { return k_; }

 private:
  EnsembleSpec e_;
  double x_;
  int k_ = 0;
  double lsc_;
  double qm1_ = 0.0, q_ = 1.0;
  RecurrenceCoeffs ck_;
};

// p_k(x) / sqrt(N_k) for k = 0..kmax as sign and log magnitude; never forms
// N_k. Stable for kmax in the hundreds.
std::vector<SignedLog> orthonormal_sequence(const ShiftedFamily& fam, int kmax,
                                            double x);

// eta_k(x) = sqrt(w(x) / N_k) p_k(x).
double eval_eta(const ShiftedFamily& fam, int k, double x);
std::vector<double> eta_sequence(const ShiftedFamily& fam, int kmax, double x);

}  // namespace minorkern
