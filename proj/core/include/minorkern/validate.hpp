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
#include <string>
#include <vector>

#include "minorkern/kernel.hpp"
#include "minorkern/linalg.hpp"
#include "minorkern/samplers.hpp"

namespace minorkern {

// Correlation of the given species points by nested Gauss-Legendre quadrature
// of the joint density prod w(x^(N)) Delta(x^(N)) chi(interlacing), normalized
// numerically. N <= 3 and at most 5 integrated variables.
double brute_force_marginal(const ProcessSpec& proc, const std::vector<SpeciesPoint>& targets);

// Gram matrix [int Phi_j^n Psi_k^n], 0 <= j, k < n, by vector-valued adaptive
// quadrature, and its max-norm distance to the identity.
Matrix biorthogonality_gram(const ProcessSpec& proc, int n, double abs_tol = 1e-10);
double biorthogonality_error(const ProcessSpec& proc, int n, double abs_tol = 1e-10);

struct BiorthogonalityReport {
  int n = 0;
  double max_error = 0.0;   // max |G - I| of the computed Gram matrix
  double quad_error = 0.0;  // quadrature error estimate
  bool converged = false;   // quad_error <= abs_tol
  double bound() const { return max_error + quad_error; }
};
// Like biorthogonality_error but reports instead of throwing when the
// quadrature cannot reach abs_tol (the Gaussian Psi_k grow like
// sqrt(2^k k!), which puts a rounding floor under the off-diagonal entries).
BiorthogonalityReport biorthogonality_report(const ProcessSpec& proc, int n, double abs_tol = 1e-10);

struct BinSpec {
  double lo = 0.0;
  double hi = 0.0;  // lo >= hi: range taken from the data
  int bins = 100;
};

// Histogram estimate of rho_1(s, .) with total mass s when no value falls
// outside [lo, hi).
struct DensityEstimate {
  int s = 1;
  long chains = 0;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> counts;
  long outside = 0;
  std::vector<double> value;
  std::vector<double> ci_lo;  // binomial 99% interval
  std::vector<double> ci_hi;

  double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  std::vector<double> centers() const;
  double mass() const;
};

class DensityAccumulator {
 public:
  DensityAccumulator(int s, double lo, double hi, int bins);
  void add(const InterlacedChain& c);
  void add_values(const std::vector<double>& v);
  void merge(const DensityAccumulator& o);
  DensityEstimate estimate() const;

 private:
  DensityEstimate est_;
};

DensityEstimate empirical_density(const std::vector<InterlacedChain>& chains, int s, BinSpec bins);

// Average of rho_1(s, .) over each bin (8-point Gauss-Legendre per bin).
std::vector<double> bin_averaged_density(const ProcessSpec& proc, int s, double lo, double hi,
                                         int bins, int threads = 1);

enum class CompareTest { SupNorm, KolmogorovSmirnov, ChiSquare };
std::string to_string(CompareTest t);

struct ComparisonReport {
  CompareTest test = CompareTest::SupNorm;
  double statistic = 0.0;
  double threshold = 0.0;
  long draws = 0;
  std::uint64_t seed = 0;
  bool pass = false;
};

struct GridFunction {
  std::vector<double> x;
  std::vector<double> value;
};

// predicted.x must equal the estimate's bin centres. SupNorm uses
// sup_threshold; the other tests are at 1%.
ComparisonReport compare(const GridFunction& predicted, const DensityEstimate& estimated,
                         CompareTest test, double sup_threshold = 0.02, std::uint64_t seed = 0);

// Range holding all but a negligible part of rho_1(s, .).
void density_range(const ProcessSpec& proc, double& lo, double& hi);

struct SamplerCheck {
  int s = 1;
  int bins = 0;
  ComparisonReport report;
};

struct SamplerClosure {
  EnsembleSpec ensemble;
  int N = 0;
  long draws = 0;
  long interlacing_violations = 0;
  std::vector<SamplerCheck> species;
  bool pass = false;
};

// Draws sample_process_chain and compares every species with the kernel
// density in sup-norm. Bins are at most 100 and wide enough that the binomial
// standard error in the densest bin stays below tol / 4.
SamplerClosure sampler_vs_kernel(const EnsembleSpec& ens, int N, long draws, std::uint64_t seed,
                                 double tol = 0.02, int threads = 1);

// Draws from rho_1(s, .) / s by inversion of a tabulated CDF over
// density_range.
class DensityPointSampler {
 public:
  DensityPointSampler(const ProcessSpec& proc, int s, int threads = 1);
  // u in [0, 1].
  double quantile(double u) const;

 private:
  std::vector<double> x_;
  std::vector<double> cdf_;
};

struct GaugeCheck {
  int pairs = 0;
  std::uint64_t seed = 0;
  double max_abs = 0.0;
  double max_scaled = 0.0;  // |direct - gauge * K| / max(1, |direct|)
  SpeciesPoint worst_row;
  SpeciesPoint worst_col;
  int unconverged = 0;    // s < t pairs whose series missed its target within budget
  long series_terms = 0;  // total series terms summed
  bool pass = false;      // max_scaled <= tol
};
// Random pairs: species uniform in 1..N, positions from rho_1(s, .) / s. The
// s < t series is refined until its own error estimate is below tol / 10.
GaugeCheck gauge_check(const ProcessSpec& proc, int pairs, std::uint64_t seed, double tol = 1e-8,
                       int threads = 1);

}  // namespace minorkern
