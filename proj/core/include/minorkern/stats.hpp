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

#include <cstddef>
#include <functional>
#include <vector>

namespace minorkern {

struct KsResult {
  double statistic = 0.0;
  double critical_value = 0.0;
  bool pass = false;
};

// Two-sample Kolmogorov-Smirnov test at level 1%, critical value
// 1.628 sqrt((n + m) / (n m)).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample test against a continuous CDF at level 1%, critical value
// 1.628 / sqrt(n).
KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

struct ChiSquareResult {
  double statistic = 0.0;
  int dof = 0;
  double critical_value = 0.0;  // upper 1% quantile
  bool pass = false;
};

// Pearson test over cells with expected count >= min_expected; the remaining
// cells are pooled into one.
ChiSquareResult chi_square(const std::vector<double>& observed,
                           const std::vector<double>& expected, double min_expected = 5.0);

// Equal-width histogram on [lo, hi) normalized as a density by the total
// sample count (mass outside the range is kept in the denominator).
struct Histogram {
  double lo = 0.0;
  double hi = 1.0;
  std::vector<double> counts;
  long total = 0;

  Histogram(double lo_, double hi_, std::size_t bins) : lo(lo_), hi(hi_), counts(bins, 0.0) {}
  double width() const { return (hi - lo) / static_cast<double>(counts.size()); }
  double center(std::size_t k) const { return lo + (static_cast<double>(k) + 0.5) * width(); }
  void add(double x);
  void merge(const Histogram& other);
  double density(std::size_t k) const;
  // Binomial standard error of density(k).
  double density_se(std::size_t k) const;
};

struct MeanSe {
  double mean = 0.0;
  double se = 0.0;
};
MeanSe mean_se(const std::vector<double>& v);

}  // namespace minorkern
