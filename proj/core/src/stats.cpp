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

#include "minorkern/stats.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "minorkern/errors.hpp"

namespace minorkern {

namespace {
constexpr double kKs1Percent = 1.628;
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("KS test needs non-empty samples");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult r;
  r.statistic = d;
  r.critical_value = kKs1Percent * std::sqrt((na + nb) / (na * nb));
  r.pass = d < r.critical_value;
  return r;
}

KsResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw ArgumentError("KS test needs a non-empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  KsResult r;
  r.statistic = d;
  r.critical_value = kKs1Percent / std::sqrt(n);
  r.pass = d < r.critical_value;
  return r;
}

ChiSquareResult chi_square(const std::vector<double>& observed,
                           const std::vector<double>& expected, double min_expected) {
  if (observed.size() != expected.size()) throw ArgumentError("chi-square size mismatch");
  double stat = 0.0, pool_o = 0.0, pool_e = 0.0;
  int cells = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    if (expected[k] >= min_expected) {
      stat += (observed[k] - expected[k]) * (observed[k] - expected[k]) / expected[k];
      ++cells;
    } else {
      pool_o += observed[k];
      pool_e += expected[k];
    }
  }
  if (pool_e > 0.0) {
    stat += (pool_o - pool_e) * (pool_o - pool_e) / pool_e;
    ++cells;
  }
  ChiSquareResult r;
  r.statistic = stat;
  r.dof = std::max(1, cells - 1);
  boost::math::chi_squared dist(r.dof);
  r.critical_value = boost::math::quantile(boost::math::complement(dist, 0.01));
  r.pass = stat < r.critical_value;
  return r;
}

void Histogram::add(double x) {
  ++total;
  if (!(x >= lo && x < hi)) return;
  auto k = static_cast<std::size_t>((x - lo) / width());
  if (k >= counts.size()) k = counts.size() - 1;
  counts[k] += 1.0;
}

void Histogram::merge(const Histogram& other) {
  if (other.counts.size() != counts.size() || other.lo != lo || other.hi != hi)
    throw ArgumentError("histogram layouts differ");
  for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += other.counts[k];
  total += other.total;
}

double Histogram::density(std::size_t k) const {
  return total == 0 ? 0.0 : counts[k] / (static_cast<double>(total) * width());
}

double Histogram::density_se(std::size_t k) const {
  if (total == 0) return 0.0;
  const double n = static_cast<double>(total);
  const double q = counts[k] / n;
  return std::sqrt(q * (1.0 - q) / n) / width();
}

MeanSe mean_se(const std::vector<double>& v) {
  if (v.size() < 2) throw ArgumentError("mean_se needs at least two values");
  const double n = static_cast<double>(v.size());
  double m = 0.0;
  for (double x : v) m += x;
  m /= n;
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return {m, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace minorkern
