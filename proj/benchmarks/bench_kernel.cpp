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

#include <benchmark/benchmark.h>

#include <vector>

#include "minorkern/kernel.hpp"
#include "minorkern/validate.hpp"

using namespace minorkern;

namespace {

ProcessSpec spec(int kind, int N) {
  switch (kind) {
    case 0: return {EnsembleSpec::gaussian(), N};
    case 1: return {EnsembleSpec::laguerre(0.5), N};
    default: return {EnsembleSpec::jacobi(0.5, 1.0), N};
  }
}

double mid(const ProcessSpec& p) {
  double lo, hi;
  density_range(p, lo, hi);
  return lo + 0.45 * (hi - lo);
}

// Same species, earlier species and later species entries.
void BM_KernelK(benchmark::State& st) {
  const ProcessSpec p = spec(static_cast<int>(st.range(0)), static_cast<int>(st.range(1)));
  const double y = mid(p);
  const int N = p.N;
  for (auto _ : st) {
    benchmark::DoNotOptimize(kernel_K(p, {N, y}, {N, y + 0.1}).value);
    benchmark::DoNotOptimize(kernel_K(p, {N, y}, {1, y - 0.1}).value);
    benchmark::DoNotOptimize(kernel_K(p, {1, y}, {N, y + 0.1}).value);
  }
}
BENCHMARK(BM_KernelK)->ArgsProduct({{0, 1, 2}, {4, 10, 40}});

void BM_Density(benchmark::State& st) {
  const ProcessSpec p = spec(0, static_cast<int>(st.range(0)));
  double lo, hi;
  density_range(p, lo, hi);
  std::vector<double> grid(401);
  for (int i = 0; i <= 400; ++i) grid[i] = lo + (hi - lo) * i / 400.0;
  for (auto _ : st) benchmark::DoNotOptimize(density(p, p.N, grid).data());
  st.SetItemsProcessed(st.iterations() * 401);
}
BENCHMARK(BM_Density)->Arg(10)->Arg(100)->Arg(400);

void BM_Correlation(benchmark::State& st) {
  const ProcessSpec p = spec(0, 10);
  const int r = static_cast<int>(st.range(0));
  std::vector<SpeciesPoint> pts;
  for (int i = 0; i < r; ++i) pts.push_back({10 - i % 3, -1.0 + 0.3 * i});
  for (auto _ : st) benchmark::DoNotOptimize(correlation(p, pts));
}
BENCHMARK(BM_Correlation)->Arg(2)->Arg(4)->Arg(8);

void BM_DirectSeries(benchmark::State& st) {
  const ProcessSpec p = spec(0, 5);
  for (auto _ : st) benchmark::DoNotOptimize(direct_series(p, {2, 0.3}, {3, -0.4}).value);
}
BENCHMARK(BM_DirectSeries)->Unit(benchmark::kMillisecond);

void BM_BruteForce(benchmark::State& st) {
  const ProcessSpec p = spec(0, 2);
  for (auto _ : st) benchmark::DoNotOptimize(brute_force_marginal(p, {{2, 0.3}, {1, -0.2}}));
}
BENCHMARK(BM_BruteForce)->Unit(benchmark::kMillisecond);

void BM_Biorthogonality(benchmark::State& st) {
  const ProcessSpec p = spec(1, 20);
  for (auto _ : st) benchmark::DoNotOptimize(biorthogonality_report(p, static_cast<int>(st.range(0))).max_error);
}
BENCHMARK(BM_Biorthogonality)->Arg(5)->Arg(20)->Unit(benchmark::kMillisecond);

}  // namespace
