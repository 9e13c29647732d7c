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

#include "minorkern/scaling.hpp"

using namespace minorkern;

namespace {

void BM_Airy(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(airy_kernel(0.3, -1.2));
}
BENCHMARK(BM_Airy);

void BM_ExtendedAiry(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(extended_airy(0.0, 0.3, 0.5, -1.2));
    benchmark::DoNotOptimize(extended_airy(0.5, 0.3, 0.0, -1.2));
  }
}
BENCHMARK(BM_ExtendedAiry);

void BM_Bead(benchmark::State& st) {
  for (auto _ : st) {
    benchmark::DoNotOptimize(bead_kernel(1, 0.3, -1, -0.4));
    benchmark::DoNotOptimize(bead_kernel_alt(1, 0.3, -1, -0.4));
  }
}
BENCHMARK(BM_Bead);

void BM_HardEdge(benchmark::State& st) {
  const int cx = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(hard_edge_kernel(0.0, cx, 1.0, 0, 2.5));
}
BENCHMARK(BM_HardEdge)->Arg(0)->Arg(1)->Arg(2);

void BM_ScaledFinite(benchmark::State& st) {
  LimitQuery q;
  q.regime = Regime::SoftFixed;
  q.ensemble = EnsembleSpec::gaussian();
  q.N = static_cast<int>(st.range(0));
  q.offsets = {0, 2};
  q.positions = {0.0, -0.5};
  for (auto _ : st) benchmark::DoNotOptimize(scaled_finite_det(q));
}
BENCHMARK(BM_ScaledFinite)->Arg(50)->Arg(200)->Arg(800);

}  // namespace
