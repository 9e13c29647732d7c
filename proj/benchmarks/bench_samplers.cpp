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

#include <cstdint>

#include "minorkern/rsklab.hpp"
#include "minorkern/samplers.hpp"

using namespace minorkern;

namespace {

void BM_GueMinor(benchmark::State& st) {
  std::uint64_t k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(sample_gue_minor_chain(static_cast<int>(st.range(0)), 1, k++).N);
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_GueMinor)->Arg(4)->Arg(16)->Arg(64);

void BM_LueChain(benchmark::State& st) {
  const int N = static_cast<int>(st.range(0));
  std::uint64_t k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(sample_lue_chain(N, N, 1, k++).N);
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_LueChain)->Arg(4)->Arg(16)->Arg(64);

void BM_Projection(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  std::uint64_t k = 0;
  for (auto _ : st) benchmark::DoNotOptimize(sample_projection_chain(EnsembleSpec::jacobi(1, 2), n, 2, 1, k++).N);
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Projection)->Arg(4)->Arg(16);

void BM_LatticeRsk(benchmark::State& st) {
  LatticeConfig c;
  c.n1 = static_cast<int>(st.range(0));
  c.n2 = c.n1;
  c.p = 2;
  c.model = WeightModel::Geometric;
  c.z = 0.6;
  c.t = 0.9;
  c.alpha = {0.5, 0.7};
  std::uint64_t k = 0;
  for (auto _ : st) {
    const LatticeGrid g = sample_lattice(c, 1, k++);
    benchmark::DoNotOptimize(rsk_shape_sequence(g, c.n2, c.p).shapes.size());
    benchmark::DoNotOptimize(last_passage(g, c.n1, c.n2));
  }
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_LatticeRsk)->Arg(4)->Arg(10)->Arg(30);

}  // namespace
