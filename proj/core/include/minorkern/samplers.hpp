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
#include <map>
#include <string>
#include <vector>

#include "minorkern/ensemble.hpp"

namespace minorkern {

// Eigenvalues of a nested sequence, keyed by species. Each vector is
// ascending.
struct InterlacedChain {
  EnsembleSpec ensemble;
  int N = 0;
  std::uint64_t seed = 0;
  std::uint64_t draw = 0;
  std::map<int, std::vector<double>> species;
  std::vector<std::string> notes;

  // Strict interlacing between consecutive species present in the map, strict
  // increase within each species and support membership.
  bool interlaced() const;
};

enum class SecularForm {
  GueBordered,  // lambda - border - sum w_i / (lambda - d_i)
  LueUpdate,    // 1 - sum w_i / (lambda - d_i) - zero_weight / lambda
  Projection,   // sum w_i / (lambda - d_i)
};

struct SecularProblem {
  std::vector<double> poles;    // strictly increasing
  std::vector<double> weights;  // strictly positive
  SecularForm form = SecularForm::GueBordered;
  double border = 0.0;
  double zero_weight = 0.0;  // LueUpdate only; poles must then be > 0

  void validate() const;
  double eval(double lambda) const;
  // Sum of |terms| at lambda, the scale for residual checks.
  double scale(double lambda) const;
};

// All real roots, ascending. GueBordered: n + 1 roots, one outside each end.
// LueUpdate: one root per pole (the zero pole included when zero_weight > 0).
// Projection: n - 1 roots. Poles closer than 1e-12 (relative) are merged; the
// merged pole is then itself a root and a note is appended to `notes`.
std::vector<double> secular_roots(const SecularProblem& prob,
                                  std::vector<std::string>* notes = nullptr);

// Eigenvalues of the principal minors 1..N of one N x N matrix with density
// proportional to exp(-tr M^2).
InterlacedChain sample_gue_minor_chain(int N, std::uint64_t seed, std::uint64_t draw = 0);

// Rank-one update chain A_(n+1) = A_(n) + x x^dagger in dimension N, species
// 1..n_max. E|x_j|^2 = 1.
InterlacedChain sample_lue_chain(int N, int n_max, std::uint64_t seed, std::uint64_t draw = 0);

// n eigenvalues with density prop. to prod w(a_l) prod (a_k - a_j)^2.
// Laguerre and Jacobi need integer parameters (ParameterError otherwise).
std::vector<double> sample_ensemble_eigs(const EnsembleSpec& ens, int n, std::uint64_t seed,
                                         std::uint64_t draw = 0);

// Top species n from sample_ensemble_eigs, then p corank-1 projections:
// species n - 1, ..., n - p.
InterlacedChain sample_projection_chain(const EnsembleSpec& ens, int n, int p,
                                        std::uint64_t seed, std::uint64_t draw = 0);

// Chain with the law of ProcessSpec{ens, N} over species 1..N: the GUE minor
// chain, the rank-one update chain (Laguerre a = 0) or the projection chain.
InterlacedChain sample_process_chain(const EnsembleSpec& ens, int N, std::uint64_t seed,
                                     std::uint64_t draw = 0);

// Random stream tags, one per construction.
namespace stream_tag {
inline constexpr std::uint32_t kGue = 1;
inline constexpr std::uint32_t kLue = 2;
inline constexpr std::uint32_t kEnsemble = 3;
inline constexpr std::uint32_t kProjection = 4;
inline constexpr std::uint32_t kLattice = 5;
inline constexpr std::uint32_t kWishart = 6;
inline constexpr std::uint32_t kPoints = 7;
}  // namespace stream_tag

}  // namespace minorkern
