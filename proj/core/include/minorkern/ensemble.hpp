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

#include <cmath>
#include <limits>
#include <string>

namespace minorkern {

enum class EnsembleKind { Gaussian, Laguerre, Jacobi };

std::string to_string(EnsembleKind kind);
EnsembleKind parse_ensemble_kind(const std::string& name);

// Lower bound on a and b is -1 + kParamFloor.
inline constexpr double kParamFloor = 1e-8;

struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::Gaussian;
  double a = 0.0;
  double b = 0.0;

  static EnsembleSpec gaussian() { return {EnsembleKind::Gaussian, 0.0, 0.0}; }
  static EnsembleSpec laguerre(double a) { return {EnsembleKind::Laguerre, a, 0.0}; }
  static EnsembleSpec jacobi(double a, double b) { return {EnsembleKind::Jacobi, a, b}; }

  // Throws ParameterError.
  void validate() const;

  double support_lo() const;
  double support_hi() const;
  bool in_support(double x) const;
  // Open interior; Jacobi excludes 0 and 1, Laguerre excludes 0.
  bool in_open_support(double x) const;

  bool operator==(const EnsembleSpec&) const = default;
};

// The superscript (s) convention: a -> a + shift, and b -> b + shift for
// Jacobi. Gaussian is unaffected.
struct ShiftedFamily {
  EnsembleSpec base;
  int shift = 0;

  ShiftedFamily() = default;
  ShiftedFamily(const EnsembleSpec& spec, int shift_ = 0);  // NOLINT

  EnsembleSpec effective() const;
  void validate() const;
};

// Q(y) = q0 + q1 y + q2 y^2.
struct Quadratic {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double operator()(double y) const { return q0 + y * (q1 + y * q2); }
};

struct RodriguesData {
  double e = 1.0;          // e_j, +-inf when it overflows
  double log_abs_e = 0.0;  // log |e_j|
  int sign = 1;            // sign of e_j
  Quadratic Q;
};

}  // namespace minorkern
