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

#include "minorkern/ensemble.hpp"

#include <algorithm>
#include <cctype>

#include "minorkern/errors.hpp"

namespace minorkern {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Gaussian: return "gaussian";
    case EnsembleKind::Laguerre: return "laguerre";
    case EnsembleKind::Jacobi: return "jacobi";
  }
  return "unknown";
}

EnsembleKind parse_ensemble_kind(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (s == "gaussian" || s == "gue" || s == "hermite") return EnsembleKind::Gaussian;
  if (s == "laguerre" || s == "lue") return EnsembleKind::Laguerre;
  if (s == "jacobi" || s == "jue") return EnsembleKind::Jacobi;
  throw ArgumentError("unknown ensemble '" + name + "'");
}

void EnsembleSpec::validate() const {
  const double floor = -1.0 + kParamFloor;
  switch (kind) {
    case EnsembleKind::Gaussian:
      return;
    case EnsembleKind::Jacobi:
      if (!std::isfinite(b) || b < floor)
        throw ParameterError("jacobi exponent b must exceed -1, got " + std::to_string(b));
      [[fallthrough]];
    case EnsembleKind::Laguerre:
      if (!std::isfinite(a) || a < floor)
        throw ParameterError("exponent a must exceed -1, got " + std::to_string(a));
      return;
  }
}

double EnsembleSpec::support_lo() const {
  return kind == EnsembleKind::Gaussian ? -std::numeric_limits<double>::infinity() : 0.0;
}

double EnsembleSpec::support_hi() const {
  return kind == EnsembleKind::Jacobi ? 1.0 : std::numeric_limits<double>::infinity();
}

bool EnsembleSpec::in_support(double x) const {
  if (std::isnan(x)) return false;
  return x >= support_lo() && x <= support_hi();
}

bool EnsembleSpec::in_open_support(double x) const {
  if (!std::isfinite(x)) return false;
  return x > support_lo() && x < support_hi();
}

ShiftedFamily::ShiftedFamily(const EnsembleSpec& spec, int shift_)
    : base(spec), shift(shift_) {}

EnsembleSpec ShiftedFamily::effective() const {
  EnsembleSpec e = base;
  if (e.kind == EnsembleKind::Laguerre) {
    e.a += shift;
  } else if (e.kind == EnsembleKind::Jacobi) {
    e.a += shift;
    e.b += shift;
  }
  return e;
}

void ShiftedFamily::validate() const {
  if (shift < 0) throw ParameterError("negative family shift");
  base.validate();
}

}  // namespace minorkern
