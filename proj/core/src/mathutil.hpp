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

namespace minorkern::detail {

inline double lgam(double x) {
#if defined(__GLIBC__)
  int sg = 0;
  return ::lgamma_r(x, &sg);
#else
  return std::lgamma(x);
#endif
}

inline double log_factorial(int n) { return lgam(n + 1.0); }

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kLogPi = 1.14472988584940017414;
inline constexpr double kLog2 = 0.69314718055994530942;

inline int parity_sign(long n) { return (n % 2 == 0) ? 1 : -1; }

}  // namespace minorkern::detail
