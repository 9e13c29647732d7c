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
#include <vector>

namespace minorkern {

// sign * exp(log_abs). Zero is {-inf, 0}.
struct SignedLog {
  double log_abs = -std::numeric_limits<double>::infinity();
  int sign = 0;

  static SignedLog from(double v) {
    if (v == 0.0 || std::isnan(v)) return {};
    return {std::log(std::fabs(v)), v > 0 ? 1 : -1};
  }
  double value() const { return sign == 0 ? 0.0 : sign * std::exp(log_abs); }
  bool is_zero() const { return sign == 0; }

  friend SignedLog operator*(SignedLog x, SignedLog y) {
    if (x.sign == 0 || y.sign == 0) return {};
    return {x.log_abs + y.log_abs, x.sign * y.sign};
  }
  friend SignedLog operator/(SignedLog x, SignedLog y) {
    if (x.sign == 0) return {};
    return {x.log_abs - y.log_abs, x.sign * y.sign};
  }
  SignedLog operator-() const { return {log_abs, -sign}; }
};

// Running sum of SignedLog terms kept relative to the largest magnitude seen.
class LogSum {
 public:
  void add(SignedLog t) {
    if (t.sign == 0) return;
    if (t.log_abs > ref_) {
      acc_ *= std::exp(ref_ - t.log_abs);
      ref_ = t.log_abs;
    }
    acc_ += t.sign * std::exp(t.log_abs - ref_);
  }
  void add(double v) { add(SignedLog::from(v)); }
  SignedLog result() const {
    if (acc_ == 0.0) return {};
    return {ref_ + std::log(std::fabs(acc_)), acc_ > 0 ? 1 : -1};
  }
  double value() const { return result().value(); }
  // Largest log-magnitude among the terms, used for cancellation checks.
  double max_log() const { return ref_; }

 private:
  double ref_ = -std::numeric_limits<double>::infinity();
  double acc_ = 0.0;
};

}  // namespace minorkern
