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

#include <stdexcept>
#include <string>

namespace minorkern {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid ensemble or process parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Argument outside the supported evaluation range, or a linear-scale result
// that would overflow.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Quadrature, root finding or an eigensolver failed to reach tolerance.
class NumericError : public Error {
 public:
  NumericError(const std::string& what, double achieved = 0.0)
      : Error(what), achieved_(achieved) {}
  double achieved() const noexcept { return achieved_; }

 private:
  double achieved_;
};

// Malformed call: duplicate points, bad sizes, unknown names.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

}  // namespace minorkern
