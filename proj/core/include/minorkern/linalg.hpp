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

#include <vector>

namespace minorkern {

// Row-major square matrix.
struct Matrix {
  int n = 0;
  std::vector<double> data;

  Matrix() = default;
  explicit Matrix(int n_) : n(n_), data(static_cast<std::size_t>(n_) * n_, 0.0) {}
  double& operator()(int i, int j) { return data[static_cast<std::size_t>(i) * n + j]; }
  double operator()(int i, int j) const { return data[static_cast<std::size_t>(i) * n + j]; }
};

// Partially pivoted LU determinant.
double determinant(const Matrix& m);

// Eigenvalues of a complex Hermitian matrix given by its real and imaginary
// parts (row-major, n x n), ascending. Throws NumericError on failure.
std::vector<double> hermitian_eigenvalues(int n, const std::vector<double>& re,
                                          const std::vector<double>& im);

// Eigenvalues of a real symmetric matrix, ascending.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

}  // namespace minorkern
