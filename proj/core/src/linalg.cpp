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

#include "minorkern/linalg.hpp"

#include <Eigen/Dense>
#include <algorithm>

#include "minorkern/errors.hpp"

namespace minorkern {

double determinant(const Matrix& m) {
  if (m.n == 0) return 1.0;
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      m.data.data(), m.n, m.n);
  return Eigen::PartialPivLU<Eigen::MatrixXd>(a).determinant();
}

std::vector<double> hermitian_eigenvalues(int n, const std::vector<double>& re,
                                          const std::vector<double>& im) {
  Eigen::MatrixXcd h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = {re[i * n + j], im[i * n + j]};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("hermitian eigensolver failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + n);
  std::sort(ev.begin(), ev.end());
  return ev;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> a(
      m.data.data(), m.n, m.n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("symmetric eigensolver failed");
  std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m.n);
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace minorkern
