/*
 * Copyright 2026 The ameu-pricing Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ameu/tridiagonal.hpp"

#include <cmath>
#include <string>

#include "ameu/error.hpp"

namespace ameu {

std::vector<double> solve_tridiagonal(const TridiagonalSystem& sys) {
  const std::size_t n = sys.size();
  if (n == 0) return {};
  std::vector<double> c(n);
  std::vector<double> d(n);

  auto check = [](double pivot, std::size_t row) {
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      fail(ErrorKind::SingularSystem,
           "zero pivot at row " + std::to_string(row));
    }
  };

  double pivot = sys.diag[0];
  check(pivot, 0);
  c[0] = sys.upper[0] / pivot;
  d[0] = sys.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = sys.diag[i] - sys.lower[i] * c[i - 1];
    check(pivot, i);
    c[i] = i + 1 < n ? sys.upper[i] / pivot : 0.0;
    d[i] = (sys.rhs[i] - sys.lower[i] * d[i - 1]) / pivot;
  }

  std::vector<double> x(n);
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

}  // namespace ameu
