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

#ifndef AMEU_TRIDIAGONAL_HPP
#define AMEU_TRIDIAGONAL_HPP

#include <vector>

namespace ameu {

/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i].
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> rhs;

  explicit TridiagonalSystem(std::size_t n)
      : lower(n, 0.0), diag(n, 0.0), upper(n, 0.0), rhs(n, 0.0) {}

  std::size_t size() const noexcept { return diag.size(); }
};

/// Thomas elimination without pivoting. Throws SingularSystem on a
/// vanishing or non-finite pivot.
std::vector<double> solve_tridiagonal(const TridiagonalSystem& system);

}  // namespace ameu

#endif  // AMEU_TRIDIAGONAL_HPP
