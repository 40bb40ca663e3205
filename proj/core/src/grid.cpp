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

#include "ameu/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ameu/error.hpp"

namespace ameu {

Grid::Grid(std::size_t n) : h_(1.0 / static_cast<double>(n + 1)) {
  if (n < kMinPoints) {
    fail(ErrorKind::InvalidArgument,
         "grid needs at least " + std::to_string(kMinPoints) + " points");
  }
  points_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    points_[i] = static_cast<double>(i + 1) * h_;
  }
}

double Grid::interpolate(std::span<const double> values, double x) const {
  if (values.size() != points_.size()) {
    fail(ErrorKind::GridMismatch, "value array does not match grid size");
  }
  if (!contains(x)) {
    fail(ErrorKind::OutOfRange,
         "point " + std::to_string(x) + " lies outside the grid hull");
  }
  const double s = x / h_ - 1.0;
  const auto last = static_cast<double>(points_.size() - 1);
  const double clamped = std::clamp(s, 0.0, last);
  auto i = static_cast<std::size_t>(std::floor(clamped));
  if (i + 1 >= points_.size()) i = points_.size() - 2;
  const double w = clamped - static_cast<double>(i);
  return (1.0 - w) * values[i] + w * values[i + 1];
}

double trapezoid(const Grid& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    fail(ErrorKind::GridMismatch, "value array does not match grid size");
  }
  double sum = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) sum += values[i];
  return sum * grid.spacing();
}

}  // namespace ameu
