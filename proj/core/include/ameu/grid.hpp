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

#ifndef AMEU_GRID_HPP
#define AMEU_GRID_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace ameu {

/// Uniform interior grid x_i = (i + 1) h, i = 0..n-1, with h = 1 / (n + 1).
class Grid {
 public:
  static constexpr std::size_t kMinPoints = 16;

  explicit Grid(std::size_t n);

  std::size_t size() const noexcept { return points_.size(); }
  double spacing() const noexcept { return h_; }
  double operator[](std::size_t i) const noexcept { return points_[i]; }
  std::span<const double> points() const noexcept { return points_; }
  double front() const noexcept { return points_.front(); }
  double back() const noexcept { return points_.back(); }

  bool contains(double x) const noexcept {
    return x >= points_.front() && x <= points_.back();
  }

  /// Linear interpolation of grid values at x. Throws OutOfRange outside
  /// [front(), back()].
  double interpolate(std::span<const double> values, double x) const;

  bool operator==(const Grid& other) const noexcept {
    return points_.size() == other.points_.size();
  }

 private:
  double h_;
  std::vector<double> points_;
};

/// Trapezoid rule of grid values over [front(), back()].
double trapezoid(const Grid& grid, std::span<const double> values);

}  // namespace ameu

#endif  // AMEU_GRID_HPP
