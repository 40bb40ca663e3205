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

#include "ameu/moments.hpp"

#include <cmath>
#include <vector>

#include "ameu/error.hpp"
#include "ameu/returns.hpp"

namespace ameu {

namespace {

constexpr double kTailWidth = 0.005;

}  // namespace

UnconditionalMoments unconditional_moments(
    const ModelConfig& config, const EquilibriumConstants& constants,
    const PriceSolution& solution, const StationaryDensity& density) {
  if (!(solution.grid == density.grid) ||
      solution.phi_s.size() != density.p.size()) {
    fail(ErrorKind::GridMismatch,
         "price solution and stationary density use different grids");
  }
  const Grid& grid = solution.grid;
  const std::size_t n = grid.size();
  std::vector<double> prem(n), vol2(n), lpd(n), tail(n);
  for (std::size_t i = 0; i < n; ++i) {
    PricePoint pt;
    pt.omega = grid[i];
    pt.phi_s = solution.phi_s[i];
    pt.phi_h = solution.phi_h.empty() ? 1.0 / solution.delta - pt.phi_s
                                      : solution.phi_h[i];
    pt.d_phi_s = solution.d_phi_s[i];
    pt.d2_phi_s = solution.d2_phi_s[i];
    const ConditionalReturns r = conditional_returns(config, constants, pt);
    const double p = density.p[i];
    prem[i] = r.premium * p;
    vol2[i] = r.vol_norm * r.vol_norm * p;
    lpd[i] = std::log(r.pd_ratio);
    const bool in_tail = grid[i] < kTailWidth || grid[i] > 1.0 - kTailWidth;
    tail[i] = in_tail ? p : 0.0;
  }
  std::vector<double> w1(n), w2(n);
  for (std::size_t i = 0; i < n; ++i) w1[i] = lpd[i] * density.p[i];
  const double mean_lpd = trapezoid(grid, w1);
  for (std::size_t i = 0; i < n; ++i) {
    const double dev = lpd[i] - mean_lpd;
    w2[i] = dev * dev * density.p[i];
  }

  UnconditionalMoments m;
  m.premium = trapezoid(grid, prem);
  m.vol = std::sqrt(trapezoid(grid, vol2));
  m.pd = std::exp(mean_lpd);
  m.sd_log_pd = std::sqrt(trapezoid(grid, w2));
  m.r_f = constants.r_f;
  m.tail_mass = trapezoid(grid, tail);
  return m;
}

ShareMoments share_moments(const StationaryDensity& density) {
  ShareMoments s;
  s.mean = density_moments(density, [](double w) { return w; });
  s.w_one_minus = density_moments(density, [](double w) { return w * (1.0 - w); });
  s.w2_one_minus =
      density_moments(density, [](double w) { return w * w * (1.0 - w); });
  return s;
}

const MeanRevertingQuadratic& require_quadratic(const ModelConfig& config) {
  const auto* q = dynamic_cast<const MeanRevertingQuadratic*>(config.share.get());
  if (q == nullptr) {
    fail(ErrorKind::InvalidArgument,
         "approximation requires mean-reverting quadratic share dynamics");
  }
  return *q;
}

double approx_premium(const ModelConfig& config, const EquilibriumConstants& e,
                      const ShareMoments& m) {
  const MeanRevertingQuadratic& q = require_quadratic(config);
  const double g = config.preferences.gamma;
  const double sc = config.endowment.sigma_c;
  const double ratio = q.lambda() / e.delta;
  const double level = q.omega_bar() * (1.0 + ratio);
  const double cross = g * config.rho * sc * q.nu();
  return g * sc * sc +
         cross * m.w_one_minus / q.omega_bar() * (2.0 + ratio) /
             ((1.0 + ratio) * (1.0 + ratio)) -
         cross * m.w2_one_minus / (level * level) - sc * e.theta_star;
}

double approx_log_pd(const ModelConfig& config, const EquilibriumConstants& e,
                     double share_mean) {
  const MeanRevertingQuadratic& q = require_quadratic(config);
  const double slope = q.lambda() * q.omega_bar() / (q.lambda() + e.delta);
  return std::exp(-slope * (share_mean - q.omega_bar())) / e.delta;
}

}  // namespace ameu
