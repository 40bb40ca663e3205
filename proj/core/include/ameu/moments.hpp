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

#ifndef AMEU_MOMENTS_HPP
#define AMEU_MOMENTS_HPP

#include "ameu/equilibrium.hpp"
#include "ameu/ode.hpp"
#include "ameu/params.hpp"
#include "ameu/stochastic.hpp"

namespace ameu {

struct UnconditionalMoments {
  double premium = 0.0;    // E[mu_S] - r_f
  double vol = 0.0;        // sqrt(E[|sigma_S|^2])
  double pd = 0.0;         // exp(E[ln(phi_S / omega)])
  double sd_log_pd = 0.0;  // sd of ln(phi_S / omega)
  double r_f = 0.0;
  // Density mass within 0.005 of either end of (0, 1).
  double tail_mass = 0.0;
};

/// Throws GridMismatch when the solution and density grids differ.
UnconditionalMoments unconditional_moments(
    const ModelConfig& config, const EquilibriumConstants& constants,
    const PriceSolution& solution, const StationaryDensity& density);

/// Invariant-law moments used by the approximations.
struct ShareMoments {
  double mean = 0.0;           // E[w]
  double w_one_minus = 0.0;    // E[w(1-w)]
  double w2_one_minus = 0.0;   // E[w^2(1-w)]
};

ShareMoments share_moments(const StationaryDensity& density);

/// Mean-reverting quadratic dynamics are required (lambda, omega_bar, nu
/// appear explicitly); throws InvalidArgument otherwise.
const MeanRevertingQuadratic& require_quadratic(const ModelConfig& config);

/// Linearised unconditional premium: the closed-form conditional premium with
/// 1/(w + omega_bar lambda/delta) expanded to first order at omega_bar.
double approx_premium(const ModelConfig& config, const EquilibriumConstants& constants,
                      const ShareMoments& moments);

/// Linearised exp(E[ln(S/D)]): delta^-1 exp(-(lambda omega_bar/(lambda+delta))
/// (E[w] - omega_bar)).
double approx_log_pd(const ModelConfig& config, const EquilibriumConstants& constants,
                     double share_mean);

}  // namespace ameu

#endif  // AMEU_MOMENTS_HPP
