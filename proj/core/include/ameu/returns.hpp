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

#ifndef AMEU_RETURNS_HPP
#define AMEU_RETURNS_HPP

#include <array>

#include "ameu/equilibrium.hpp"
#include "ameu/ode.hpp"
#include "ameu/params.hpp"

namespace ameu {

struct ConditionalReturns {
  double omega = 0.0;
  double mu_s = 0.0;
  double mu_h = 0.0;
  double sigma_s1 = 0.0;
  double sigma_s2 = 0.0;
  double sigma_h1 = 0.0;
  double sigma_h2 = 0.0;
  double premium = 0.0;
  double vol_norm = 0.0;
  double pd_ratio = 0.0;
  double r_f = 0.0;
};

struct Action {
  double c = 0.0;
  double u_s = 0.0;
  double u_h = 0.0;
};

/// Drifts include the dividend (or endowment) yield. The premium uses the
/// reduced form implied by the pricing equation.
ConditionalReturns conditional_returns(const ModelConfig& config,
                                       const EquilibriumConstants& constants,
                                       const PricePoint& point);

/// Throws OutOfRange when omega is outside the grid hull.
ConditionalReturns conditional_returns(const ModelConfig& config,
                                       const EquilibriumConstants& constants,
                                       const PriceSolution& solution,
                                       double omega);

/// Closed-form Gamma(x, omega; c, u_s, u_h). Throws DomainError when
/// u_s + u_h < 0 and InvalidArgument unless x > 0 and c > 0.
double gamma_functional(const ModelConfig& config,
                        const EquilibriumConstants& constants,
                        const ConditionalReturns& returns, double x,
                        const Action& action);

/// Market-clearing action (delta, delta phi_s, delta phi_h).
Action equilibrium_action(const EquilibriumConstants& constants,
                          const PricePoint& point);

/// Central-difference gradient of Gamma at `action` (x = 1), step 1e-6
/// relative, divided by delta^(-gamma) so the components are comparable
/// with marginal utility at equilibrium consumption.
std::array<double, 3> gamma_gradient(const ModelConfig& config,
                                     const EquilibriumConstants& constants,
                                     const ConditionalReturns& returns,
                                     const Action& action);

/// gamma_gradient at the market-clearing action.
std::array<double, 3> foc_residual(const ModelConfig& config,
                                   const EquilibriumConstants& constants,
                                   const PriceSolution& solution,
                                   double omega);

/// Finite-difference Hessian of Gamma in the action (x = 1).
std::array<std::array<double, 3>, 3> gamma_hessian(
    const ModelConfig& config, const EquilibriumConstants& constants,
    const ConditionalReturns& returns, const Action& action);

}  // namespace ameu

#endif  // AMEU_RETURNS_HPP
