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

#ifndef AMEU_EQUILIBRIUM_HPP
#define AMEU_EQUILIBRIUM_HPP

#include <utility>

#include "ameu/params.hpp"

namespace ameu {

struct EquilibriumConstants {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
  double theta_star = 0.0;
  double delta = 0.0;
  double v_lower = 0.0;
  double v_upper = 0.0;
  double r_f = 0.0;
};

/// Weighted harmonic combination of the two extreme density generators.
double theta_star(double alpha, double kappa, double delta_plus,
                  double delta_minus);

/// delta = phi - (1-gamma)(mu_c + theta sigma_c - gamma sigma_c^2 / 2).
/// Throws NonpositivePropensity when the result is not positive.
double consumption_propensity(const ModelConfig& config, double theta);

/// r_f = phi + gamma mu_c - gamma(1+gamma) sigma_c^2 / 2 + gamma theta sigma_c.
double risk_free_rate(const ModelConfig& config, double theta);

/// (v_lower, v_upper). Uses the analytic limit at gamma = 1.
/// Throws InvalidArgument for phi = 0 and NonpositivePropensity when either
/// extreme propensity is not positive.
std::pair<double, double> value_constants(const ModelConfig& config);

/// Validates growth, then composes the functions above.
EquilibriumConstants build_equilibrium(const ModelConfig& config);

/// Constants for a given theta treated as a primitive (kappa and alpha are
/// ignored for theta). Only delta must be positive; v_lower and v_upper are
/// NaN when an extreme propensity is not positive.
EquilibriumConstants equilibrium_for_theta(const ModelConfig& config,
                                           double theta);

}  // namespace ameu

#endif  // AMEU_EQUILIBRIUM_HPP
