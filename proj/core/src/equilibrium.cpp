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

#include "ameu/equilibrium.hpp"

#include <cmath>
#include <limits>
#include <tuple>

#include "ameu/error.hpp"

namespace ameu {

namespace {

// (1 - gamma)-scaled drift term a(theta) = mu_c + theta sigma_c - gamma sigma_c^2 / 2.
double tilted_drift(const ModelConfig& c, double theta) {
  const double s = c.endowment.sigma_c;
  return c.endowment.mu_c + theta * s - 0.5 * c.preferences.gamma * s * s;
}

double value_constant(const ModelConfig& c, double theta, double delta_pm) {
  const double g = c.preferences.gamma;
  const double phi = c.preferences.phi;
  if (g == 1.0) return tilted_drift(c, theta) / (phi * phi);
  return (1.0 / delta_pm - 1.0 / phi) / (1.0 - g);
}

}  // namespace

double theta_star(double alpha, double kappa, double delta_plus,
                  double delta_minus) {
  if (kappa == 0.0) return 0.0;
  const double wm = alpha / delta_minus;
  const double wp = (1.0 - alpha) / delta_plus;
  return kappa * (wp - wm) / (wm + wp);
}

double consumption_propensity(const ModelConfig& config, double theta) {
  const double g = config.preferences.gamma;
  const double delta = g == 1.0 ? config.preferences.phi
                                : config.preferences.phi -
                                      (1.0 - g) * tilted_drift(config, theta);
  if (!(delta > 0.0)) throw NonpositivePropensity("delta", delta);
  return delta;
}

double risk_free_rate(const ModelConfig& config, double theta) {
  const double g = config.preferences.gamma;
  const double mu = config.endowment.mu_c;
  const double s = config.endowment.sigma_c;
  return config.preferences.phi + g * mu - 0.5 * g * (1.0 + g) * s * s +
         g * theta * s;
}

std::pair<double, double> value_constants(const ModelConfig& config) {
  if (config.preferences.phi == 0.0) {
    fail(ErrorKind::InvalidArgument, "value constants require phi != 0");
  }
  const Propensities p = validate_growth(config);
  const double k = config.ambiguity.kappa;
  return {value_constant(config, -k, p.delta_minus),
          value_constant(config, k, p.delta_plus)};
}

EquilibriumConstants build_equilibrium(const ModelConfig& config) {
  check_invariants(config);
  const Propensities p = validate_growth(config);
  EquilibriumConstants e;
  e.delta_plus = p.delta_plus;
  e.delta_minus = p.delta_minus;
  e.theta_star = theta_star(config.ambiguity.alpha, config.ambiguity.kappa,
                            p.delta_plus, p.delta_minus);
  e.delta = consumption_propensity(config, e.theta_star);
  std::tie(e.v_lower, e.v_upper) = value_constants(config);
  e.r_f = risk_free_rate(config, e.theta_star);
  return e;
}

EquilibriumConstants equilibrium_for_theta(const ModelConfig& config,
                                           double theta) {
  check_invariants(config);
  const Propensities p = extreme_propensities(config);
  EquilibriumConstants e;
  e.delta_plus = p.delta_plus;
  e.delta_minus = p.delta_minus;
  e.theta_star = theta;
  e.delta = consumption_propensity(config, theta);
  e.r_f = risk_free_rate(config, theta);
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  if (p.delta_plus > 0.0 && p.delta_minus > 0.0 &&
      config.preferences.phi != 0.0) {
    std::tie(e.v_lower, e.v_upper) = value_constants(config);
  } else {
    e.v_lower = nan;
    e.v_upper = nan;
  }
  return e;
}

}  // namespace ameu
