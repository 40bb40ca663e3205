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

#include "ameu/returns.hpp"

#include <algorithm>
#include <cmath>

#include "ameu/error.hpp"

namespace ameu {

namespace {

constexpr double kRelativeStep = 1e-6;
constexpr double kStepFloor = 1e-2;

double utility(double c, double gamma) {
  return gamma == 1.0 ? std::log(c) : std::pow(c, 1.0 - gamma) / (1.0 - gamma);
}

double step_for(double v) {
  return kRelativeStep * std::max(std::abs(v), kStepFloor);
}

Action shifted(Action a, int j, double by) {
  if (j == 0) a.c += by;
  if (j == 1) a.u_s += by;
  if (j == 2) a.u_h += by;
  return a;
}

double component(const Action& a, int j) {
  return j == 0 ? a.c : (j == 1 ? a.u_s : a.u_h);
}

}  // namespace

ConditionalReturns conditional_returns(const ModelConfig& config,
                                       const EquilibriumConstants& constants,
                                       const PricePoint& p) {
  const ShareDynamics& share = *config.share;
  const double w = p.omega;
  const double mu_c = config.endowment.mu_c;
  const double sc = config.endowment.sigma_c;
  const double rho = config.rho;
  const double g = config.preferences.gamma;
  const double mw = share.mu(w);
  const double sw = share.sigma(w);

  const double d_phi_h = -p.d_phi_s;
  const double d2_phi_h = -p.d2_phi_s;
  const double drift_s = (mw + rho * sc * sw) * p.d_phi_s + 0.5 * sw * sw * p.d2_phi_s;
  const double drift_h = (mw + rho * sc * sw) * d_phi_h + 0.5 * sw * sw * d2_phi_h;
  const double e_s = p.d_phi_s / p.phi_s;

  ConditionalReturns r;
  r.omega = w;
  r.r_f = constants.r_f;
  r.mu_s = mu_c + (w + drift_s) / p.phi_s;
  r.mu_h = mu_c + (1.0 - w + drift_h) / p.phi_h;
  r.sigma_s1 = sc;
  r.sigma_s2 = sw * e_s;
  r.sigma_h1 = sc;
  r.sigma_h2 = sw * d_phi_h / p.phi_h;
  r.premium = g * sc * sc + g * rho * sc * sw * e_s - sc * constants.theta_star;
  r.vol_norm = std::sqrt(sc * sc + 2.0 * rho * sc * r.sigma_s2 +
                         r.sigma_s2 * r.sigma_s2);
  r.pd_ratio = p.phi_s / w;
  return r;
}

ConditionalReturns conditional_returns(const ModelConfig& config,
                                       const EquilibriumConstants& constants,
                                       const PriceSolution& solution,
                                       double omega) {
  return conditional_returns(config, constants, evaluate(solution, omega));
}

double gamma_functional(const ModelConfig& config,
                        const EquilibriumConstants& e,
                        const ConditionalReturns& r, double x,
                        const Action& a) {
  if (a.u_s + a.u_h < 0.0) {
    fail(ErrorKind::DomainError, "Gamma requires u_s + u_h >= 0");
  }
  if (!(x > 0.0) || !(a.c > 0.0)) {
    fail(ErrorKind::InvalidArgument, "Gamma requires x > 0 and c > 0");
  }
  const double g = config.preferences.gamma;
  const double phi = config.preferences.phi;
  const double kappa = config.ambiguity.kappa;
  const double alpha = config.ambiguity.alpha;
  const double sc = config.endowment.sigma_c;
  const double scale = std::pow(e.delta, 1.0 - g);
  const double v_alpha = alpha * e.v_lower + (1.0 - alpha) * e.v_upper;
  const double weight = (1.0 - g) * v_alpha + 1.0 / phi;
  const double w_lower = (1.0 - g) * e.v_lower + 1.0 / phi;
  const double w_upper = (1.0 - g) * e.v_upper + 1.0 / phi;

  const double u = a.u_s + a.u_h;
  const double loading2 = a.u_s * r.sigma_s2 + a.u_h * r.sigma_h2;
  const double drift =
      -a.c + (1.0 - u) * r.r_f + a.u_s * r.mu_s + a.u_h * r.mu_h;
  const double quad = (u * sc) * (u * sc) + loading2 * loading2 +
                      2.0 * config.rho * u * sc * loading2;

  const double braces =
      utility(a.c, g) - (phi * scale * v_alpha + utility(e.delta, g)) +
      drift * weight * scale +
      u * sc * (-alpha * kappa * w_lower + (1.0 - alpha) * kappa * w_upper) *
          scale -
      0.5 * quad * g * weight * scale;
  return std::pow(x, 1.0 - g) * braces;
}

Action equilibrium_action(const EquilibriumConstants& e, const PricePoint& p) {
  return {e.delta, e.delta * p.phi_s, e.delta * p.phi_h};
}

std::array<double, 3> gamma_gradient(const ModelConfig& config,
                                     const EquilibriumConstants& e,
                                     const ConditionalReturns& r,
                                     const Action& a) {
  const double norm = std::pow(e.delta, -config.preferences.gamma);
  std::array<double, 3> grad{};
  for (int j = 0; j < 3; ++j) {
    const double h = step_for(component(a, j));
    const double up = gamma_functional(config, e, r, 1.0, shifted(a, j, h));
    const double dn = gamma_functional(config, e, r, 1.0, shifted(a, j, -h));
    grad[j] = (up - dn) / (2.0 * h) / norm;
  }
  return grad;
}

std::array<double, 3> foc_residual(const ModelConfig& config,
                                   const EquilibriumConstants& e,
                                   const PriceSolution& solution,
                                   double omega) {
  const PricePoint p = evaluate(solution, omega);
  const ConditionalReturns r = conditional_returns(config, e, p);
  return gamma_gradient(config, e, r, equilibrium_action(e, p));
}

std::array<std::array<double, 3>, 3> gamma_hessian(
    const ModelConfig& config, const EquilibriumConstants& e,
    const ConditionalReturns& r, const Action& a) {
  // Larger step than the gradient: second differences lose twice the digits.
  constexpr double kHessianStep = 1e-4;
  std::array<double, 3> h{};
  for (int j = 0; j < 3; ++j) {
    h[j] = kHessianStep * std::max(std::abs(component(a, j)), kStepFloor);
  }
  auto f = [&](const Action& b) {
    return gamma_functional(config, e, r, 1.0, b);
  };
  std::array<std::array<double, 3>, 3> hess{};
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      double v = 0.0;
      if (i == j) {
        v = (f(shifted(a, i, h[i])) - 2.0 * f(a) + f(shifted(a, i, -h[i]))) /
            (h[i] * h[i]);
      } else {
        const Action pp = shifted(shifted(a, i, h[i]), j, h[j]);
        const Action pm = shifted(shifted(a, i, h[i]), j, -h[j]);
        const Action mp = shifted(shifted(a, i, -h[i]), j, h[j]);
        const Action mm = shifted(shifted(a, i, -h[i]), j, -h[j]);
        v = (f(pp) - f(pm) - f(mp) + f(mm)) / (4.0 * h[i] * h[j]);
      }
      hess[i][j] = v;
      hess[j][i] = v;
    }
  }
  return hess;
}

}  // namespace ameu
