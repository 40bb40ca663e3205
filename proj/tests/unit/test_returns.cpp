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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ameu/equilibrium.hpp"
#include "ameu/error.hpp"
#include "ameu/ode.hpp"
#include "ameu/returns.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ameu;

struct Fixture {
  ModelConfig config;
  EquilibriumConstants eq;
  PriceSolution sol;
};

Fixture make(double gamma, double alpha = 0.5, double rho = oracle::kRho) {
  Fixture f;
  f.config = table1_config(gamma, alpha);
  f.config.rho = rho;
  f.eq = build_equilibrium(f.config);
  f.sol = solve_prices(f.config, f.eq);
  return f;
}

double max_abs(const std::array<double, 3>& g) {
  return std::max({std::abs(g[0]), std::abs(g[1]), std::abs(g[2])});
}

TEST(ConditionalReturns, LoadingsAndPremiumFormula) {
  const Fixture f = make(5.0);
  const double sc = oracle::kSigmaC;
  for (double w : {0.02, 0.0662, 0.4, 0.85}) {
    const auto r = conditional_returns(f.config, f.eq, f.sol, w);
    EXPECT_EQ(r.sigma_s1, sc);
    EXPECT_EQ(r.sigma_h1, sc);
    const double sw = oracle::kNu * w * (1.0 - w);
    const double el = elasticity(f.sol, w);
    const double premium = 5.0 * sc * sc + 5.0 * oracle::kRho * sc * sw * el -
                           sc * f.eq.theta_star;
    EXPECT_NEAR(r.premium, premium, 1e-6 * std::abs(premium));
    const double vol = std::sqrt(sc * sc + 2.0 * oracle::kRho * sc * sw * el +
                                 sw * sw * el * el);
    EXPECT_NEAR(r.vol_norm, vol, 1e-6 * vol);
    EXPECT_GE(r.vol_norm, sc * std::sqrt(1.0 - oracle::kRho * oracle::kRho));
    EXPECT_NEAR(r.pd_ratio, evaluate(f.sol, w).phi_s / w, 1e-12 * r.pd_ratio);
    EXPECT_EQ(r.r_f, f.eq.r_f);
  }
}

TEST(ConditionalReturns, ZeroCorrelationPremiumIsFlat) {
  const Fixture f = make(5.0, 0.7, 0.0);
  const double expected =
      5.0 * oracle::kSigmaC * oracle::kSigmaC - oracle::kSigmaC * f.eq.theta_star;
  for (double w : oracle::linspace(0.01, 0.99, 25)) {
    EXPECT_NEAR(conditional_returns(f.config, f.eq, f.sol, w).premium, expected, 1e-12);
  }
}

TEST(ConditionalReturns, ClosedFormPremium) {
  const Fixture f = make(1.0);
  const double sc = oracle::kSigmaC;
  for (double w : {0.01, 0.0662, 0.5, 0.95}) {
    const double expected =
        sc * sc +
        oracle::kRho * sc * oracle::kNu * w * (1.0 - w) *
            oracle::linear_elasticity(oracle::kLambda, oracle::kOmegaBar, f.eq.delta, w) -
        sc * f.eq.theta_star;
    EXPECT_NEAR(conditional_returns(f.config, f.eq, f.sol, w).premium, expected, 1e-9);
  }
}

TEST(ConditionalReturns, LogUtilityVolatilityIgnoresTheta) {
  const ModelConfig c = table1_config(1.0, 0.5);
  std::vector<double> vols;
  for (double th : {-0.2, -0.05, 0.0, 0.1, 0.2}) {
    const auto e = equilibrium_for_theta(c, th);
    const auto s = solve_prices(c, e);
    vols.push_back(conditional_returns(c, e, s, 0.3).vol_norm);
  }
  for (double v : vols) EXPECT_DOUBLE_EQ(v, vols.front());
}

TEST(ConditionalReturns, PremiumDecreasingInThetaWithoutInteraction) {
  for (const auto& [gamma, rho] : {std::pair{1.0, oracle::kRho}, std::pair{5.0, 0.0}}) {
    ModelConfig c = table1_config(gamma, 0.5);
    c.rho = rho;
    for (double w : {0.05, 0.3, 0.7}) {
      std::vector<double> prem;
      for (double th : oracle::linspace(-0.2, 0.2, 11)) {
        const auto e = equilibrium_for_theta(c, th);
        prem.push_back(conditional_returns(c, e, solve_prices(c, e), w).premium);
      }
      EXPECT_TRUE(oracle::strictly_decreasing(prem)) << gamma << " " << w;
    }
  }
}

TEST(ConditionalReturns, ClosedFormVolatilityUnimodal) {
  const Fixture f = make(1.0, 0.5, 0.0);
  std::vector<double> vol;
  for (double w : oracle::linspace(0.005, 0.995, 199)) {
    vol.push_back(conditional_returns(f.config, f.eq, f.sol, w).vol_norm);
  }
  EXPECT_EQ(oracle::direction_changes(vol), 1);
  EXPECT_GT(vol[1], vol[0]);
  EXPECT_LT(vol.back(), vol[vol.size() - 2]);
}

TEST(ConditionalReturns, ClosedFormPriceDividendDecreasing) {
  const Fixture f = make(1.0);
  std::vector<double> pd;
  for (double w : oracle::linspace(0.005, 0.995, 199)) {
    pd.push_back(conditional_returns(f.config, f.eq, f.sol, w).pd_ratio);
  }
  EXPECT_TRUE(oracle::strictly_decreasing(pd));
}

TEST(GammaFunctional, Homogeneity) {
  const Fixture f = make(5.0);
  const auto pt = evaluate(f.sol, 0.2);
  const auto r = conditional_returns(f.config, f.eq, pt);
  const Action a{0.15, 2.0, 7.0};
  const double g1 = gamma_functional(f.config, f.eq, r, 1.0, a);
  const double g2 = gamma_functional(f.config, f.eq, r, 2.0, a);
  EXPECT_NEAR(g2, std::pow(2.0, 1.0 - 5.0) * g1, 1e-12 * std::abs(g1));
}

TEST(GammaFunctional, DomainChecks) {
  const Fixture f = make(5.0);
  const auto r = conditional_returns(f.config, f.eq, f.sol, 0.2);
  try {
    gamma_functional(f.config, f.eq, r, 1.0, Action{0.1, -2.0, 1.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DomainError);
  }
  EXPECT_THROW(gamma_functional(f.config, f.eq, r, 0.0, Action{0.1, 1.0, 1.0}), Error);
}

TEST(GammaFunctional, StrictlyConcaveInAction) {
  for (double gamma : {1.0, 5.0}) {
    const Fixture f = make(gamma);
    const auto r = conditional_returns(f.config, f.eq, f.sol, 0.1);
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(0.05, 0.4);
    std::uniform_real_distribution<double> u(0.0, 6.0);
    for (int k = 0; k < 5; ++k) {
      const Action a{c(rng), u(rng), u(rng)};
      const auto h = gamma_hessian(f.config, f.eq, r, a);
      // Sylvester's criterion on -H.
      const double m1 = -h[0][0];
      const double m2 = h[0][0] * h[1][1] - h[0][1] * h[1][0];
      const double m3 = -(h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                          h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                          h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]));
      EXPECT_GT(m1, 0.0);
      EXPECT_GT(m2, 0.0);
      EXPECT_GT(m3, 0.0);
    }
  }
}

TEST(Foc, LogUtilityAtLongRunMean) {
  const Fixture f = make(1.0);
  EXPECT_LT(max_abs(foc_residual(f.config, f.eq, f.sol, oracle::kOmegaBar)), 1e-6);
}

TEST(Foc, GeneralCaseProbePoints) {
  const Fixture f = make(5.0);
  for (double w : oracle::linspace(0.05, 0.95, 11)) {
    EXPECT_LT(max_abs(foc_residual(f.config, f.eq, f.sol, w)), 1e-6) << w;
  }
}

TEST(Foc, CorruptedSolutionDetected) {
  const Fixture f = make(5.0);
  PriceSolution bad = f.sol;
  for (std::size_t i = 0; i < bad.phi_s.size(); ++i) {
    bad.phi_s[i] *= 1.05;
    bad.d_phi_s[i] *= 1.05;
    bad.d2_phi_s[i] *= 1.05;
    bad.phi_h[i] = 1.0 / bad.delta - bad.phi_s[i];
  }
  const auto g = foc_residual(f.config, f.eq, bad, oracle::kOmegaBar);
  EXPECT_GT(std::abs(g[1]), 1e-3);
}

TEST(Foc, ShrinksWithGridRefinement) {
  const ModelConfig c = table1_config(5.0, 0.5);
  const auto e = build_equilibrium(c);
  const auto coarse = solve_prices(c, e, {63});
  const auto fine = solve_prices(c, e, {2047});
  const double w = 0.3;
  EXPECT_LE(max_abs(foc_residual(c, e, fine, w)),
            max_abs(foc_residual(c, e, coarse, w)) + 1e-9);
}

}  // namespace
