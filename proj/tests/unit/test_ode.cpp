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
#include <memory>
#include <vector>

#include "ameu/equilibrium.hpp"
#include "ameu/error.hpp"
#include "ameu/ode.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ameu;

std::shared_ptr<MeanRevertingQuadratic> baseline_share() {
  return std::make_shared<MeanRevertingQuadratic>(oracle::kLambda, oracle::kOmegaBar,
                                                  oracle::kNu);
}

double max_rel_error_vs_linear(const PriceSolution& s, double lambda, double wbar) {
  double err = 0.0;
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    const double ref = oracle::linear_phi_s(lambda, wbar, s.delta, s.grid[i]);
    err = std::max(err, std::abs(s.phi_s[i] - ref) / ref);
  }
  return err;
}

TEST(ClosedForm, BaselineValue) {
  EXPECT_NEAR(closed_form_phi_s(0.2232, 0.0662, 0.0984, 0.0662), 0.6728, 5e-5);
  for (double w : {0.01, 0.3, 0.9}) {
    EXPECT_NEAR(closed_form_phi_s(0.2232, 0.0662, 0.0984, w),
                oracle::linear_phi_s(0.2232, 0.0662, 0.0984, w), 1e-14);
    EXPECT_NEAR(closed_form_phi_h(0.2232, 0.0662, 0.0984, w),
                oracle::linear_phi_h(0.2232, 0.0662, 0.0984, w), 1e-14);
  }
}

TEST(ClosedForm, LowerLimitPositive) {
  const double v = closed_form_phi_s(0.2232, 0.0662, 0.0984, 1e-12);
  EXPECT_NEAR(v, 0.2232 * 0.0662 / (0.0984 * (0.2232 + 0.0984)), 1e-11);
  EXPECT_GT(v, 0.0);
}

TEST(ClosedForm, ElasticityAtMeanWithEqualRates) {
  const double wbar = 0.0662;
  EXPECT_NEAR(closed_form_elasticity(0.3, wbar, 0.3, wbar), 1.0 / (2.0 * wbar), 1e-12);
}

TEST(Solver, MatchesClosedFormAtLogUtility) {
  const ModelConfig c = table1_config(1.0, 0.5);
  const auto e = build_equilibrium(c);
  const auto s = solve_prices(c, e);
  EXPECT_LT(max_rel_error_vs_linear(s, oracle::kLambda, oracle::kOmegaBar), 1e-8);
  for (std::size_t i = 0; i < s.grid.size(); i += 97) {
    EXPECT_NEAR(s.phi_h[i],
                oracle::linear_phi_h(oracle::kLambda, oracle::kOmegaBar, s.delta, s.grid[i]),
                1e-8);
  }
}

TEST(Solver, MatchesClosedFormWithZeroCorrelation) {
  ModelConfig c = table1_config(5.0, 0.5);
  c.rho = 0.0;
  const auto e = build_equilibrium(c);
  const auto s = solve_prices(c, e);
  EXPECT_LT(max_rel_error_vs_linear(s, oracle::kLambda, oracle::kOmegaBar), 1e-8);
}

TEST(Solver, MyopicLimitAtLargeDelta) {
  const double lambda = 1e-3;
  auto share = std::make_shared<MeanRevertingQuadratic>(lambda, 0.3, 0.2);
  const Grid g(2000);
  const auto s = solve_phi_s(share, 0.0, 1e3, g);
  for (std::size_t i = 0; i < g.size(); i += 111) {
    const double w = g[i];
    EXPECT_NEAR(s.phi_s[i], oracle::linear_phi_s(lambda, 0.3, 1e3, w), 1e-12);
    // phi_s = w / delta + o(1 / delta).
    EXPECT_LT(std::abs(s.phi_s[i] - w / 1e3) * 1e3, 1e-5);
  }
}

TEST(Solver, CompletesHumanCapitalRatio) {
  const ModelConfig c = table1_config(5.0, 0.5);
  const auto e = build_equilibrium(c);
  const auto s = solve_prices(c, e);
  ASSERT_EQ(s.phi_h.size(), s.phi_s.size());
  for (std::size_t i = 0; i < s.grid.size(); ++i) {
    EXPECT_DOUBLE_EQ(s.phi_s[i] + s.phi_h[i], 1.0 / e.delta);
  }
  EXPECT_LT(s.residual_s, 1e-8);
  EXPECT_LT(s.residual_h, 1e-8);
}

TEST(Solver, BoundsAndMonotonicity) {
  for (double gamma : {0.5, 1.0, 5.0, 10.0}) {
    const ModelConfig c = table1_config(gamma, 0.5);
    const auto e = build_equilibrium(c);
    const auto s = solve_prices(c, e);
    const double top = 1.0 / e.delta;
    for (std::size_t i = 0; i < s.grid.size(); ++i) {
      ASSERT_GT(s.phi_s[i], 0.0);
      ASSERT_LT(s.phi_s[i], top);
      ASSERT_GT(s.phi_h[i], 0.0);
      ASSERT_LT(s.phi_h[i], top);
    }
    EXPECT_TRUE(oracle::strictly_increasing(s.phi_s)) << "gamma " << gamma;
    EXPECT_TRUE(oracle::strictly_decreasing(s.phi_h)) << "gamma " << gamma;
  }
}

TEST(Solver, DecreasingInDelta) {
  auto share = baseline_share();
  const Grid g(2000);
  const double k = (1.0 - 5.0) * oracle::kRho * oracle::kSigmaC;
  std::vector<PriceSolution> sols;
  for (double d : {0.09, 0.15, 0.3}) sols.push_back(solve_phi_s(share, k, d, g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_GT(sols[0].phi_s[i], sols[1].phi_s[i]);
    EXPECT_GT(sols[1].phi_s[i], sols[2].phi_s[i]);
  }
}

TEST(Solver, IncreasingInCrossCoefficient) {
  auto share = baseline_share();
  const Grid g(2000);
  std::vector<PriceSolution> sols;
  for (double k : {-0.3, 0.0, 0.3}) sols.push_back(solve_phi_s(share, k, 0.15, g));
  for (std::size_t i = 0; i < g.size(); ++i) {
    EXPECT_LT(sols[0].phi_s[i], sols[1].phi_s[i]) << i;
    EXPECT_LT(sols[1].phi_s[i], sols[2].phi_s[i]) << i;
  }
}

TEST(Solver, DependsOnPreferencesOnlyThroughCrossCoefficient) {
  // (1 - 5) * 0.4 == (1 - 3) * 0.8.
  ModelConfig a = table1_config(5.0, 0.5);
  a.rho = 0.4;
  ModelConfig b = table1_config(3.0, 0.5);
  b.rho = 0.8;
  ASSERT_DOUBLE_EQ(a.cross_coefficient(), b.cross_coefficient());
  EquilibriumConstants e;
  e.delta = 0.12;
  const Grid g(1000);
  const auto sa = solve_phi_s(a, e, g);
  const auto sb = solve_phi_s(b, e, g);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(sa.phi_s[i], sb.phi_s[i]);
}

TEST(Solver, SelfConvergenceInGeneralCase) {
  const ModelConfig c = table1_config(5.0, 0.5);
  const auto e = build_equilibrium(c);
  const auto ref = solve_prices(c, e, {16383});
  auto err = [&](std::size_t n) {
    const auto s = solve_prices(c, e, {n});
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ref.grid.interpolate(ref.phi_s, s.grid[i]);
      m = std::max(m, std::abs(s.phi_s[i] - r) / r);
    }
    return m;
  };
  const double e1 = err(511);
  const double e2 = err(1023);
  const double e3 = err(2047);
  EXPECT_LT(e3, e2);
  EXPECT_LT(e2, e1);
  EXPECT_GT(e1 / e2, 2.0);
  EXPECT_GT(e2 / e3, 2.0);
}

TEST(Elasticity, ClosedFormCaseMatches) {
  const ModelConfig c = table1_config(1.0, 0.5);
  const auto e = build_equilibrium(c);
  const auto s = solve_prices(c, e);
  for (double w : {0.01, 0.0662, 0.2, 0.5, 0.9}) {
    EXPECT_NEAR(elasticity(s, w),
                oracle::linear_elasticity(oracle::kLambda, oracle::kOmegaBar, e.delta, w),
                1e-6 * oracle::linear_elasticity(oracle::kLambda, oracle::kOmegaBar, e.delta, w));
  }
}

TEST(Elasticity, DecreasingInShare) {
  const ModelConfig c = table1_config(1.0, 0.5);
  const auto s = solve_prices(c, build_equilibrium(c));
  EXPECT_TRUE(oracle::strictly_decreasing(elasticity_values(s)));
}

TEST(Elasticity, IncreasingInDelta) {
  auto share = baseline_share();
  const Grid g(2000);
  for (double w : {0.02, 0.0662, 0.3, 0.8}) {
    std::vector<double> el;
    for (double d : {0.08, 0.0984, 0.11, 0.22, 0.33}) {
      el.push_back(elasticity(solve_phi_s(share, 0.0, d, g), w));
    }
    EXPECT_TRUE(oracle::strictly_increasing(el)) << "omega " << w;
  }
}

TEST(Elasticity, OutOfRange) {
  const ModelConfig c = table1_config(1.0, 0.5);
  const auto s = solve_prices(c, build_equilibrium(c), {100});
  try {
    elasticity(s, 0.001);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfRange);
  }
}

TEST(Evaluate, InterpolatesStoredValues) {
  const ModelConfig c = table1_config(5.0, 0.5);
  const auto s = solve_prices(c, build_equilibrium(c));
  const auto p = evaluate(s, s.grid[700]);
  EXPECT_DOUBLE_EQ(p.phi_s, s.phi_s[700]);
  EXPECT_DOUBLE_EQ(p.phi_h, s.phi_h[700]);
  EXPECT_DOUBLE_EQ(p.d_phi_s, s.d_phi_s[700]);
}

}  // namespace
