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

#include <cmath>
#include <numeric>
#include <vector>

#include "ameu/equilibrium.hpp"
#include "ameu/error.hpp"
#include "ameu/moments.hpp"
#include "ameu/returns.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ameu;

constexpr std::size_t kN = 2000;

struct Pipeline {
  ModelConfig config;
  EquilibriumConstants eq;
  PriceSolution sol;
  StationaryDensity density;
  UnconditionalMoments moments;
};

Pipeline run(ModelConfig c, double theta) {
  Pipeline p;
  p.config = std::move(c);
  p.eq = equilibrium_for_theta(p.config, theta);
  p.sol = solve_prices(p.config, p.eq, {kN});
  p.density = stationary_density(p.config.share, Grid(kN));
  p.moments = unconditional_moments(p.config, p.eq, p.sol, p.density);
  return p;
}

TEST(Unconditional, ZeroCorrelationPremiumExact) {
  ModelConfig c = table1_config(5.0, 0.5);
  c.rho = 0.0;
  const auto p = run(c, -0.1);
  const double sc = oracle::kSigmaC;
  EXPECT_NEAR(p.moments.premium, 5.0 * sc * sc + 0.1 * sc, 1e-10);
  EXPECT_EQ(p.moments.r_f, p.eq.r_f);
}

TEST(Unconditional, LogUtilityVolatilityByQuadrature) {
  const auto p = run(table1_config(1.0, 0.5), 0.0);
  const Grid& g = p.density.grid;
  std::vector<double> v(g.size());
  const double sc = oracle::kSigmaC;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double w = g[i];
    const double x =
        oracle::kNu * w * (1.0 - w) *
        oracle::linear_elasticity(oracle::kLambda, oracle::kOmegaBar, p.eq.delta, w);
    v[i] = (sc * sc + x * x + 2.0 * oracle::kRho * sc * x) * p.density.p[i];
  }
  EXPECT_NEAR(p.moments.vol * p.moments.vol, trapezoid(g, v), 1e-10);
  EXPECT_GE(p.moments.vol, 0.0);
  EXPECT_GT(p.moments.pd, 0.0);
  EXPECT_GE(p.moments.sd_log_pd, 0.0);
  EXPECT_LT(p.moments.tail_mass, 1e-3);
}

TEST(Unconditional, LogVarianceIgnoresPriceScale) {
  auto p = run(table1_config(5.0, 0.5), 0.0);
  PriceSolution scaled = p.sol;
  for (std::size_t i = 0; i < scaled.phi_s.size(); ++i) {
    scaled.phi_s[i] *= 2.0;
    scaled.d_phi_s[i] *= 2.0;
    scaled.d2_phi_s[i] *= 2.0;
  }
  const auto m = unconditional_moments(p.config, p.eq, scaled, p.density);
  EXPECT_NEAR(m.sd_log_pd, p.moments.sd_log_pd, 1e-12);
  EXPECT_NEAR(m.pd, 2.0 * p.moments.pd, 1e-9 * p.moments.pd);
}

TEST(Unconditional, PremiumDecreasingInTheta) {
  for (double gamma : {1.0, 5.0, 10.0}) {
    std::vector<double> prem;
    for (double th : {-0.2, 0.0, 0.2}) {
      prem.push_back(run(table1_config(gamma, 0.5), th).moments.premium);
    }
    EXPECT_TRUE(oracle::strictly_decreasing(prem)) << "gamma " << gamma;
  }
}

TEST(Unconditional, GridMismatch) {
  const ModelConfig c = table1_config(1.0, 0.5);
  const auto e = build_equilibrium(c);
  const auto s = solve_prices(c, e, {500});
  const auto d = stationary_density(c.share, Grid(600));
  try {
    unconditional_moments(c, e, s, d);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.kind(), ErrorKind::GridMismatch);
  }
}

TEST(Unconditional, AgreesWithErgodicTimeAverages) {
  const auto p = run(table1_config(5.0, 0.5), 0.0);
  ErgodicSampleOptions o;
  o.total_years = 20000.0;
  o.n_paths = 20;
  o.seed = 31;
  const auto sample = ergodic_sample(*p.config.share, o);
  const std::size_t per = sample.omega.size() / o.n_paths;
  std::vector<double> prem, vol2, lpd;
  for (std::size_t b = 0; b < o.n_paths; ++b) {
    double sp = 0.0, sv = 0.0, sl = 0.0;
    for (std::size_t i = 0; i < per; ++i) {
      const double w = sample.omega[b * per + i];
      const auto r = conditional_returns(p.config, p.eq, p.sol, w);
      sp += r.premium;
      sv += r.vol_norm * r.vol_norm;
      sl += std::log(r.pd_ratio);
    }
    prem.push_back(sp / per);
    vol2.push_back(sv / per);
    lpd.push_back(sl / per);
  }
  auto check = [](const std::vector<double>& v, double target) {
    const double n = static_cast<double>(v.size());
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    const double se = std::sqrt(ss / (n - 1.0) / n);
    EXPECT_LT(std::abs(m - target), 3.0 * se) << m << " vs " << target;
  };
  check(prem, p.moments.premium);
  check(vol2, p.moments.vol * p.moments.vol);
  check(lpd, std::log(p.moments.pd));
}

TEST(ShareMomentsTest, LinearDriftMean) {
  const auto d = stationary_density(table1_config(1.0, 0.5).share, Grid(kN));
  const auto m = share_moments(d);
  EXPECT_NEAR(m.mean, oracle::kOmegaBar, 1e-6);
  EXPECT_GT(m.w_one_minus, m.w2_one_minus);
  EXPECT_GT(m.w2_one_minus, 0.0);
}

TEST(Approximations, ZeroCorrelationPremiumExact) {
  ModelConfig c = table1_config(5.0, 0.5);
  c.rho = 0.0;
  const auto e = equilibrium_for_theta(c, -0.2);
  const auto m = share_moments(stationary_density(c.share, Grid(kN)));
  const double sc = oracle::kSigmaC;
  EXPECT_NEAR(approx_premium(c, e, m), 5.0 * sc * sc + 0.2 * sc, 1e-15);
}

TEST(Approximations, DisplayedCalibrationPremium) {
  // Displayed (gamma, phi) are rounded; phi +- 0.005 moves delta by ~10%.
  ModelConfig c = table1_config(35.53, 0.5);
  c.preferences.phi = -0.25;
  const auto e = equilibrium_for_theta(c, 0.0);
  const auto m = share_moments(stationary_density(c.share, Grid(kN)));
  EXPECT_NEAR(approx_premium(c, e, m), 0.039, 0.002);
}

TEST(Approximations, PriceDividendAtReversionLevel) {
  const ModelConfig c = table1_config(1.0, 0.5);
  const auto e = build_equilibrium(c);
  EXPECT_DOUBLE_EQ(approx_log_pd(c, e, oracle::kOmegaBar), 1.0 / e.delta);
  EXPECT_NEAR(approx_log_pd(c, e, oracle::kOmegaBar), 10.163, 5e-4);
}

TEST(Approximations, RequireQuadraticDynamics) {
  ModelConfig c = table1_config(1.0, 0.5);
  c.share = std::make_shared<PolynomialDynamics>(std::vector<double>{0.1, -0.2},
                                                 std::vector<double>{0.0, 0.3, -0.3});
  EXPECT_THROW(require_quadratic(c), Error);
}

}  // namespace
