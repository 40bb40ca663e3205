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
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "ameu/calibration.hpp"
#include "ameu/equilibrium.hpp"
#include "ameu/error.hpp"
#include "ameu/moments.hpp"
#include "ameu/ode.hpp"
#include "ameu/stochastic.hpp"
#include "support/oracles.hpp"

namespace {

using namespace ameu;

const std::string kFixtures = AMEU_FIXTURE_DIR;

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvalidArgument;
}

struct Synthetic {
  std::vector<double> omega;
  std::vector<double> log_growth;
};

Synthetic simulate_annual(double years, std::uint64_t seed) {
  const ModelConfig c = table1_config(1.0, 0.5);
  SimulationOptions o;
  o.horizon = years;
  o.seed = seed;
  o.record_every = 252;
  o.omega0 = oracle::kOmegaBar;
  const auto b = simulate_paths(c, 0.0, o);
  Synthetic s;
  s.omega = b.omega_paths[0];
  const auto& lc = b.log_c_paths[0];
  for (std::size_t i = 1; i < lc.size(); ++i) s.log_growth.push_back(lc[i] - lc[i - 1]);
  return s;
}

TEST(Ingest, SyntheticFixture) {
  const auto s = ingest_csv(kFixtures + "/synthetic_macro.csv");
  ASSERT_EQ(s.size(), 90u);
  EXPECT_EQ(s.year.front(), 1933);
  EXPECT_EQ(s.year.back(), 2022);
}

TEST(Ingest, MissingYear) {
  EXPECT_EQ(kind_of([] { ingest_csv(kFixtures + "/gap_year.csv"); }), ErrorKind::GapError);
}

TEST(Ingest, NegativeEarnings) {
  EXPECT_EQ(kind_of([] { ingest_csv(kFixtures + "/negative_earnings.csv"); }),
            ErrorKind::NonpositiveError);
}

TEST(Ingest, MalformedInput) {
  std::istringstream wrong_header("year,consumption\n1933,1\n");
  EXPECT_EQ(kind_of([&] { parse_csv(wrong_header); }), ErrorKind::ParseError);
  std::istringstream short_row(
      "year,nominal_consumption,pce_index,population,corporate_earnings\n1933,1,2\n");
  EXPECT_EQ(kind_of([&] { parse_csv(short_row); }), ErrorKind::ParseError);
  std::istringstream junk(
      "year,nominal_consumption,pce_index,population,corporate_earnings\n1933,a,1,1,1\n");
  EXPECT_EQ(kind_of([&] { parse_csv(junk); }), ErrorKind::ParseError);
  EXPECT_EQ(kind_of([] { ingest_csv(kFixtures + "/does_not_exist.csv"); }),
            ErrorKind::ParseError);
}

TEST(Derive, ShareAndGrowth) {
  std::istringstream in(
      "year,nominal_consumption,pce_index,population,corporate_earnings\n"
      "2000,1000,100,10,100\n"
      "2001,1100,105,10,120\n");
  const auto d = derive_series(parse_csv(in));
  ASSERT_EQ(d.omega.size(), 2u);
  ASSERT_EQ(d.log_growth.size(), 1u);
  EXPECT_DOUBLE_EQ(d.omega[0], 0.05);
  EXPECT_NEAR(d.omega[1], 0.5 * 120.0 / 1100.0, 1e-15);
  EXPECT_NEAR(d.log_growth[0], std::log((1100.0 / 105.0 / 10.0) / (1000.0 / 100.0 / 10.0)),
              1e-14);
}

TEST(Derive, ShareOutsideUnitInterval) {
  std::istringstream in(
      "year,nominal_consumption,pce_index,population,corporate_earnings\n"
      "2000,100,100,10,300\n");
  const auto s = parse_csv(in);
  EXPECT_EQ(kind_of([&] { derive_series(s); }), ErrorKind::DomainError);
}

TEST(Endowment, Conventions) {
  const std::vector<double> g{0.01, 0.03, 0.02, 0.04};
  const auto a = estimate_endowment(g);
  const auto l = estimate_endowment(g, DriftConvention::kLogGrowth);
  EXPECT_NEAR(l.mu_c, 0.025, 1e-15);
  EXPECT_NEAR(a.sigma_c, std::sqrt(0.0005 / 3.0), 1e-15);
  EXPECT_NEAR(a.mu_c, 0.025 + 0.5 * a.sigma_c * a.sigma_c, 1e-15);
  EXPECT_EQ(a.n_obs, 4u);
}

TEST(Endowment, ConstantConsumptionFailsDownstream) {
  const std::vector<double> g(20, 0.0);
  const auto e = estimate_endowment(g);
  EXPECT_EQ(e.sigma_c, 0.0);
  ModelConfig c = table1_config(5.0, 0.5);
  c.endowment = {e.mu_c, e.sigma_c};
  EXPECT_THROW(check_invariants(c), Error);
}

TEST(Endowment, InsufficientData) {
  const std::vector<double> g{0.01};
  EXPECT_EQ(kind_of([&] { estimate_endowment(g); }), ErrorKind::InsufficientData);
}

TEST(Endowment, FixtureRoundTrip) {
  const auto d = derive_series(ingest_csv(kFixtures + "/synthetic_macro.csv"));
  const auto e = estimate_endowment(d);
  // 89 annual observations: sampling SE of the mean is sigma / sqrt(89).
  EXPECT_NEAR(e.mu_c, oracle::kMuC, 4.0 * oracle::kSigmaC / std::sqrt(89.0));
  EXPECT_NEAR(e.sigma_c, oracle::kSigmaC, 4.0 * oracle::kSigmaC / std::sqrt(2.0 * 88.0));
}

TEST(ShareDynamics, InsufficientData) {
  const std::vector<double> w(9, 0.1);
  const std::vector<double> g(8, 0.01);
  EXPECT_EQ(kind_of([&] { estimate_share_dynamics(w, g); }), ErrorKind::InsufficientData);
}

TEST(ShareDynamics, ReversionLevelInsideSample) {
  const auto s = simulate_annual(300.0, 12);
  const auto e = estimate_share_dynamics(s.omega, s.log_growth);
  const auto [lo, hi] = std::minmax_element(s.omega.begin(), s.omega.end());
  EXPECT_GT(e.omega_bar, *lo);
  EXPECT_LT(e.omega_bar, *hi);
  EXPECT_GE(e.converged_starts, 1);
  EXPECT_TRUE(std::isfinite(e.log_likelihood));
}

TEST(ShareDynamics, ConvergesToEulerLimits) {
  // Annual Euler likelihood targets the one-step autoregression, so speed and
  // scale converge to their discretised values.
  const double lam = oracle::kLambda;
  const double lam_euler = 1.0 - std::exp(-lam);
  const double nu_euler = oracle::kNu * std::sqrt((1.0 - std::exp(-2.0 * lam)) / (2.0 * lam));
  auto error = [&](const ShareEstimate& e) {
    return std::abs(e.lambda - lam_euler) / lam_euler +
           std::abs(e.omega_bar - oracle::kOmegaBar) / oracle::kOmegaBar +
           std::abs(e.nu - nu_euler) / nu_euler + std::abs(e.rho - oracle::kRho);
  };
  std::vector<double> err;
  for (double years : {100.0, 1000.0, 10000.0}) {
    const auto s = simulate_annual(years, 40);
    err.push_back(error(estimate_share_dynamics(s.omega, s.log_growth)));
  }
  EXPECT_GT(err[0], err[2]);
  EXPECT_GT(err[1], err[2]);
  EXPECT_LT(err[2], 0.1);
}

TEST(Kappa, HalfWidth) {
  const auto k = kappa_from_stderr(0.0286, 90.0);
  EXPECT_NEAR(k.kappa, 0.207, 5e-4);
  EXPECT_NEAR(k.half_width, 1.96 * 0.0286 / std::sqrt(90.0), 1e-15);
  EXPECT_LT(kappa_from_stderr(0.0286, 1e12).kappa, 1e-5);
  EXPECT_THROW(kappa_from_stderr(0.0286, 0.5), Error);
}

class MatchTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    base_ = new ModelConfig(table1_config(1.0, 0.5));
    moments_ = new ShareMoments(share_moments(stationary_density(base_->share, Grid(2000))));
  }
  static void TearDownTestSuite() {
    delete base_;
    delete moments_;
  }
  static ModelConfig* base_;
  static ShareMoments* moments_;
};

ModelConfig* MatchTest::base_ = nullptr;
ShareMoments* MatchTest::moments_ = nullptr;

TEST_F(MatchTest, RootSatisfiesBothEquations) {
  const auto m = match_preferences({}, 0.0, *base_, *moments_);
  EXPECT_LT(std::abs(m.premium_residual), 1e-10);
  EXPECT_LT(std::abs(m.pd_residual), 1e-10);
  ModelConfig c = *base_;
  c.preferences = {m.phi, m.gamma};
  const auto e = equilibrium_for_theta(c, 0.0);
  EXPECT_NEAR(e.delta, m.delta, 1e-14);
  EXPECT_NEAR(approx_premium(c, e, *moments_), 0.039, 1e-11);
  EXPECT_NEAR(approx_log_pd(c, e, moments_->mean), 21.1, 1e-8);
}

TEST_F(MatchTest, RoundTripsModelGeneratedTargets) {
  for (const auto& [gamma, phi, theta] :
       {std::tuple{8.0, 0.05, -0.1}, std::tuple{25.0, -0.1, 0.0}, std::tuple{3.0, 0.02, -0.15}}) {
    ModelConfig c = *base_;
    c.preferences = {phi, gamma};
    const auto e = equilibrium_for_theta(c, theta);
    CalibrationTargets t;
    t.premium = approx_premium(c, e, *moments_);
    t.pd = approx_log_pd(c, e, moments_->mean);
    const auto m = match_preferences(t, theta, *base_, *moments_);
    EXPECT_NEAR(m.gamma, gamma, 1e-6 * gamma);
    EXPECT_NEAR(m.phi, phi, 1e-6);
  }
}

TEST_F(MatchTest, GammaDecreasesAcrossTableThetas) {
  std::vector<double> gammas;
  for (int k = 0; k <= 12; ++k) {
    gammas.push_back(match_preferences({}, -0.05 * k, *base_, *moments_).gamma);
  }
  // Theta runs from 0 down to -0.6, so gamma falls as theta falls.
  EXPECT_TRUE(oracle::strictly_decreasing(gammas));
}

TEST_F(MatchTest, ApproximatePremiumCloseToExact) {
  for (double theta : {0.0, -0.3, -0.6}) {
    const auto m = match_preferences({}, theta, *base_, *moments_);
    ModelConfig c = *base_;
    c.preferences = {m.phi, m.gamma};
    const auto e = equilibrium_for_theta(c, theta);
    const auto s = solve_prices(c, e);
    const auto d = stationary_density(c.share, Grid(2000));
    const auto u = unconditional_moments(c, e, s, d);
    EXPECT_LT(std::abs(u.premium - 0.039), 0.0015) << theta;
  }
}

TEST_F(MatchTest, UnreachableTargetReportsNoRoot) {
  CalibrationTargets t;
  // At theta = -0.6 the premium cannot fall below -theta sigma_c = 0.0172.
  t.premium = 0.01;
  EXPECT_EQ(kind_of([&] { match_preferences(t, -0.6, *base_, *moments_); }),
            ErrorKind::NoRoot);
  t.premium = 0.039;
  t.pd = -1.0;
  EXPECT_THROW(match_preferences(t, 0.0, *base_, *moments_), Error);
}

}  // namespace
