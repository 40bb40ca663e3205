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

#ifndef AMEU_CALIBRATION_HPP
#define AMEU_CALIBRATION_HPP

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ameu/moments.hpp"
#include "ameu/params.hpp"

namespace ameu {

struct AnnualSeries {
  std::vector<int> year;
  std::vector<double> nominal_consumption;
  std::vector<double> pce_index;
  std::vector<double> population;
  std::vector<double> corporate_earnings;

  std::size_t size() const noexcept { return year.size(); }
};

/// Header: year,nominal_consumption,pce_index,population,corporate_earnings.
/// Throws ParseError, GapError (non-consecutive years) or NonpositiveError.
AnnualSeries parse_csv(std::istream& in);
AnnualSeries ingest_csv(const std::filesystem::path& path);

struct DerivedSeries {
  std::vector<int> year;
  std::vector<double> real_pc_consumption;
  std::vector<double> log_growth;  // size() - 1 entries
  std::vector<double> omega;
};

/// omega = payout * earnings / consumption. Throws DomainError when omega
/// leaves (0, 1).
DerivedSeries derive_series(const AnnualSeries& series, double payout = 0.5);

enum class DriftConvention {
  // mu_c = mean log growth + sigma_c^2 / 2
  kArithmetic,
  // mu_c = mean log growth
  kLogGrowth,
};

struct EndowmentEstimate {
  double mu_c = 0.0;
  double sigma_c = 0.0;
  std::size_t n_obs = 0;
};

/// Sample moments of annual log growth. Throws InsufficientData below two
/// observations.
EndowmentEstimate estimate_endowment(
    std::span<const double> log_growth,
    DriftConvention convention = DriftConvention::kArithmetic);
EndowmentEstimate estimate_endowment(
    const DerivedSeries& series,
    DriftConvention convention = DriftConvention::kArithmetic);

struct ShareEstimate {
  double lambda = 0.0;
  double omega_bar = 0.0;
  double nu = 0.0;
  double rho = 0.0;
  double log_likelihood = 0.0;
  int converged_starts = 0;
};

/// Euler pseudo-likelihood over (lambda, omega_bar, nu) by Nelder-Mead from
/// eight starting points; rho from the correlation of standardised share
/// residuals with standardised log-growth innovations. `log_growth[t]` is
/// the growth from observation t to t + 1. Throws InsufficientData below
/// ten observations and OptimizerDiverged when no start converges or
/// omega_bar leaves the sample range.
ShareEstimate estimate_share_dynamics(std::span<const double> omega,
                                      std::span<const double> log_growth,
                                      double dt = 1.0);
ShareEstimate estimate_share_dynamics(const DerivedSeries& series);

struct KappaEstimate {
  double half_width = 0.0;  // 1.96 sigma_c / sqrt(T), drift units
  double kappa = 0.0;       // half width per unit of sigma_c
};

KappaEstimate kappa_from_stderr(double sigma_c, double t_years);

struct CalibrationTargets {
  double premium = 0.039;
  double pd = 21.1;
  std::optional<double> rf;
  std::optional<double> vol;
};

struct PreferenceMatch {
  double gamma = 0.0;
  double phi = 0.0;
  double delta = 0.0;
  double premium_residual = 0.0;  // relative
  double pd_residual = 0.0;       // relative
  int iterations = 0;
  std::string method;
};

/// Solves approx_premium = premium target and approx_log_pd = pd target for
/// (gamma, phi) at fixed theta, holding the endowment, share dynamics and
/// rho of `base`. Damped Newton first, nested bisection as fallback. Throws
/// NoRoot with bracket diagnostics.
PreferenceMatch match_preferences(const CalibrationTargets& targets,
                                  double theta, const ModelConfig& base,
                                  const ShareMoments& moments);

}  // namespace ameu

#endif  // AMEU_CALIBRATION_HPP
