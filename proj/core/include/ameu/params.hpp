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

#ifndef AMEU_PARAMS_HPP
#define AMEU_PARAMS_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ameu {

/// Aggregate endowment: dC/C = mu_c dt + sigma_c dB1.
struct EndowmentParams {
  double mu_c = 0.0;
  double sigma_c = 0.0;
};

/// Limits of the share coefficients at the two ends of (0, 1).
struct BoundaryLimits {
  double mu_at_0 = 0.0;
  double mu_at_1 = 0.0;
  double sigma_at_0 = 0.0;
  double sigma_at_1 = 0.0;
};

/// Drift and volatility of the dividend-endowment ratio on (0, 1).
///
/// Implementations must be immutable; configs share them by pointer.
class ShareDynamics {
 public:
  virtual ~ShareDynamics() = default;

  virtual double mu(double x) const = 0;
  virtual double sigma(double x) const = 0;
  virtual double mu_prime(double x) const = 0;
  virtual double sigma_prime(double x) const = 0;

  /// Limits as x -> 0 and x -> 1. The default evaluates the coefficient
  /// functions at the endpoints, which is correct for any dynamics that
  /// extend continuously to [0, 1].
  virtual BoundaryLimits boundary_limits() const;

  /// Analytic sup over (0,1) of mu'(x) + k sigma'(x) and of
  /// 2(mu'(x) + k sigma'(x)) + sigma'(x)^2, where k = (1-gamma) rho sigma_c.
  /// Empty when the dynamics offer no closed form; callers then fall back to
  /// grid maximization.
  virtual std::optional<std::pair<double, double>> ellipticity_suprema(
      double k) const;

  virtual std::string name() const = 0;
};

/// mu(x) = lambda (omega_bar - x), sigma(x) = nu x (1 - x).
class MeanRevertingQuadratic final : public ShareDynamics {
 public:
  MeanRevertingQuadratic(double lambda, double omega_bar, double nu);

  double mu(double x) const override { return lambda_ * (omega_bar_ - x); }
  double sigma(double x) const override { return nu_ * x * (1.0 - x); }
  double mu_prime(double) const override { return -lambda_; }
  double sigma_prime(double x) const override { return nu_ * (1.0 - 2.0 * x); }

  BoundaryLimits boundary_limits() const override;
  std::optional<std::pair<double, double>> ellipticity_suprema(
      double k) const override;
  std::string name() const override { return "mean_reverting_quadratic"; }

  double lambda() const noexcept { return lambda_; }
  double omega_bar() const noexcept { return omega_bar_; }
  double nu() const noexcept { return nu_; }

 private:
  double lambda_;
  double omega_bar_;
  double nu_;
};

/// Polynomial drift and volatility, coefficients in ascending powers of x.
/// Used for plugging custom dynamics in through configuration files.
class PolynomialDynamics final : public ShareDynamics {
 public:
  PolynomialDynamics(std::vector<double> mu_coeffs,
                     std::vector<double> sigma_coeffs);

  double mu(double x) const override;
  double sigma(double x) const override;
  double mu_prime(double x) const override;
  double sigma_prime(double x) const override;
  std::string name() const override { return "polynomial"; }

  const std::vector<double>& mu_coeffs() const noexcept { return mu_; }
  const std::vector<double>& sigma_coeffs() const noexcept { return sigma_; }

 private:
  std::vector<double> mu_;
  std::vector<double> sigma_;
};

using ShareDynamicsPtr = std::shared_ptr<const ShareDynamics>;

struct PreferenceParams {
  double phi = 0.0;    // subjective discount rate; may be negative
  double gamma = 1.0;  // relative risk aversion
};

struct AmbiguityParams {
  double kappa = 0.0;  // radius of the density-generator interval
  double alpha = 0.5;  // weight on the worst case
};

struct ModelConfig {
  EndowmentParams endowment;
  ShareDynamicsPtr share;
  double rho = 0.0;
  PreferenceParams preferences;
  AmbiguityParams ambiguity;

  /// (1 - gamma) rho sigma_c, the coefficient on sigma_omega in the
  /// pricing-equation drift.
  double cross_coefficient() const noexcept {
    return (1.0 - preferences.gamma) * rho * endowment.sigma_c;
  }
};

/// Parameters estimated from the 1933-2022 sample (phi and kappa included).
ModelConfig table1_config(double gamma = 1.0, double alpha = 0.5);

/// Throws Error(InvalidArgument) unless every component invariant holds.
void check_invariants(const ModelConfig& config);

struct ValidationCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  // Both sides of the ellipticity inequality; unset for other reports.
  std::optional<double> lhs;
  std::optional<double> rhs;

  bool passed() const;
  void add(std::string name, bool ok, std::string detail = {});
};

/// 4096 uniform points on [1e-4, 1 - 1e-4].
std::vector<double> default_probe_grid(std::size_t n = 4096,
                                       double margin = 1e-4);

/// Regularity and boundary conditions on the share dynamics, checked on
/// the probe grid (interior positivity, bounded derivatives) and through
/// the boundary limits.
ValidationReport validate_assumption_sde(const ShareDynamics& share,
                                         std::span<const double> probe_grid);

struct Propensities {
  double delta_plus = 0.0;
  double delta_minus = 0.0;
};

/// delta_pm = phi - (1-gamma)(mu_c +- kappa sigma_c - gamma sigma_c^2 / 2).
/// Does not check positivity.
Propensities extreme_propensities(const ModelConfig& config);

/// As extreme_propensities, throwing NonpositivePropensity if either value
/// is not strictly positive.
Propensities validate_growth(const ModelConfig& config);

/// max{sup[mu' + k sigma'], sup[2(mu' + k sigma') + sigma'^2]}; analytic when
/// the dynamics provide it, grid maximum otherwise.
double ellipticity_bound(const ShareDynamics& share, double k,
                         std::span<const double> probe_grid);

/// Same, forcing grid maximization.
double ellipticity_bound_on_grid(const ShareDynamics& share, double k,
                                 std::span<const double> probe_grid);

ValidationReport validate_ellipticity(const ModelConfig& config,
                                      double delta_plus, double delta_minus,
                                      std::span<const double> probe_grid);

/// Throws ConditionViolated when the report failed.
void require(const ValidationReport& ellipticity_report);

/// Point in (0, 1) where the share drift changes sign, by bisection.
/// Requires mu > 0 near 0 and mu < 0 near 1.
double drift_zero(const ShareDynamics& share);

}  // namespace ameu

#endif  // AMEU_PARAMS_HPP
