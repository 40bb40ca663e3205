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

#include "ameu/params.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ameu/error.hpp"

namespace ameu {

namespace {

// Derivative magnitudes above this are reported as unbounded.
constexpr double kDerivativeBound = 1e8;
constexpr double kLimitTolerance = 1e-12;

double horner(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

double horner_prime(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > 1;) {
    acc = acc * x + static_cast<double>(i) * c[i];
  }
  return acc;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

}  // namespace

BoundaryLimits ShareDynamics::boundary_limits() const {
  return {mu(0.0), mu(1.0), sigma(0.0), sigma(1.0)};
}

std::optional<std::pair<double, double>> ShareDynamics::ellipticity_suprema(
    double) const {
  return std::nullopt;
}

MeanRevertingQuadratic::MeanRevertingQuadratic(double lambda, double omega_bar,
                                               double nu)
    : lambda_(lambda), omega_bar_(omega_bar), nu_(nu) {
  if (!(lambda > 0.0) || !(omega_bar > 0.0 && omega_bar < 1.0) ||
      !(nu > 0.0)) {
    fail(ErrorKind::InvalidArgument,
         "mean-reverting dynamics need lambda > 0, omega_bar in (0,1), nu > 0");
  }
}

BoundaryLimits MeanRevertingQuadratic::boundary_limits() const {
  return {lambda_ * omega_bar_, lambda_ * (omega_bar_ - 1.0), 0.0, 0.0};
}

std::optional<std::pair<double, double>>
MeanRevertingQuadratic::ellipticity_suprema(double k) const {
  // mu' = -lambda and sigma' = nu s with s = 1 - 2x in (-1, 1). Both
  // expressions are convex in s, so the suprema sit at s -> +-1.
  const double first = -lambda_ + std::abs(k) * nu_;
  const double second = 2.0 * first + nu_ * nu_;
  return std::pair{first, second};
}

PolynomialDynamics::PolynomialDynamics(std::vector<double> mu_coeffs,
                                       std::vector<double> sigma_coeffs)
    : mu_(std::move(mu_coeffs)), sigma_(std::move(sigma_coeffs)) {
  if (mu_.empty() || sigma_.empty()) {
    fail(ErrorKind::InvalidArgument, "polynomial dynamics need coefficients");
  }
}

double PolynomialDynamics::mu(double x) const { return horner(mu_, x); }
double PolynomialDynamics::sigma(double x) const { return horner(sigma_, x); }
double PolynomialDynamics::mu_prime(double x) const {
  return horner_prime(mu_, x);
}
double PolynomialDynamics::sigma_prime(double x) const {
  return horner_prime(sigma_, x);
}

ModelConfig table1_config(double gamma, double alpha) {
  ModelConfig c;
  c.endowment = {0.0231, 0.0286};
  c.share = std::make_shared<MeanRevertingQuadratic>(0.2232, 0.0662, 0.1546);
  c.rho = 0.4637;
  c.preferences = {0.0984, gamma};
  c.ambiguity = {0.2, alpha};
  return c;
}

void check_invariants(const ModelConfig& config) {
  if (!config.share) fail(ErrorKind::InvalidArgument, "share dynamics missing");
  if (!(config.endowment.sigma_c > 0.0)) {
    fail(ErrorKind::InvalidArgument,
         "sigma_c must be > 0, got " + fmt(config.endowment.sigma_c));
  }
  if (!(std::abs(config.rho) <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "rho must lie in [-1, 1]");
  }
  if (!(config.preferences.gamma > 0.0)) {
    fail(ErrorKind::InvalidArgument, "gamma must be > 0");
  }
  if (!std::isfinite(config.preferences.phi)) {
    fail(ErrorKind::InvalidArgument, "phi must be finite");
  }
  if (!(config.ambiguity.kappa >= 0.0)) {
    fail(ErrorKind::InvalidArgument, "kappa must be >= 0");
  }
  if (!(config.ambiguity.alpha >= 0.0 && config.ambiguity.alpha <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "alpha must lie in [0, 1]");
  }
}

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const ValidationCheck& c) { return c.passed; });
}

void ValidationReport::add(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

std::vector<double> default_probe_grid(std::size_t n, double margin) {
  std::vector<double> g(n);
  if (n == 1) {
    g[0] = 0.5;
    return g;
  }
  const double step = (1.0 - 2.0 * margin) / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g[i] = margin + step * static_cast<double>(i);
  }
  return g;
}

ValidationReport validate_assumption_sde(const ShareDynamics& share,
                                         std::span<const double> probe_grid) {
  if (probe_grid.empty()) {
    fail(ErrorKind::InvalidArgument, "probe grid is empty");
  }
  for (double x : probe_grid) {
    if (!(x > 0.0 && x < 1.0)) {
      fail(ErrorKind::InvalidArgument,
           "probe grid must lie strictly inside (0,1), got " + fmt(x));
    }
  }

  ValidationReport report;

  double min_sigma = std::numeric_limits<double>::infinity();
  double max_dmu = 0.0;
  double max_dsigma = 0.0;
  bool finite = true;
  for (double x : probe_grid) {
    const double s = share.sigma(x);
    const double dm = share.mu_prime(x);
    const double ds = share.sigma_prime(x);
    finite = finite && std::isfinite(s) && std::isfinite(dm) &&
             std::isfinite(ds) && std::isfinite(share.mu(x));
    min_sigma = std::min(min_sigma, s);
    max_dmu = std::max(max_dmu, std::abs(dm));
    max_dsigma = std::max(max_dsigma, std::abs(ds));
  }
  report.add("sigma_positive_interior", finite && min_sigma > 0.0,
             "min sigma on probe grid = " + fmt(min_sigma));
  report.add("bounded_derivatives",
             finite && max_dmu < kDerivativeBound &&
                 max_dsigma < kDerivativeBound,
             "max |mu'| = " + fmt(max_dmu) + ", max |sigma'| = " +
                 fmt(max_dsigma));

  const BoundaryLimits lim = share.boundary_limits();
  report.add("mu_positive_at_0", lim.mu_at_0 > 0.0,
             "lim mu(0+) = " + fmt(lim.mu_at_0));
  report.add("mu_negative_at_1", lim.mu_at_1 < 0.0,
             "lim mu(1-) = " + fmt(lim.mu_at_1));
  report.add("sigma_vanishes_at_0", std::abs(lim.sigma_at_0) <= kLimitTolerance,
             "lim sigma(0+) = " + fmt(lim.sigma_at_0));
  report.add("sigma_vanishes_at_1", std::abs(lim.sigma_at_1) <= kLimitTolerance,
             "lim sigma(1-) = " + fmt(lim.sigma_at_1));
  return report;
}

Propensities extreme_propensities(const ModelConfig& config) {
  const double g = config.preferences.gamma;
  const double phi = config.preferences.phi;
  const double mu = config.endowment.mu_c;
  const double s = config.endowment.sigma_c;
  const double k = config.ambiguity.kappa;
  const double base = mu - 0.5 * g * s * s;
  return {phi - (1.0 - g) * (base + k * s), phi - (1.0 - g) * (base - k * s)};
}

Propensities validate_growth(const ModelConfig& config) {
  const Propensities p = extreme_propensities(config);
  if (!(p.delta_plus > 0.0)) throw NonpositivePropensity("delta_plus", p.delta_plus);
  if (!(p.delta_minus > 0.0)) {
    throw NonpositivePropensity("delta_minus", p.delta_minus);
  }
  return p;
}

double ellipticity_bound_on_grid(const ShareDynamics& share, double k,
                                 std::span<const double> probe_grid) {
  double first = -std::numeric_limits<double>::infinity();
  double second = first;
  for (double x : probe_grid) {
    const double slope = share.mu_prime(x) + k * share.sigma_prime(x);
    const double ds = share.sigma_prime(x);
    first = std::max(first, slope);
    second = std::max(second, 2.0 * slope + ds * ds);
  }
  return std::max(first, second);
}

double ellipticity_bound(const ShareDynamics& share, double k,
                         std::span<const double> probe_grid) {
  if (auto sup = share.ellipticity_suprema(k)) {
    return std::max(sup->first, sup->second);
  }
  return ellipticity_bound_on_grid(share, k, probe_grid);
}

ValidationReport validate_ellipticity(const ModelConfig& config,
                                      double delta_plus, double delta_minus,
                                      std::span<const double> probe_grid) {
  if (!(delta_plus > 0.0)) throw NonpositivePropensity("delta_plus", delta_plus);
  if (!(delta_minus > 0.0)) {
    throw NonpositivePropensity("delta_minus", delta_minus);
  }
  const double lhs = std::min(delta_plus, delta_minus);
  const double rhs =
      ellipticity_bound(*config.share, config.cross_coefficient(), probe_grid);
  ValidationReport report;
  report.lhs = lhs;
  report.rhs = rhs;
  report.add("ellipticity", lhs > rhs,
             "min(delta_plus, delta_minus) = " + fmt(lhs) +
                 ", required to exceed " + fmt(rhs));
  return report;
}

void require(const ValidationReport& report) {
  if (report.passed()) return;
  throw ConditionViolated(report.lhs.value_or(0.0), report.rhs.value_or(0.0));
}

double drift_zero(const ShareDynamics& share) {
  double lo = 1e-9;
  double hi = 1.0 - 1e-9;
  if (!(share.mu(lo) > 0.0) || !(share.mu(hi) < 0.0)) {
    fail(ErrorKind::InvalidArgument, "share drift does not change sign on (0,1)");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (share.mu(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace ameu
