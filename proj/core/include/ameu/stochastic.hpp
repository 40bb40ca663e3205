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

#ifndef AMEU_STOCHASTIC_HPP
#define AMEU_STOCHASTIC_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "ameu/equilibrium.hpp"
#include "ameu/grid.hpp"
#include "ameu/params.hpp"

namespace ameu {

/// omega is clamped into [kClampEpsilon, 1 - kClampEpsilon] after each step.
inline constexpr double kClampEpsilon = 1e-8;

struct SimulationOptions {
  double dt = 1.0 / 252.0;
  double horizon = 1.0;
  std::size_t n_paths = 1;
  std::uint64_t seed = 0;
  double omega0 = 0.0;        // 0 selects the zero of the share drift
  std::size_t record_every = 1;  // store every k-th step
  unsigned threads = 0;          // 0 selects hardware concurrency
};

/// Euler-Maruyama paths of (log C, omega) under the prior with constant
/// density generator theta. Row p of omega_paths / log_c_paths is path p,
/// column j is time times[j].
struct PathBundle {
  double dt = 0.0;
  double horizon = 0.0;
  double theta = 0.0;
  std::uint64_t seed = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> omega_paths;
  std::vector<std::vector<double>> log_c_paths;
  std::size_t clamp_events = 0;
  std::size_t steps_per_path = 0;
};

/// Throws InvalidArgument unless dt > 0, horizon > 0, n_paths >= 1 and
/// |theta| <= kappa.
PathBundle simulate_paths(const ModelConfig& config, double theta,
                          const SimulationOptions& options);

struct FeynmanKacOptions {
  std::size_t n_paths = 100000;
  double dt = 1.0 / 252.0;
  double horizon = 0.0;  // 0 selects 60 / delta
  std::uint64_t seed = 0;
  double target_precision = 1e-3;
  unsigned threads = 0;
};

struct FeynmanKacResult {
  double estimate = 0.0;
  double std_error = 0.0;
  double truncation_bound = 0.0;  // exp(-delta T) / delta
  double horizon = 0.0;
  std::size_t clamp_events = 0;
};

/// Monte Carlo estimate of the stock price-endowment ratio at omega0:
/// E int_0^T exp(-delta t) X_t dt under drift mu + k sigma. The discount is
/// realised as an independent exponential killing time.
/// Throws TruncationTooLarge when exp(-delta T)/delta exceeds 0.1 times the
/// target precision.
FeynmanKacResult feynman_kac_estimate(const ModelConfig& config,
                                      const EquilibriumConstants& constants,
                                      double omega0,
                                      const FeynmanKacOptions& options);

struct StationaryDensity {
  Grid grid{Grid::kMinPoints};
  ShareDynamicsPtr share;
  std::vector<double> p;
  std::vector<double> log_p;  // normalised; -inf where p underflows
  double reference = 0.0;     // lower limit of the scale-density integral
  double mass_error = 0.0;    // |trapezoid(p) - 1|
  double fpe_residual = 0.0;  // max weak residual over hat test functions
};

/// Density proportional to sigma^-2 exp(int_ref^x 2 mu / sigma^2) on the
/// grid, normalised by the trapezoid rule. Throws NormalizationFailure when
/// the unnormalised mass is zero or not finite.
StationaryDensity stationary_density(ShareDynamicsPtr share, const Grid& grid);

/// Normalised density at an arbitrary interior point.
double density_at(const StationaryDensity& density, double x);

/// Trapezoid quadrature of f(omega) p(omega) on the density grid.
double density_moments(const StationaryDensity& density,
                       const std::function<double(double)>& f);

/// Cumulative distribution on the density grid (trapezoid), linearly
/// interpolated; 0 below the grid and 1 above.
double density_cdf(const StationaryDensity& density, double x);

/// Time-sampled omega from n_paths independent long paths after burn_in
/// years, one sample per `sample_every` years.
struct ErgodicSampleOptions {
  double dt = 1.0 / 252.0;
  double total_years = 1e6;
  std::size_t n_paths = 10;
  double burn_in = 100.0;
  double sample_every = 1.0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

struct ErgodicSample {
  std::vector<double> omega;
  std::size_t clamp_events = 0;
  std::size_t steps = 0;
};

ErgodicSample ergodic_sample(const ShareDynamics& share,
                             const ErgodicSampleOptions& options);

/// Kolmogorov-Smirnov distance between a sample and the density CDF.
double ks_distance(const StationaryDensity& density, std::vector<double> sample);

}  // namespace ameu

#endif  // AMEU_STOCHASTIC_HPP
