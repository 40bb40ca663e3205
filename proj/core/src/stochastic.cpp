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

#include "ameu/stochastic.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/random/normal_distribution.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "ameu/error.hpp"
#include "ameu/random.hpp"
#include "parallel.hpp"

namespace ameu {

namespace {

using Normal = boost::random::normal_distribution<double>;

// Ergodic runs draw from streams offset by this amount, disjoint from the
// path-indexed streams of the other simulators under the same seed.
constexpr std::uint64_t kErgodicStreamBase = std::uint64_t{1} << 40;

inline double clamp_share(double x, std::size_t& events) {
  if (x < kClampEpsilon) {
    ++events;
    return kClampEpsilon;
  }
  if (x > 1.0 - kClampEpsilon) {
    ++events;
    return 1.0 - kClampEpsilon;
  }
  return x;
}

double scale_integral(const ShareDynamics& share, double a, double b) {
  if (a == b) return 0.0;
  auto integrand = [&share](double x) {
    const double s = share.sigma(x);
    return 2.0 * share.mu(x) / (s * s);
  };
  return boost::math::quadrature::gauss_kronrod<double, 21>::integrate(
      integrand, a, b, 6, 1e-11);
}

}  // namespace

PathBundle simulate_paths(const ModelConfig& config, double theta,
                          const SimulationOptions& opt) {
  check_invariants(config);
  if (!(opt.dt > 0.0) || !(opt.horizon > 0.0) || opt.n_paths == 0 ||
      opt.record_every == 0) {
    fail(ErrorKind::InvalidArgument,
         "simulation needs dt > 0, horizon > 0, n_paths >= 1");
  }
  if (std::abs(theta) > config.ambiguity.kappa) {
    fail(ErrorKind::InvalidArgument, "|theta| must not exceed kappa");
  }
  const ShareDynamics& share = *config.share;
  const double omega0 = opt.omega0 > 0.0 ? opt.omega0 : drift_zero(share);
  const auto steps =
      static_cast<std::size_t>(std::ceil(opt.horizon / opt.dt - 1e-9));
  const double mu_c = config.endowment.mu_c;
  const double sc = config.endowment.sigma_c;
  const double rho = config.rho;
  const double rho_bar = std::sqrt(1.0 - rho * rho);
  const double log_drift = mu_c + theta * sc - 0.5 * sc * sc;

  PathBundle out;
  out.dt = opt.dt;
  out.horizon = opt.horizon;
  out.theta = theta;
  out.seed = opt.seed;
  out.steps_per_path = steps;
  out.times.push_back(0.0);
  for (std::size_t s = 1; s <= steps; ++s) {
    if (s % opt.record_every == 0 || s == steps) {
      out.times.push_back(std::min(static_cast<double>(s) * opt.dt, opt.horizon));
    }
  }
  out.omega_paths.assign(opt.n_paths, {});
  out.log_c_paths.assign(opt.n_paths, {});
  std::vector<std::size_t> clamps(opt.n_paths, 0);

  detail::parallel_for(opt.n_paths, opt.threads, [&](std::size_t p) {
    PhiloxStream rng(opt.seed, p);
    Normal normal;
    auto& om = out.omega_paths[p];
    auto& lc = out.log_c_paths[p];
    om.reserve(out.times.size());
    lc.reserve(out.times.size());
    double x = omega0;
    double y = 0.0;
    om.push_back(x);
    lc.push_back(y);
    double t = 0.0;
    for (std::size_t s = 1; s <= steps; ++s) {
      const double step = std::min(opt.dt, opt.horizon - t);
      const double sq = std::sqrt(step);
      const double z1 = normal(rng);
      const double z2 = normal(rng);
      y += log_drift * step + sc * sq * z1;
      x += share.mu(x) * step + share.sigma(x) * sq * (rho * z1 + rho_bar * z2);
      x = clamp_share(x, clamps[p]);
      t += step;
      if (s % opt.record_every == 0 || s == steps) {
        om.push_back(x);
        lc.push_back(y);
      }
    }
  });
  for (auto c : clamps) out.clamp_events += c;
  return out;
}

FeynmanKacResult feynman_kac_estimate(const ModelConfig& config,
                                      const EquilibriumConstants& constants,
                                      double omega0,
                                      const FeynmanKacOptions& opt) {
  if (!(omega0 > 0.0 && omega0 < 1.0)) {
    fail(ErrorKind::InvalidArgument, "omega0 must lie in (0,1)");
  }
  if (!(opt.dt > 0.0) || opt.n_paths < 2) {
    fail(ErrorKind::InvalidArgument, "Feynman-Kac needs dt > 0 and >= 2 paths");
  }
  const double delta = constants.delta;
  if (!(delta > 0.0)) throw NonpositivePropensity("delta", delta);

  FeynmanKacResult res;
  res.horizon = opt.horizon > 0.0 ? opt.horizon : 60.0 / delta;
  res.truncation_bound = std::exp(-delta * res.horizon) / delta;
  if (res.truncation_bound > 0.1 * opt.target_precision) {
    std::ostringstream os;
    os << "truncation bound " << res.truncation_bound
       << " exceeds 0.1 x target precision " << opt.target_precision;
    fail(ErrorKind::TruncationTooLarge, os.str());
  }

  const ShareDynamics& share = *config.share;
  const double k = config.cross_coefficient();
  const double horizon = res.horizon;
  const double dt = opt.dt;
  std::vector<double> values(opt.n_paths);
  std::vector<std::size_t> clamps(opt.n_paths, 0);

  auto run = [&](const auto& dyn) {
    const double sqrt_dt = std::sqrt(dt);
    detail::parallel_for(opt.n_paths, opt.threads, [&](std::size_t p) {
      PhiloxStream rng(opt.seed, p);
      Normal normal;
      const double stop =
          std::min(-std::log(rng.uniform_open()) / delta, horizon);
      double x = omega0;
      double acc = 0.0;
      std::size_t events = 0;
      const auto full_steps = static_cast<std::size_t>(stop / dt);
      for (std::size_t i = 0; i < full_steps; ++i) {
        acc += x;
        const double s = dyn.sigma(x);
        x += (dyn.mu(x) + k * s) * dt + s * sqrt_dt * normal(rng);
        x = clamp_share(x, events);
      }
      // Partial final step; the state after it is never used.
      acc = acc * dt + x * (stop - static_cast<double>(full_steps) * dt);
      values[p] = acc;
      clamps[p] = events;
    });
  };
  // The final class lets the canonical dynamics inline into the hot loop.
  if (const auto* q = dynamic_cast<const MeanRevertingQuadratic*>(&share)) {
    run(*q);
  } else {
    run(share);
  }

  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  const auto n = static_cast<double>(values.size());
  res.estimate = mean;
  res.std_error = std::sqrt(ss / (n - 1.0) / n);
  for (auto c : clamps) res.clamp_events += c;
  return res;
}

StationaryDensity stationary_density(ShareDynamicsPtr share_ptr,
                                     const Grid& grid) {
  if (!share_ptr) fail(ErrorKind::InvalidArgument, "share dynamics missing");
  const ShareDynamics& share = *share_ptr;
  const std::size_t n = grid.size();

  StationaryDensity d;
  d.grid = grid;
  d.share = share_ptr;
  d.reference = drift_zero(share);

  // Scale-density exponent at grid points, accumulated outward from the
  // reference point so each cell integral stays well conditioned.
  std::vector<double> expo(n);
  const double h = grid.spacing();
  auto anchor = static_cast<std::size_t>(
      std::clamp(std::round(d.reference / h - 1.0), 0.0,
                 static_cast<double>(n - 1)));
  expo[anchor] = scale_integral(share, d.reference, grid[anchor]);
  for (std::size_t i = anchor + 1; i < n; ++i) {
    expo[i] = expo[i - 1] + scale_integral(share, grid[i - 1], grid[i]);
  }
  for (std::size_t i = anchor; i-- > 0;) {
    expo[i] = expo[i + 1] - scale_integral(share, grid[i], grid[i + 1]);
  }

  d.log_p.resize(n);
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = share.sigma(grid[i]);
    d.log_p[i] = s > 0.0 ? expo[i] - 2.0 * std::log(s)
                         : -std::numeric_limits<double>::infinity();
    if (std::isfinite(d.log_p[i])) top = std::max(top, d.log_p[i]);
  }
  if (!std::isfinite(top)) {
    fail(ErrorKind::NormalizationFailure, "density exponent is not finite");
  }
  d.p.resize(n);
  for (std::size_t i = 0; i < n; ++i) d.p[i] = std::exp(d.log_p[i] - top);
  const double mass = trapezoid(grid, d.p);
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    fail(ErrorKind::NormalizationFailure, "density mass is zero or not finite");
  }
  const double log_mass = std::log(mass) + top;
  for (std::size_t i = 0; i < n; ++i) {
    d.p[i] /= mass;
    d.log_p[i] -= log_mass;
  }
  d.mass_error = std::abs(trapezoid(grid, d.p) - 1.0);

  // Weak residual of -(mu p)' + (sigma^2 p)''/2 against the hat function
  // centred at each interior node. Cell integrals of mu p use Simpson's rule.
  std::vector<double> cell(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double a = grid[i];
    const double b = grid[i + 1];
    const double m = 0.5 * (a + b);
    cell[i] = h / 6.0 *
              (share.mu(a) * d.p[i] + 4.0 * share.mu(m) * density_at(d, m) +
               share.mu(b) * d.p[i + 1]);
  }
  auto s2p = [&](std::size_t i) {
    const double s = share.sigma(grid[i]);
    return s * s * d.p[i];
  };
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = (cell[i - 1] - cell[i]) / h +
                     (s2p(i - 1) - 2.0 * s2p(i) + s2p(i + 1)) / (2.0 * h);
    d.fpe_residual = std::max(d.fpe_residual, std::abs(r));
  }
  return d;
}

double density_at(const StationaryDensity& d, double x) {
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  const ShareDynamics& share = *d.share;
  const double h = d.grid.spacing();
  const std::size_t n = d.grid.size();
  auto i = static_cast<std::size_t>(std::clamp(
      std::round(x / h - 1.0), 0.0, static_cast<double>(n - 1)));
  if (!std::isfinite(d.log_p[i])) return 0.0;
  const double si = share.sigma(d.grid[i]);
  const double sx = share.sigma(x);
  if (!(sx > 0.0)) return 0.0;
  const double lp = d.log_p[i] + 2.0 * std::log(si) - 2.0 * std::log(sx) +
                    scale_integral(share, d.grid[i], x);
  return std::exp(lp);
}

double density_moments(const StationaryDensity& d,
                       const std::function<double(double)>& f) {
  std::vector<double> v(d.p.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] = d.p[i] == 0.0 ? 0.0 : f(d.grid[i]) * d.p[i];
  }
  return trapezoid(d.grid, v);
}

namespace {

std::vector<double> cumulative(const StationaryDensity& d) {
  std::vector<double> c(d.p.size(), 0.0);
  const double h = d.grid.spacing();
  for (std::size_t i = 1; i < c.size(); ++i) {
    c[i] = c[i - 1] + 0.5 * h * (d.p[i - 1] + d.p[i]);
  }
  return c;
}

double cdf_from(const StationaryDensity& d, const std::vector<double>& c,
                double x) {
  if (x <= d.grid.front()) return 0.0;
  if (x >= d.grid.back()) return 1.0;
  return d.grid.interpolate(c, x);
}

}  // namespace

double density_cdf(const StationaryDensity& d, double x) {
  return cdf_from(d, cumulative(d), x);
}

ErgodicSample ergodic_sample(const ShareDynamics& share,
                             const ErgodicSampleOptions& opt) {
  if (!(opt.dt > 0.0) || opt.n_paths == 0 || !(opt.total_years > 0.0) ||
      !(opt.sample_every >= opt.dt)) {
    fail(ErrorKind::InvalidArgument, "invalid ergodic sampling options");
  }
  const double per_path = opt.total_years / static_cast<double>(opt.n_paths);
  const auto burn_steps =
      static_cast<std::size_t>(std::llround(opt.burn_in / opt.dt));
  const auto stride =
      static_cast<std::size_t>(std::llround(opt.sample_every / opt.dt));
  const auto samples =
      static_cast<std::size_t>(std::llround(per_path / opt.sample_every));
  const double x0 = drift_zero(share);
  const double sq = std::sqrt(opt.dt);

  std::vector<std::vector<double>> chunks(opt.n_paths);
  std::vector<std::size_t> clamps(opt.n_paths, 0);
  detail::parallel_for(opt.n_paths, opt.threads, [&](std::size_t p) {
    PhiloxStream rng(opt.seed, kErgodicStreamBase + p);
    Normal normal;
    double x = x0;
    std::size_t events = 0;
    auto advance = [&] {
      x += share.mu(x) * opt.dt + share.sigma(x) * sq * normal(rng);
      x = clamp_share(x, events);
    };
    for (std::size_t s = 0; s < burn_steps; ++s) advance();
    auto& out = chunks[p];
    out.reserve(samples);
    for (std::size_t j = 0; j < samples; ++j) {
      for (std::size_t s = 0; s < stride; ++s) advance();
      out.push_back(x);
    }
    clamps[p] = events;
  });

  ErgodicSample res;
  for (std::size_t p = 0; p < opt.n_paths; ++p) {
    res.omega.insert(res.omega.end(), chunks[p].begin(), chunks[p].end());
    res.clamp_events += clamps[p];
  }
  res.steps = opt.n_paths * (burn_steps + samples * stride);
  return res;
}

double ks_distance(const StationaryDensity& d, std::vector<double> sample) {
  if (sample.empty()) fail(ErrorKind::InvalidArgument, "empty sample");
  std::sort(sample.begin(), sample.end());
  const std::vector<double> c = cumulative(d);
  const auto n = static_cast<double>(sample.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < sample.size(); ++k) {
    const double f = cdf_from(d, c, sample[k]);
    const double lo = static_cast<double>(k) / n;
    const double hi = static_cast<double>(k + 1) / n;
    worst = std::max({worst, std::abs(f - lo), std::abs(hi - f)});
  }
  return worst;
}

}  // namespace ameu
