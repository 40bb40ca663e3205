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

#include "ameu/calibration.hpp"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <sstream>

#include "ameu/error.hpp"

namespace ameu {

// ---------------------------------------------------------------------------
// Data ingestion

namespace {

constexpr const char* kHeader =
    "year,nominal_consumption,pce_index,population,corporate_earnings";

std::string trim(std::string s) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& field, std::size_t line) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != field.size() || !std::isfinite(v)) {
    fail(ErrorKind::ParseError, "line " + std::to_string(line) +
                                    ": cannot parse '" + field + "'");
  }
  return v;
}

}  // namespace

AnnualSeries parse_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail(ErrorKind::ParseError, "empty input");
  if (trim(line) != kHeader) {
    fail(ErrorKind::ParseError, std::string("expected header '") + kHeader + "'");
  }
  AnnualSeries s;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(trim(f));
    if (fields.size() != 5) {
      fail(ErrorKind::ParseError,
           "line " + std::to_string(lineno) + ": expected 5 fields");
    }
    const double y = parse_number(fields[0], lineno);
    if (y != std::floor(y)) {
      fail(ErrorKind::ParseError,
           "line " + std::to_string(lineno) + ": year is not an integer");
    }
    const int year = static_cast<int>(y);
    if (!s.year.empty() && year != s.year.back() + 1) {
      fail(ErrorKind::GapError, "year " + std::to_string(year) +
                                    " does not follow " +
                                    std::to_string(s.year.back()));
    }
    std::array<double, 4> v{};
    for (std::size_t j = 0; j < 4; ++j) {
      v[j] = parse_number(fields[j + 1], lineno);
      if (!(v[j] > 0.0)) {
        fail(ErrorKind::NonpositiveError, "line " + std::to_string(lineno) +
                                              ": non-positive value");
      }
    }
    s.year.push_back(year);
    s.nominal_consumption.push_back(v[0]);
    s.pce_index.push_back(v[1]);
    s.population.push_back(v[2]);
    s.corporate_earnings.push_back(v[3]);
  }
  return s;
}

AnnualSeries ingest_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path.string());
  return parse_csv(in);
}

DerivedSeries derive_series(const AnnualSeries& s, double payout) {
  if (!(payout > 0.0 && payout <= 1.0)) {
    fail(ErrorKind::InvalidArgument, "payout ratio must lie in (0, 1]");
  }
  DerivedSeries d;
  d.year = s.year;
  for (std::size_t i = 0; i < s.size(); ++i) {
    d.real_pc_consumption.push_back(s.nominal_consumption[i] / s.pce_index[i] /
                                    s.population[i]);
    const double w = payout * s.corporate_earnings[i] / s.nominal_consumption[i];
    if (!(w > 0.0 && w < 1.0)) {
      fail(ErrorKind::DomainError, "dividend share outside (0,1) in year " +
                                       std::to_string(s.year[i]));
    }
    d.omega.push_back(w);
  }
  for (std::size_t i = 1; i < s.size(); ++i) {
    d.log_growth.push_back(
        std::log(d.real_pc_consumption[i] / d.real_pc_consumption[i - 1]));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Endowment and share dynamics

EndowmentEstimate estimate_endowment(std::span<const double> g,
                                     DriftConvention convention) {
  if (g.size() < 2) {
    fail(ErrorKind::InsufficientData, "need at least two growth observations");
  }
  const auto n = static_cast<double>(g.size());
  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= n;
  double ss = 0.0;
  for (double v : g) ss += (v - mean) * (v - mean);
  EndowmentEstimate e;
  e.sigma_c = std::sqrt(ss / (n - 1.0));
  e.mu_c = convention == DriftConvention::kArithmetic
               ? mean + 0.5 * e.sigma_c * e.sigma_c
               : mean;
  e.n_obs = g.size();
  return e;
}

EndowmentEstimate estimate_endowment(const DerivedSeries& s,
                                     DriftConvention convention) {
  return estimate_endowment(s.log_growth, convention);
}

namespace {

struct MleData {
  std::span<const double> omega;
  double dt;
};

// Parameters live on (log lambda, logit omega_bar, log nu).
struct ShareParams {
  double lambda;
  double omega_bar;
  double nu;
};

ShareParams from_unconstrained(const gsl_vector* v) {
  const double z = gsl_vector_get(v, 1);
  return {std::exp(gsl_vector_get(v, 0)), 1.0 / (1.0 + std::exp(-z)),
          std::exp(gsl_vector_get(v, 2))};
}

double negative_log_likelihood(const ShareParams& p, const MleData& d) {
  double nll = 0.0;
  for (std::size_t t = 0; t + 1 < d.omega.size(); ++t) {
    const double w = d.omega[t];
    const double mean = p.lambda * (p.omega_bar - w) * d.dt;
    const double sd = p.nu * w * (1.0 - w) * std::sqrt(d.dt);
    const double r = (d.omega[t + 1] - w - mean) / sd;
    nll += 0.5 * r * r + std::log(sd);
  }
  return nll + 0.5 * std::log(2.0 * M_PI) * static_cast<double>(d.omega.size() - 1);
}

double nll_callback(const gsl_vector* v, void* params) {
  const auto* d = static_cast<const MleData*>(params);
  const double f = negative_log_likelihood(from_unconstrained(v), *d);
  return std::isfinite(f) ? f : std::numeric_limits<double>::max();
}

struct SimplexResult {
  ShareParams params{};
  double nll = std::numeric_limits<double>::infinity();
  bool converged = false;
};

SimplexResult run_simplex(const MleData& data, const ShareParams& start) {
  gsl_multimin_function fn{&nll_callback, 3, const_cast<MleData*>(&data)};
  gsl_vector* x = gsl_vector_alloc(3);
  gsl_vector* step = gsl_vector_alloc(3);
  gsl_vector_set(x, 0, std::log(start.lambda));
  gsl_vector_set(x, 1, std::log(start.omega_bar / (1.0 - start.omega_bar)));
  gsl_vector_set(x, 2, std::log(start.nu));
  gsl_vector_set_all(step, 0.5);
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
  gsl_multimin_fminimizer_set(s, &fn, x, step);

  SimplexResult res;
  for (int iter = 0; iter < 5000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(s) != 0) break;
    if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-10) ==
        GSL_SUCCESS) {
      res.converged = true;
      break;
    }
  }
  res.params = from_unconstrained(gsl_multimin_fminimizer_x(s));
  res.nll = gsl_multimin_fminimizer_minimum(s);
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(step);
  gsl_vector_free(x);
  return res;
}

double correlation(std::span<const double> a, std::span<const double> b) {
  const auto n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace

ShareEstimate estimate_share_dynamics(std::span<const double> omega,
                                      std::span<const double> log_growth,
                                      double dt) {
  if (omega.size() < 10) {
    fail(ErrorKind::InsufficientData, "need at least ten share observations");
  }
  if (log_growth.size() + 1 != omega.size()) {
    fail(ErrorKind::InvalidArgument,
         "log growth must have one entry fewer than the share series");
  }
  for (double w : omega) {
    if (!(w > 0.0 && w < 1.0)) {
      fail(ErrorKind::DomainError, "share observation outside (0,1)");
    }
  }
  const auto [lo_it, hi_it] = std::minmax_element(omega.begin(), omega.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  double mean = 0.0;
  for (double w : omega) mean += w;
  mean /= static_cast<double>(omega.size());

  const MleData data{omega, dt};
  const std::array<double, 2> lambdas{0.05, 1.0};
  const std::array<double, 2> bars{0.5 * (lo + mean), 0.5 * (mean + hi)};
  const std::array<double, 2> nus{0.05, 0.5};

  SimplexResult best;
  int converged = 0;
  for (double l : lambdas) {
    for (double b : bars) {
      for (double v : nus) {
        const SimplexResult r = run_simplex(data, {l, b, v});
        if (!r.converged || !std::isfinite(r.nll)) continue;
        ++converged;
        if (r.nll < best.nll) best = r;
      }
    }
  }
  if (converged == 0) {
    fail(ErrorKind::OptimizerDiverged, "no Nelder-Mead start converged");
  }
  const ShareParams& p = best.params;
  if (!(p.omega_bar >= lo && p.omega_bar <= hi)) {
    fail(ErrorKind::OptimizerDiverged,
         "omega_bar estimate lies outside the sample range");
  }

  std::vector<double> z_share(log_growth.size());
  for (std::size_t t = 0; t + 1 < omega.size(); ++t) {
    const double w = omega[t];
    z_share[t] = (omega[t + 1] - w - p.lambda * (p.omega_bar - w) * dt) /
                 (p.nu * w * (1.0 - w) * std::sqrt(dt));
  }

  ShareEstimate e;
  e.lambda = p.lambda;
  e.omega_bar = p.omega_bar;
  e.nu = p.nu;
  e.rho = correlation(z_share, log_growth);
  e.log_likelihood = -best.nll;
  e.converged_starts = converged;
  return e;
}

ShareEstimate estimate_share_dynamics(const DerivedSeries& s) {
  return estimate_share_dynamics(s.omega, s.log_growth, 1.0);
}

KappaEstimate kappa_from_stderr(double sigma_c, double t_years) {
  if (!(t_years >= 1.0)) {
    fail(ErrorKind::InvalidArgument, "sample length must be at least one year");
  }
  const double multiplier = 1.96 / std::sqrt(t_years);
  return {multiplier * sigma_c, multiplier};
}

// ---------------------------------------------------------------------------
// Preference matching

namespace {

class MatchProblem {
 public:
  MatchProblem(const CalibrationTargets& t, double theta, const ModelConfig& base,
               const ShareMoments& m)
      : targets_(t), theta_(theta), config_(base), moments_(m) {}

  double delta(double gamma, double phi) const {
    const double s = config_.endowment.sigma_c;
    return phi - (1.0 - gamma) *
                     (config_.endowment.mu_c + theta_ * s - 0.5 * gamma * s * s);
  }

  double phi_for(double gamma, double delta) const {
    const double s = config_.endowment.sigma_c;
    return delta + (1.0 - gamma) *
                       (config_.endowment.mu_c + theta_ * s - 0.5 * gamma * s * s);
  }

  double premium_residual(double gamma, double delta) const {
    ModelConfig c = config_;
    c.preferences.gamma = gamma;
    EquilibriumConstants e;
    e.delta = delta;
    e.theta_star = theta_;
    return approx_premium(c, e, moments_) / targets_.premium - 1.0;
  }

  double pd_residual(double delta) const {
    EquilibriumConstants e;
    e.delta = delta;
    e.theta_star = theta_;
    return approx_log_pd(config_, e, moments_.mean) / targets_.pd - 1.0;
  }

  // Both relative residuals; nullopt when delta is not positive.
  std::optional<std::array<double, 2>> residuals(double gamma, double phi) const {
    const double d = delta(gamma, phi);
    if (!(d > 0.0) || !(gamma > 0.0)) return std::nullopt;
    return std::array{premium_residual(gamma, d), pd_residual(d)};
  }

 private:
  CalibrationTargets targets_;
  double theta_;
  ModelConfig config_;
  ShareMoments moments_;
};

constexpr double kMatchTolerance = 1e-10;

double norm_inf(const std::array<double, 2>& r) {
  return std::max(std::abs(r[0]), std::abs(r[1]));
}

std::optional<PreferenceMatch> newton(const MatchProblem& prob,
                                      const CalibrationTargets& targets) {
  double gamma = 10.0;
  double phi = prob.phi_for(gamma, 1.0 / targets.pd);
  auto r = prob.residuals(gamma, phi);
  if (!r) return std::nullopt;
  int iter = 1;
  for (; iter <= 100; ++iter) {
    if (norm_inf(*r) < 1e-13) {
      return PreferenceMatch{gamma, phi, prob.delta(gamma, phi), (*r)[0],
                             (*r)[1], iter, "newton"};
    }
    const double hg = 1e-7 * std::max(1.0, std::abs(gamma));
    const double hp = 1e-7 * std::max(1.0, std::abs(phi));
    const auto rg = prob.residuals(gamma + hg, phi);
    const auto rp = prob.residuals(gamma, phi + hp);
    if (!rg || !rp) return std::nullopt;
    const double j00 = ((*rg)[0] - (*r)[0]) / hg;
    const double j10 = ((*rg)[1] - (*r)[1]) / hg;
    const double j01 = ((*rp)[0] - (*r)[0]) / hp;
    const double j11 = ((*rp)[1] - (*r)[1]) / hp;
    const double det = j00 * j11 - j01 * j10;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    const double dg = -(j11 * (*r)[0] - j01 * (*r)[1]) / det;
    const double dp = -(-j10 * (*r)[0] + j00 * (*r)[1]) / det;

    double damp = 1.0;
    bool accepted = false;
    for (int halving = 0; halving < 40; ++halving, damp *= 0.5) {
      const auto trial = prob.residuals(gamma + damp * dg, phi + damp * dp);
      if (trial && norm_inf(*trial) < norm_inf(*r)) {
        gamma += damp * dg;
        phi += damp * dp;
        r = trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  if (norm_inf(*r) < kMatchTolerance) {
    return PreferenceMatch{gamma, phi, prob.delta(gamma, phi), (*r)[0], (*r)[1],
                           iter, "newton"};
  }
  return std::nullopt;
}

template <class F>
double bisect(F&& f, double lo, double hi, const char* what) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (!(flo * fhi <= 0.0)) {
    std::ostringstream os;
    os << "no sign change for " << what << " on [" << lo << ", " << hi
       << "]: residuals " << flo << ", " << fhi;
    fail(ErrorKind::NoRoot, os.str());
  }
  for (int it = 0; it < 300 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm <= 0.0) == (flo <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

PreferenceMatch nested_bisection(const MatchProblem& prob) {
  // The pd equation involves delta only, so the inner solve is for delta and
  // phi follows from gamma.
  const double delta =
      bisect([&](double d) { return prob.pd_residual(d); }, 1e-8, 1e3, "delta");
  const double gamma = bisect(
      [&](double g) { return prob.premium_residual(g, delta); }, 1e-6, 1e4,
      "gamma");
  const double phi = prob.phi_for(gamma, delta);
  const auto r = prob.residuals(gamma, phi);
  PreferenceMatch m{gamma, phi, delta, 0.0, 0.0, 0, "bisection"};
  if (r) {
    m.premium_residual = (*r)[0];
    m.pd_residual = (*r)[1];
  }
  return m;
}

}  // namespace

PreferenceMatch match_preferences(const CalibrationTargets& targets,
                                  double theta, const ModelConfig& base,
                                  const ShareMoments& moments) {
  if (!(targets.premium > 0.0) || !(targets.pd > 0.0)) {
    fail(ErrorKind::InvalidArgument, "premium and pd targets must be positive");
  }
  require_quadratic(base);
  const MatchProblem prob(targets, theta, base, moments);
  if (auto m = newton(prob, targets)) return *m;
  PreferenceMatch m = nested_bisection(prob);
  if (!(std::abs(m.premium_residual) < kMatchTolerance &&
        std::abs(m.pd_residual) < kMatchTolerance)) {
    std::ostringstream os;
    os << "bisection ended with residuals " << m.premium_residual << ", "
       << m.pd_residual;
    fail(ErrorKind::NoRoot, os.str());
  }
  return m;
}

}  // namespace ameu
