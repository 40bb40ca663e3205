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

#include "commands.hpp"

#include <cstdio>
#include <iostream>
#include <sstream>
#include <vector>

#include "ameu/calibration.hpp"
#include "ameu/config_io.hpp"
#include "ameu/equilibrium.hpp"
#include "ameu/moments.hpp"
#include "ameu/ode.hpp"
#include "ameu/returns.hpp"
#include "ameu/stochastic.hpp"

namespace ameu::cli {

namespace {

using nlohmann::json;

ModelConfig load(const GlobalOptions& g, const ModelOverrides& m) {
  ModelConfig c = g.config_path.empty() ? table1_config() : load_config(g.config_path);
  if (m.gamma) c.preferences.gamma = *m.gamma;
  if (m.phi) c.preferences.phi = *m.phi;
  if (m.alpha) c.ambiguity.alpha = *m.alpha;
  check_invariants(c);
  return c;
}

EquilibriumConstants constants(const ModelConfig& c, const ModelOverrides& m) {
  return m.theta_star ? equilibrium_for_theta(c, *m.theta_star) : build_equilibrium(c);
}

void record(Run& run, const ModelOverrides& m) {
  if (m.theta_star) run.option("theta_star", *m.theta_star);
}

json to_json(const ValidationCheck& c) {
  return {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item.substr(first), &used);
    } catch (const std::exception&) {
      fail(ErrorKind::InvalidArgument, "bad theta grid entry '" + item + "'");
    }
    if (item.find_first_not_of(" \t", first + used) != std::string::npos) {
      fail(ErrorKind::InvalidArgument, "bad theta grid entry '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

// One CSV with an omega column and one column per curve, all on one grid.
void write_curves(Run& run, const std::string& name, const Grid& grid,
                  const std::string& prefix, const std::vector<double>& keys,
                  const std::vector<std::vector<double>>& curves) {
  std::vector<std::string> header{"omega"};
  for (double k : keys) header.push_back(prefix + label(k));
  CsvWriter csv(run.output(name), header);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::vector<double> row{grid[i]};
    for (const auto& c : curves) row.push_back(c[i]);
    csv.row(row);
  }
}

const std::vector<double> kFigureGammas{0.5, 1.0, 5.0, 10.0};
const std::vector<double> kFigureThetas{-0.2, 0.0, 0.2};
const std::vector<double> kFigureKs{-0.3, -0.15, 0.0, 0.15, 0.3};
const std::vector<double> kFigureDeltas{0.08, 0.0984, 0.11, 0.22, 0.33};

void figure_pd_premium_vol(Run& run, const ModelConfig& base) {
  const Grid grid(run.global().grid_n);
  for (double theta : kFigureThetas) {
    std::vector<std::vector<double>> pd, prem, vol;
    for (double gamma : kFigureGammas) {
      ModelConfig c = base;
      c.preferences.gamma = gamma;
      const auto e = equilibrium_for_theta(c, theta);
      const auto sol = solve_prices(c, e, {grid.size()});
      auto& p = pd.emplace_back();
      auto& r = prem.emplace_back();
      auto& v = vol.emplace_back();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto cr = conditional_returns(c, e, sol, grid[i]);
        p.push_back(cr.pd_ratio);
        r.push_back(cr.premium);
        v.push_back(cr.vol_norm);
      }
    }
    const std::string suffix = "_theta_" + label(theta) + ".csv";
    write_curves(run, "pd-premium-vol_pd" + suffix, grid, "gamma_", kFigureGammas, pd);
    write_curves(run, "pd-premium-vol_premium" + suffix, grid, "gamma_", kFigureGammas, prem);
    write_curves(run, "pd-premium-vol_vol" + suffix, grid, "gamma_", kFigureGammas, vol);
  }
}

void figure_elasticity(Run& run, const ModelConfig& base, bool panels_by_delta) {
  const Grid grid(run.global().grid_n);
  const std::vector<double> panels =
      panels_by_delta ? std::vector<double>{0.0984, 0.11, 0.22, 0.33}
                      : std::vector<double>{-0.3, -0.15, 0.15, 0.3};
  const std::vector<double>& lines = panels_by_delta ? kFigureKs : kFigureDeltas;
  for (double panel : panels) {
    std::vector<std::vector<double>> curves;
    for (double line : lines) {
      const double k = panels_by_delta ? line : panel;
      const double delta = panels_by_delta ? panel : line;
      curves.push_back(elasticity_values(solve_phi_s(base.share, k, delta, grid)));
    }
    if (panels_by_delta) {
      write_curves(run, "elasticity-rho_delta_" + label(panel) + ".csv", grid, "k_", lines,
                   curves);
    } else {
      write_curves(run, "elasticity-delta_k_" + label(panel) + ".csv", grid, "delta_", lines,
                   curves);
    }
  }
}

void figure_premium_theta(Run& run, const ModelConfig& base) {
  const Grid grid(run.global().grid_n);
  for (double gamma : {1.0, 5.0, 10.0}) {
    ModelConfig c = base;
    c.preferences.gamma = gamma;
    std::vector<std::vector<double>> curves;
    for (double theta : kFigureThetas) {
      const auto e = equilibrium_for_theta(c, theta);
      const auto sol = solve_prices(c, e, {grid.size()});
      auto& p = curves.emplace_back();
      for (std::size_t i = 0; i < grid.size(); ++i) {
        p.push_back(conditional_returns(c, e, sol, grid[i]).premium);
      }
    }
    write_curves(run, "premium-theta_gamma_" + label(gamma) + ".csv", grid, "theta_",
                 kFigureThetas, curves);
  }
}

void figure_share_history(Run& run, const FigureOptions& f) {
  if (f.data.empty()) {
    fail(ErrorKind::InvalidArgument, "share-history requires --data <csv>");
  }
  const auto d = derive_series(ingest_csv(f.data), f.payout);
  CsvWriter csv(run.output("share-history.csv"), {"year", "omega"});
  for (std::size_t i = 0; i < d.year.size(); ++i) {
    csv.row({static_cast<double>(d.year[i]), d.omega[i]});
  }
}

}  // namespace

int cmd_validate(const GlobalOptions& g, const ModelOverrides& m) {
  const ModelConfig c = load(g, m);
  Run run("validate", g, c);
  json checks = json::array();
  const auto probes = default_probe_grid();
  const auto sde = validate_assumption_sde(*c.share, probes);
  for (const auto& ch : sde.checks) checks.push_back(to_json(ch));
  bool passed = sde.passed();
  json ellipticity = nullptr;
  try {
    const auto p = validate_growth(c);
    checks.push_back({{"name", "growth"}, {"passed", true}, {"detail", "delta_plus and delta_minus positive"}});
    const auto ell = validate_ellipticity(c, p.delta_plus, p.delta_minus, probes);
    for (const auto& ch : ell.checks) checks.push_back(to_json(ch));
    ellipticity = {{"lhs", *ell.lhs}, {"rhs", *ell.rhs}};
    passed = passed && ell.passed();
  } catch (const NonpositivePropensity& e) {
    checks.push_back({{"name", "growth"}, {"passed", false}, {"detail", e.what()}});
    passed = false;
  }
  run.write_json("validate.json",
                 {{"passed", passed}, {"checks", checks}, {"ellipticity", ellipticity}});
  run.write_manifest();
  for (const auto& ch : checks) {
    std::printf("%-4s %s: %s\n", ch["passed"].get<bool>() ? "ok" : "FAIL",
                ch["name"].get<std::string>().c_str(), ch["detail"].get<std::string>().c_str());
  }
  return passed ? kExitOk : kExitValidation;
}

int cmd_equilibrium(const GlobalOptions& g, const ModelOverrides& m) {
  const ModelConfig c = load(g, m);
  Run run("equilibrium", g, c);
  record(run, m);
  const json doc = constants_to_json(constants(c, m));
  run.write_json("equilibrium.json", doc);
  run.write_manifest();
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_solve(const GlobalOptions& g, const ModelOverrides& m) {
  const ModelConfig c = load(g, m);
  Run run("solve", g, c);
  record(run, m);
  const auto sol = solve_prices(c, constants(c, m), {g.grid_n});
  const auto el = elasticity_values(sol);
  CsvWriter csv(run.output("solve.csv"), {"omega", "phi_s", "phi_h", "d_phi_s", "elasticity"});
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    csv.row({sol.grid[i], sol.phi_s[i], sol.phi_h[i], sol.d_phi_s[i], el[i]});
  }
  run.diagnostic("residual_s", sol.residual_s);
  run.diagnostic("residual_h", sol.residual_h);
  run.diagnostic("upwind_cells", sol.upwind_cells);
  run.write_manifest();
  return kExitOk;
}

int cmd_premium_curve(const GlobalOptions& g, const ModelOverrides& m) {
  const ModelConfig c = load(g, m);
  Run run("premium-curve", g, c);
  record(run, m);
  const auto e = constants(c, m);
  const auto sol = solve_prices(c, e, {g.grid_n});
  CsvWriter csv(run.output("premium-curve.csv"), {"omega", "premium", "vol_norm", "pd_ratio"});
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const auto r = conditional_returns(c, e, sol, sol.grid[i]);
    csv.row({r.omega, r.premium, r.vol_norm, r.pd_ratio});
  }
  run.write_manifest();
  return kExitOk;
}

int cmd_simulate(const GlobalOptions& g, const ModelOverrides& m, const SimulateOptions& s) {
  const ModelConfig c = load(g, m);
  Run run("simulate", g, c);
  run.uses_seed();
  const double theta = s.theta ? *s.theta : constants(c, m).theta_star;
  SimulationOptions o;
  o.dt = s.dt;
  o.horizon = s.horizon;
  o.n_paths = s.paths;
  o.seed = g.seed;
  o.record_every = s.record_every;
  const auto b = simulate_paths(c, theta, o);
  run.option("theta", theta);
  run.option("dt", s.dt);
  run.option("horizon", s.horizon);
  run.option("paths", s.paths);
  run.option("record_every", s.record_every);
  CsvWriter csv(run.output("paths.csv"), {"path_id", "t", "omega", "log_c"});
  for (std::size_t p = 0; p < b.omega_paths.size(); ++p) {
    for (std::size_t j = 0; j < b.times.size(); ++j) {
      csv.row({static_cast<double>(p), b.times[j], b.omega_paths[p][j], b.log_c_paths[p][j]});
    }
  }
  run.diagnostic("clamp_events", b.clamp_events);
  run.write_manifest();
  return kExitOk;
}

int cmd_invariant(const GlobalOptions& g, const ModelOverrides& m) {
  const ModelConfig c = load(g, m);
  Run run("invariant", g, c);
  const auto d = stationary_density(c.share, Grid(g.grid_n));
  CsvWriter csv(run.output("density.csv"), {"omega", "p"});
  for (std::size_t i = 0; i < d.grid.size(); ++i) csv.row({d.grid[i], d.p[i]});
  run.diagnostic("mass_error", d.mass_error);
  run.diagnostic("fpe_residual", d.fpe_residual);
  run.write_manifest();
  return kExitOk;
}

int cmd_moments(const GlobalOptions& g, const ModelOverrides& m) {
  const ModelConfig c = load(g, m);
  Run run("moments", g, c);
  record(run, m);
  const auto e = constants(c, m);
  const auto sol = solve_prices(c, e, {g.grid_n});
  const auto um = unconditional_moments(c, e, sol, stationary_density(c.share, sol.grid));
  const json doc = {{"premium", um.premium}, {"vol", um.vol},   {"pd", um.pd},
                    {"sd_log_pd", um.sd_log_pd}, {"r_f", um.r_f}, {"tail_mass", um.tail_mass}};
  run.write_json("moments.json", doc);
  run.write_manifest();
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_calibrate(const GlobalOptions& g, const CalibrateOptions& o) {
  if (o.drift != "arithmetic" && o.drift != "log") {
    fail(ErrorKind::InvalidArgument, "--drift must be 'arithmetic' or 'log'");
  }
  const auto series = ingest_csv(o.data);
  const auto d = derive_series(series, o.payout);
  const auto conv =
      o.drift == "log" ? DriftConvention::kLogGrowth : DriftConvention::kArithmetic;
  const auto endow = estimate_endowment(d, conv);
  const auto share = estimate_share_dynamics(d);
  const auto kappa = kappa_from_stderr(endow.sigma_c, static_cast<double>(endow.n_obs));

  ModelConfig fitted = table1_config();
  fitted.endowment = {endow.mu_c, endow.sigma_c};
  fitted.share = std::make_shared<MeanRevertingQuadratic>(share.lambda, share.omega_bar, share.nu);
  fitted.rho = share.rho;
  fitted.ambiguity.kappa = kappa.kappa;
  Run run("calibrate", g, fitted);
  run.option("data", o.data);
  run.option("payout", o.payout);
  run.option("drift", o.drift);
  const json doc = {
      {"years", {d.year.front(), d.year.back()}},
      {"endowment", {{"mu_c", endow.mu_c}, {"sigma_c", endow.sigma_c}, {"n_obs", endow.n_obs},
                     {"convention", o.drift}}},
      {"share", {{"lambda", share.lambda}, {"omega_bar", share.omega_bar}, {"nu", share.nu},
                 {"rho", share.rho}, {"log_likelihood", share.log_likelihood},
                 {"converged_starts", share.converged_starts}}},
      {"kappa", {{"half_width", kappa.half_width}, {"kappa", kappa.kappa}}},
      {"config", config_to_json(fitted)},
  };
  run.write_json("calibrate.json", doc);
  run.write_manifest();
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_match(const GlobalOptions& g, const ModelOverrides& m, const MatchOptions& o) {
  const ModelConfig base = load(g, m);
  Run run("match", g, base);
  run.option("theta_star", o.theta_star);
  run.option("premium", o.premium);
  run.option("pd", o.pd);
  const auto sm = share_moments(stationary_density(base.share, Grid(g.grid_n)));
  CalibrationTargets t;
  t.premium = o.premium;
  t.pd = o.pd;
  const auto r = match_preferences(t, o.theta_star, base, sm);
  const json doc = {{"theta_star", o.theta_star},
                    {"gamma", r.gamma},
                    {"phi", r.phi},
                    {"delta", r.delta},
                    {"premium_residual", r.premium_residual},
                    {"pd_residual", r.pd_residual},
                    {"iterations", r.iterations},
                    {"method", r.method}};
  run.write_json("match.json", doc);
  run.write_manifest();
  std::cout << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_table(const GlobalOptions& g, const ModelOverrides& m, const TableOptions& t) {
  const ModelConfig base = load(g, m);
  Run run("table", g, base);
  const auto thetas = parse_grid(t.theta_grid);
  run.option("theta_grid", thetas);
  run.option("premium", t.premium);
  run.option("pd", t.pd);
  CsvWriter csv(run.output("table.csv"),
                {"theta", "gamma", "phi", "premium", "vol", "pd", "sd_log_pd", "r_f"});
  json errors = json::array();
  if (!thetas.empty()) {
    const auto density = stationary_density(base.share, Grid(g.grid_n));
    const auto sm = share_moments(density);
    for (double theta : thetas) {
      try {
        CalibrationTargets targets;
        targets.premium = t.premium;
        targets.pd = t.pd;
        const auto r = match_preferences(targets, theta, base, sm);
        ModelConfig c = base;
        c.preferences = {r.phi, r.gamma};
        const auto e = equilibrium_for_theta(c, theta);
        const auto sol = solve_prices(c, e, {g.grid_n});
        const auto um = unconditional_moments(c, e, sol, density);
        csv.row({theta, r.gamma, r.phi, um.premium, um.vol, um.pd, um.sd_log_pd, um.r_f});
      } catch (const Error& e) {
        std::cerr << "theta " << theta << ": " << to_string(e.kind()) << ": " << e.what()
                  << '\n';
        errors.push_back({{"theta", theta}, {"kind", to_string(e.kind())}, {"message", e.what()}});
      }
    }
  }
  run.diagnostic("errors", errors);
  run.write_manifest();
  return errors.empty() ? kExitOk : kExitNumerical;
}

int cmd_figures(const GlobalOptions& g, const ModelOverrides& m, const FigureOptions& f) {
  const ModelConfig base = load(g, m);
  Run run("figures", g, base);
  run.option("id", f.id);
  if (f.id == "pd-premium-vol") {
    figure_pd_premium_vol(run, base);
  } else if (f.id == "elasticity-rho") {
    figure_elasticity(run, base, true);
  } else if (f.id == "elasticity-delta") {
    figure_elasticity(run, base, false);
  } else if (f.id == "premium-theta") {
    figure_premium_theta(run, base);
  } else if (f.id == "share-history") {
    run.option("data", f.data);
    run.option("payout", f.payout);
    figure_share_history(run, f);
  } else {
    fail(ErrorKind::UnknownFigure,
         "unknown figure '" + f.id +
             "'; expected pd-premium-vol, elasticity-rho, elasticity-delta, premium-theta or "
             "share-history");
  }
  run.write_manifest();
  return kExitOk;
}

}  // namespace ameu::cli
