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

#include <CLI11.hpp>
#include <functional>
#include <iostream>

#include "commands.hpp"

namespace {

using namespace ameu::cli;

void add_model_overrides(CLI::App* sub, ModelOverrides& m, bool with_theta = true) {
  sub->add_option("--gamma", m.gamma, "Override relative risk aversion");
  sub->add_option("--phi", m.phi, "Override the discount rate");
  sub->add_option("--alpha", m.alpha, "Override the ambiguity-aversion weight");
  if (with_theta) {
    sub->add_option("--theta-star", m.theta_star,
                    "Use this density generator instead of the kappa/alpha construction");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium asset pricing under alpha-maxmin expected utility", "ameu"};
  app.set_version_flag("--version", AMEU_VERSION);
  app.require_subcommand(1);

  GlobalOptions g;
  std::string out = ".";
  app.add_option("--config", g.config_path, "Model configuration JSON")
      ->check(CLI::ExistingFile);
  app.add_option("--out", out, "Output directory");
  app.add_option("--seed", g.seed, "Seed for Monte Carlo subcommands");
  app.add_option("--grid-n", g.grid_n, "Interior grid points")->check(CLI::Range(16, 1 << 22));

  ModelOverrides m;
  SimulateOptions sim;
  CalibrateOptions cal;
  MatchOptions mat;
  TableOptions tab;
  FigureOptions fig;
  std::function<int()> action;

  auto* validate = app.add_subcommand("validate", "Check the model assumptions");
  add_model_overrides(validate, m, false);
  validate->callback([&] { action = [&] { return cmd_validate(g, m); }; });

  auto* equilibrium = app.add_subcommand("equilibrium", "Equilibrium constants as JSON");
  add_model_overrides(equilibrium, m);
  equilibrium->callback([&] { action = [&] { return cmd_equilibrium(g, m); }; });

  auto* solve = app.add_subcommand("solve", "Price-endowment ratios on the grid");
  add_model_overrides(solve, m);
  solve->callback([&] { action = [&] { return cmd_solve(g, m); }; });

  auto* curve = app.add_subcommand("premium-curve", "Conditional premium, volatility and pd");
  add_model_overrides(curve, m);
  curve->callback([&] { action = [&] { return cmd_premium_curve(g, m); }; });

  auto* simulate = app.add_subcommand("simulate", "Simulated (log C, omega) paths");
  add_model_overrides(simulate, m);
  simulate->add_option("--theta", sim.theta, "Drift tilt of the simulated prior");
  simulate->add_option("--horizon", sim.horizon, "Years")->check(CLI::PositiveNumber);
  simulate->add_option("--dt", sim.dt, "Time step in years")->check(CLI::PositiveNumber);
  simulate->add_option("--paths", sim.paths, "Number of paths")->check(CLI::PositiveNumber);
  simulate->add_option("--record-every", sim.record_every, "Store every k-th step")
      ->check(CLI::PositiveNumber);
  simulate->callback([&] { action = [&] { return cmd_simulate(g, m, sim); }; });

  auto* invariant = app.add_subcommand("invariant", "Stationary density of the share");
  add_model_overrides(invariant, m, false);
  invariant->callback([&] { action = [&] { return cmd_invariant(g, m); }; });

  auto* moments = app.add_subcommand("moments", "Unconditional moments as JSON");
  add_model_overrides(moments, m);
  moments->callback([&] { action = [&] { return cmd_moments(g, m); }; });

  auto* calibrate = app.add_subcommand("calibrate", "Estimate parameters from annual data");
  calibrate->add_option("--data", cal.data, "CSV of annual macro data")
      ->required()
      ->check(CLI::ExistingFile);
  calibrate->add_option("--payout", cal.payout, "Dividend payout ratio");
  calibrate->add_option("--drift", cal.drift, "arithmetic or log");
  calibrate->callback([&] { action = [&] { return cmd_calibrate(g, cal); }; });

  auto* match = app.add_subcommand("match", "Solve for (gamma, phi) matching targets");
  add_model_overrides(match, m, false);
  match->add_option("--theta-star", mat.theta_star, "Density generator")->required();
  match->add_option("--premium", mat.premium, "Target unconditional premium");
  match->add_option("--pd", mat.pd, "Target price-dividend ratio");
  match->callback([&] { action = [&] { return cmd_match(g, m, mat); }; });

  auto* table = app.add_subcommand("table", "Calibrated unconditional-moment table");
  add_model_overrides(table, m, false);
  table->add_option("--theta-grid", tab.theta_grid, "Comma-separated theta values");
  table->add_option("--premium", tab.premium, "Target unconditional premium");
  table->add_option("--pd", tab.pd, "Target price-dividend ratio");
  table->callback([&] { action = [&] { return cmd_table(g, m, tab); }; });

  auto* figures = app.add_subcommand("figures", "CSV bundles behind the figures");
  add_model_overrides(figures, m, false);
  figures->add_option("id", fig.id,
                      "pd-premium-vol, elasticity-rho, elasticity-delta, premium-theta or "
                      "share-history")
      ->required();
  figures->add_option("--data", fig.data, "CSV of annual macro data (share-history)");
  figures->add_option("--payout", fig.payout, "Dividend payout ratio (share-history)");
  figures->callback([&] { action = [&] { return cmd_figures(g, m, fig); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }
  g.out = out;

  try {
    return action();
  } catch (const ameu::Error& e) {
    std::cerr << "error: " << ameu::to_string(e.kind()) << ": " << e.what() << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}
