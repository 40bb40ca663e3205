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

#ifndef AMEU_TOOLS_COMMANDS_HPP
#define AMEU_TOOLS_COMMANDS_HPP

#include <optional>
#include <string>

#include "run.hpp"

namespace ameu::cli {

/// Per-subcommand overrides of the loaded configuration. A given theta_star
/// is used as a primitive in place of the kappa/alpha construction.
struct ModelOverrides {
  std::optional<double> gamma;
  std::optional<double> phi;
  std::optional<double> alpha;
  std::optional<double> theta_star;
};

struct SimulateOptions {
  std::optional<double> theta;  // defaults to the equilibrium theta*
  double horizon = 50.0;
  double dt = 1.0 / 252.0;
  std::size_t paths = 4;
  std::size_t record_every = 21;
};

struct CalibrateOptions {
  std::string data;
  double payout = 0.5;
  std::string drift = "arithmetic";
};

struct MatchOptions {
  double theta_star = 0.0;
  double premium = 0.039;
  double pd = 21.1;
};

struct TableOptions {
  std::string theta_grid = "0,-0.05,-0.1,-0.15,-0.2,-0.25,-0.3,-0.35,-0.4,-0.45,-0.5,-0.55,-0.6";
  double premium = 0.039;
  double pd = 21.1;
};

struct FigureOptions {
  std::string id;
  std::string data;  // share-history only
  double payout = 0.5;
};

int cmd_validate(const GlobalOptions& g, const ModelOverrides& m);
int cmd_equilibrium(const GlobalOptions& g, const ModelOverrides& m);
int cmd_solve(const GlobalOptions& g, const ModelOverrides& m);
int cmd_premium_curve(const GlobalOptions& g, const ModelOverrides& m);
int cmd_simulate(const GlobalOptions& g, const ModelOverrides& m, const SimulateOptions& s);
int cmd_invariant(const GlobalOptions& g, const ModelOverrides& m);
int cmd_moments(const GlobalOptions& g, const ModelOverrides& m);
int cmd_calibrate(const GlobalOptions& g, const CalibrateOptions& c);
int cmd_match(const GlobalOptions& g, const ModelOverrides& m, const MatchOptions& o);
int cmd_table(const GlobalOptions& g, const ModelOverrides& m, const TableOptions& t);
int cmd_figures(const GlobalOptions& g, const ModelOverrides& m, const FigureOptions& f);

}  // namespace ameu::cli

#endif  // AMEU_TOOLS_COMMANDS_HPP
