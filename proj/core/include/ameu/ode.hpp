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

#ifndef AMEU_ODE_HPP
#define AMEU_ODE_HPP

#include <cstddef>
#include <vector>

#include "ameu/equilibrium.hpp"
#include "ameu/grid.hpp"
#include "ameu/params.hpp"

namespace ameu {

struct SolveOptions {
  std::size_t grid_n = 2000;
  double residual_tolerance = 1e-8;
  // First-order upwinding of f' in cells with Peclet number above 2.
  bool upwind = true;
};

/// Stock and human-capital price-endowment ratios on a grid.
///
/// Solves sigma^2/2 f'' + (mu + k sigma) f' - delta f + source = 0 with
/// source(x) = x for the stock and 1 - x for human capital.
struct PriceSolution {
  Grid grid{Grid::kMinPoints};
  ShareDynamicsPtr share;
  double k = 0.0;
  double delta = 0.0;
  std::vector<double> phi_s;
  std::vector<double> phi_h;
  std::vector<double> d_phi_s;
  std::vector<double> d2_phi_s;
  // Max discrete residual, relative to the magnitude of delta f and source.
  double residual_s = 0.0;
  double residual_h = 0.0;
  std::size_t upwind_cells = 0;
};

/// Values interpolated at a single state.
struct PricePoint {
  double omega = 0.0;
  double phi_s = 0.0;
  double phi_h = 0.0;
  double d_phi_s = 0.0;
  double d2_phi_s = 0.0;
};

/// Throws SingularSystem or ResidualTooLarge. phi_h is left empty.
PriceSolution solve_phi_s(ShareDynamicsPtr share, double k, double delta,
                          const Grid& grid, const SolveOptions& options = {});

PriceSolution solve_phi_s(const ModelConfig& config,
                          const EquilibriumConstants& constants,
                          const Grid& grid, const SolveOptions& options = {});

/// Fills phi_h = 1/delta - phi_s and checks its own equation.
/// Throws ResidualTooLarge.
PriceSolution phi_h_from_phi_s(PriceSolution solution,
                               const SolveOptions& options = {});

/// solve_phi_s followed by phi_h_from_phi_s.
PriceSolution solve_prices(const ModelConfig& config,
                           const EquilibriumConstants& constants,
                           const SolveOptions& options = {});

/// Throws OutOfRange outside the grid hull.
PricePoint evaluate(const PriceSolution& solution, double omega);

/// phi_s' / phi_s at omega. Throws OutOfRange outside the grid hull.
double elasticity(const PriceSolution& solution, double omega);

/// phi_s' / phi_s at every grid point.
std::vector<double> elasticity_values(const PriceSolution& solution);

/// Valid when (1 - gamma) rho = 0.
double closed_form_phi_s(double lambda, double omega_bar, double delta,
                         double omega);
double closed_form_phi_h(double lambda, double omega_bar, double delta,
                         double omega);
double closed_form_elasticity(double lambda, double omega_bar, double delta,
                              double omega);

}  // namespace ameu

#endif  // AMEU_ODE_HPP
