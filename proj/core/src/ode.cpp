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

#include "ameu/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "ameu/error.hpp"
#include "ameu/tridiagonal.hpp"

namespace ameu {

namespace {

// Three-point stencil anchored at `start`: f'(x_i) ~ sum_j d1[j] f[start + j],
// and likewise d2 for f''.
struct Stencil {
  std::size_t start = 0;
  std::array<double, 3> d1{};
  std::array<double, 3> d2{};
  double diffusion = 0.0;  // sigma^2 / 2, zero on boundary rows
  double drift = 0.0;      // mu + k sigma
  bool upwinded = false;
};

std::vector<Stencil> build_stencils(const ShareDynamics& share, double k,
                                    const Grid& grid, bool upwind) {
  const std::size_t n = grid.size();
  const double h = grid.spacing();
  std::vector<Stencil> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    const double sig = share.sigma(x);
    Stencil& st = rows[i];
    st.drift = share.mu(x) + k * sig;
    if (i == 0) {
      st.start = 0;
      st.d1 = {-1.5 / h, 2.0 / h, -0.5 / h};
      continue;
    }
    if (i + 1 == n) {
      st.start = n - 3;
      st.d1 = {0.5 / h, -2.0 / h, 1.5 / h};
      continue;
    }
    st.start = i - 1;
    st.diffusion = 0.5 * sig * sig;
    st.d2 = {1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h)};
    const double peclet = std::abs(st.drift) * h / st.diffusion;
    if (upwind && !(peclet <= 2.0)) {
      st.upwinded = true;
      st.d1 = st.drift > 0.0 ? std::array{0.0, -1.0 / h, 1.0 / h}
                             : std::array{-1.0 / h, 1.0 / h, 0.0};
    } else {
      st.d1 = {-0.5 / h, 0.0, 0.5 / h};
    }
  }
  return rows;
}

// Coefficients of row i in the full (banded) operator.
std::array<double, 3> row_coefficients(const Stencil& st, std::size_t i,
                                       double delta) {
  std::array<double, 3> a{};
  for (std::size_t j = 0; j < 3; ++j) {
    a[j] = st.diffusion * st.d2[j] + st.drift * st.d1[j];
  }
  a[i - st.start] -= delta;
  return a;
}

double apply(const std::array<double, 3>& w, const std::vector<double>& f,
             std::size_t start) {
  return w[0] * f[start] + w[1] * f[start + 1] + w[2] * f[start + 2];
}

// Max |L f + source| relative to max(|delta f|, |source|).
double relative_residual(const std::vector<Stencil>& rows, const Grid& grid,
                         const std::vector<double>& f, double delta,
                         bool stock) {
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Stencil& st = rows[i];
    const double source = stock ? grid[i] : 1.0 - grid[i];
    const double lf = st.diffusion * apply(st.d2, f, st.start) +
                      st.drift * apply(st.d1, f, st.start) - delta * f[i];
    worst = std::max(worst, std::abs(lf + source));
    scale = std::max({scale, std::abs(delta * f[i]), std::abs(source)});
  }
  return worst / scale;
}

void check_residual(double residual, double tol, const char* which) {
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << which << " residual " << residual << " exceeds tolerance " << tol;
    fail(ErrorKind::ResidualTooLarge, os.str());
  }
}

}  // namespace

PriceSolution solve_phi_s(ShareDynamicsPtr share, double k, double delta,
                          const Grid& grid, const SolveOptions& options) {
  if (!share) fail(ErrorKind::InvalidArgument, "share dynamics missing");
  if (!(delta > 0.0)) throw NonpositivePropensity("delta", delta);

  const std::size_t n = grid.size();
  const std::vector<Stencil> rows =
      build_stencils(*share, k, grid, options.upwind);

  TridiagonalSystem sys(n);
  std::vector<std::array<double, 3>> full(n);
  for (std::size_t i = 0; i < n; ++i) {
    full[i] = row_coefficients(rows[i], i, delta);
    sys.rhs[i] = -grid[i];
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sys.lower[i] = full[i][0];
    sys.diag[i] = full[i][1];
    sys.upper[i] = full[i][2];
  }
  // Boundary rows reach one point beyond the band; eliminate it with the
  // neighbouring interior row.
  {
    const auto& b = full[0];
    const auto& nb = full[1];
    if (nb[2] == 0.0) fail(ErrorKind::SingularSystem, "degenerate first row");
    const double m = b[2] / nb[2];
    sys.diag[0] = b[0] - m * nb[0];
    sys.upper[0] = b[1] - m * nb[1];
    sys.rhs[0] = -grid[0] + m * grid[1];
  }
  {
    const auto& b = full[n - 1];
    const auto& nb = full[n - 2];
    if (nb[0] == 0.0) fail(ErrorKind::SingularSystem, "degenerate last row");
    const double m = b[0] / nb[0];
    sys.lower[n - 1] = b[1] - m * nb[1];
    sys.diag[n - 1] = b[2] - m * nb[2];
    sys.rhs[n - 1] = -grid[n - 1] + m * grid[n - 2];
  }

  PriceSolution sol;
  sol.grid = grid;
  sol.share = std::move(share);
  sol.k = k;
  sol.delta = delta;
  sol.phi_s = solve_tridiagonal(sys);
  for (const double v : sol.phi_s) {
    if (!std::isfinite(v)) fail(ErrorKind::SingularSystem, "non-finite solution");
  }

  const double h = grid.spacing();
  sol.d_phi_s.resize(n);
  sol.d2_phi_s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Stencil& st = rows[i];
    sol.d_phi_s[i] = apply(st.d1, sol.phi_s, st.start);
    sol.upwind_cells += st.upwinded ? 1 : 0;
    if (i == 0 || i + 1 == n) continue;
    sol.d2_phi_s[i] = apply(st.d2, sol.phi_s, st.start);
  }
  const auto& f = sol.phi_s;
  sol.d2_phi_s[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
  sol.d2_phi_s[n - 1] =
      (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);

  sol.residual_s = relative_residual(rows, grid, sol.phi_s, delta, true);
  check_residual(sol.residual_s, options.residual_tolerance, "stock equation");
  return sol;
}

PriceSolution solve_phi_s(const ModelConfig& config,
                          const EquilibriumConstants& constants,
                          const Grid& grid, const SolveOptions& options) {
  return solve_phi_s(config.share, config.cross_coefficient(), constants.delta,
                     grid, options);
}

PriceSolution phi_h_from_phi_s(PriceSolution sol, const SolveOptions& options) {
  if (sol.phi_s.size() != sol.grid.size()) {
    fail(ErrorKind::GridMismatch, "phi_s is not populated");
  }
  const double total = 1.0 / sol.delta;
  sol.phi_h.resize(sol.phi_s.size());
  for (std::size_t i = 0; i < sol.phi_s.size(); ++i) {
    sol.phi_h[i] = total - sol.phi_s[i];
  }
  const std::vector<Stencil> rows =
      build_stencils(*sol.share, sol.k, sol.grid, options.upwind);
  sol.residual_h =
      relative_residual(rows, sol.grid, sol.phi_h, sol.delta, false);
  check_residual(sol.residual_h, options.residual_tolerance,
                 "human-capital equation");
  return sol;
}

PriceSolution solve_prices(const ModelConfig& config,
                           const EquilibriumConstants& constants,
                           const SolveOptions& options) {
  const Grid grid(options.grid_n);
  return phi_h_from_phi_s(solve_phi_s(config, constants, grid, options),
                          options);
}

PricePoint evaluate(const PriceSolution& sol, double omega) {
  PricePoint p;
  p.omega = omega;
  p.phi_s = sol.grid.interpolate(sol.phi_s, omega);
  p.phi_h = sol.phi_h.empty() ? 1.0 / sol.delta - p.phi_s
                              : sol.grid.interpolate(sol.phi_h, omega);
  p.d_phi_s = sol.grid.interpolate(sol.d_phi_s, omega);
  p.d2_phi_s = sol.grid.interpolate(sol.d2_phi_s, omega);
  return p;
}

double elasticity(const PriceSolution& sol, double omega) {
  const PricePoint p = evaluate(sol, omega);
  return p.d_phi_s / p.phi_s;
}

std::vector<double> elasticity_values(const PriceSolution& sol) {
  std::vector<double> e(sol.phi_s.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = sol.d_phi_s[i] / sol.phi_s[i];
  }
  return e;
}

double closed_form_phi_s(double lambda, double omega_bar, double delta,
                         double omega) {
  return omega / (lambda + delta) +
         lambda * omega_bar / (delta * (lambda + delta));
}

double closed_form_phi_h(double lambda, double omega_bar, double delta,
                         double omega) {
  return (1.0 - omega) / (lambda + delta) +
         lambda * (1.0 - omega_bar) / (delta * (lambda + delta));
}

double closed_form_elasticity(double lambda, double omega_bar, double delta,
                              double omega) {
  return 1.0 / (omega + omega_bar * lambda / delta);
}

}  // namespace ameu
