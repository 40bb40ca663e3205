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

#include <benchmark/benchmark.h>

#include <boost/random/normal_distribution.hpp>

#include "ameu/calibration.hpp"
#include "ameu/equilibrium.hpp"
#include "ameu/moments.hpp"
#include "ameu/ode.hpp"
#include "ameu/random.hpp"
#include "ameu/stochastic.hpp"

namespace {

using namespace ameu;

void BM_SolvePrices(benchmark::State& state) {
  const ModelConfig c = table1_config(5.0, 0.5);
  const auto e = build_equilibrium(c);
  const SolveOptions o{static_cast<std::size_t>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(solve_prices(c, e, o));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SolvePrices)->RangeMultiplier(4)->Range(500, 32000)->Complexity(benchmark::oN);

void BM_StationaryDensity(benchmark::State& state) {
  const ModelConfig c = table1_config();
  const Grid g(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(stationary_density(c.share, g));
}
BENCHMARK(BM_StationaryDensity)->Arg(2000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_FeynmanKac(benchmark::State& state) {
  const ModelConfig c = table1_config(5.0, 0.5);
  const auto e = build_equilibrium(c);
  FeynmanKacOptions o;
  o.n_paths = static_cast<std::size_t>(state.range(0));
  o.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(feynman_kac_estimate(c, e, 0.1, o));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_FeynmanKac)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_PhiloxNormal(benchmark::State& state) {
  PhiloxStream rng(1, 0);
  boost::random::normal_distribution<double> normal;
  for (auto _ : state) benchmark::DoNotOptimize(normal(rng));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_PhiloxNormal);

void BM_MatchPreferences(benchmark::State& state) {
  const ModelConfig base = table1_config();
  const auto sm = share_moments(stationary_density(base.share, Grid(2000)));
  for (auto _ : state) benchmark::DoNotOptimize(match_preferences({}, -0.3, base, sm));
}
BENCHMARK(BM_MatchPreferences);

}  // namespace

BENCHMARK_MAIN();
