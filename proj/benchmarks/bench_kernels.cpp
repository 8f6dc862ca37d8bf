#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "nsfl/euler_reference.hpp"
#include "nsfl/relative_energy.hpp"
#include "nsfl/schedule.hpp"
#include "nsfl/solver.hpp"
#include "nsfl/thermodynamics.hpp"

namespace {

std::vector<nsfl::ThermoState> random_states(std::size_t n) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> lu(-2.0, 2.0);
  std::vector<nsfl::ThermoState> out;
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(std::exp(lu(rng)), std::exp(lu(rng)));
  return out;
}

void BM_ThermoDerivatives(benchmark::State& state) {
  const nsfl::GasModel gas(state.range(0) == 0 ? 1.4 : 2.0, 3.0);
  const auto states = random_states(1024);
  for (auto _ : state)
    for (const auto& s : states) benchmark::DoNotOptimize(nsfl::thermo_derivatives(gas, s));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(states.size()));
}
BENCHMARK(BM_ThermoDerivatives)->Arg(0)->Arg(1);

void BM_TemperatureFromEnergy(benchmark::State& state) {
  const nsfl::GasModel gas(1.4, 3.0);
  const double a = state.range(0) == 0 ? 0.0 : 1e-2;
  const auto states = random_states(1024);
  std::vector<double> energy;
  for (const auto& s : states) energy.push_back(s.rho * nsfl::internal_energy(gas, s) + a * std::pow(s.theta, 4));
  for (auto _ : state)
    for (std::size_t k = 0; k < states.size(); ++k)
      benchmark::DoNotOptimize(nsfl::temperature_from_energy(gas, a, states[k].rho, energy[k]));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(states.size()));
}
BENCHMARK(BM_TemperatureFromEnergy)->Arg(0)->Arg(1);

void BM_Step(benchmark::State& state) {
  const int ny = static_cast<int>(state.range(0));
  const nsfl::Grid grid(2 * ny, ny);
  const auto sol = nsfl::stationary_family(1.4, 1.0, nsfl::cosine_profile(0.2));
  const nsfl::GasModel gas = nsfl::gas_for(sol);
  const auto level = nsfl::build_schedule(0.1, 1.0, 2).levels.front();
  nsfl::Stepper stepper(gas, nsfl::TransportModel(1.0), grid, {nsfl::WallBc::no_slip},
                        {level.mu, level.kappa, level.a});
  nsfl::FluidField f = nsfl::initialize(gas, grid, level.a, [&](double x, double y) {
    const auto p = sol.at(0.0, x, y);
    return nsfl::PointState{p.rho, p.u, p.v, 0.4 * p.e};
  });
  const double dt = stepper.stable_dt(f);
  for (auto _ : state) {
    nsfl::FluidField g = f;
    stepper.advance(g, dt);
    benchmark::DoNotOptimize(g.q(0, 0));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(grid.cells()));
}
BENCHMARK(BM_Step)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_RelativeEnergy(benchmark::State& state) {
  const nsfl::GasModel gas(1.4, 3.0);
  const auto states = random_states(1024);
  const nsfl::TrioPoint trio{1.0, 1.0, {0.1, 0.0}};
  for (auto _ : state)
    for (const auto& s : states)
      benchmark::DoNotOptimize(nsfl::augmented_relative_energy(gas, 1e-3, s, {0.2, 0.1}, trio));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(states.size()));
}
BENCHMARK(BM_RelativeEnergy);

}  // namespace

BENCHMARK_MAIN();
