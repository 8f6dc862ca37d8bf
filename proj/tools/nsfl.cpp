#include <cmath>
#include <cstdio>
#include <iostream>
#include <random>
#include <vector>

#include <CLI11.hpp>

#include "nsfl/config.hpp"
#include "nsfl/error.hpp"
#include "nsfl/experiment.hpp"
#include "nsfl/persist.hpp"
#include "nsfl/thermodynamics.hpp"

namespace {

struct Flags {
  std::optional<double> gamma, alpha, mu0, speed, p0, tfinal;
  std::optional<int> levels;
  std::vector<int> grid;
  std::string bc, family, out, config;
  bool deterministic = false;
};

void add_common(CLI::App* app, Flags& f) {
  app->add_option("--gamma", f.gamma, "adiabatic exponent");
  app->add_option("--alpha", f.alpha, "viscosity growth exponent in [1/3, 1]");
  app->add_option("--mu0", f.mu0, "viscosity of level 0");
  app->add_option("--levels", f.levels, "number of schedule levels");
  app->add_option("--grid", f.grid, "cells NX NY")->expected(2);
  app->add_option("--bc", f.bc, "slip|noslip");
  app->add_option("--family", f.family, "stationary|traveling");
  app->add_option("--speed", f.speed, "traveling speed");
  app->add_option("--p0", f.p0, "background pressure");
  app->add_option("--tfinal", f.tfinal, "final time");
  app->add_option("--out", f.out, "output directory");
  app->add_option("--config", f.config, "JSON config file; its keys override flags");
  app->add_flag("--deterministic", f.deterministic, "zero wall clock fields so reports are reproducible");
}

nsfl::ExperimentConfig resolve(const Flags& f, nsfl::ExperimentConfig c) {
  if (f.gamma) c.gamma = *f.gamma;
  if (f.alpha) c.alpha = *f.alpha;
  if (f.mu0) c.mu0 = *f.mu0;
  if (f.levels) c.levels = *f.levels;
  if (f.grid.size() == 2) {
    c.nx = f.grid[0];
    c.ny = f.grid[1];
  }
  if (!f.bc.empty()) c.bc = nsfl::parse_bc(f.bc);
  if (!f.family.empty()) c.family = nsfl::parse_family(f.family);
  if (f.speed) c.speed = *f.speed;
  if (f.p0) c.p0 = *f.p0;
  if (f.tfinal) c.t_final = *f.tfinal;
  if (!f.out.empty()) c.out_dir = f.out;
  if (f.deterministic) c.deterministic = true;
  if (!f.config.empty()) c = nsfl::load_config(f.config, c);
  return c;
}

void print_levels(const nsfl::ExperimentReport& r) {
  std::printf("%3s %11s %11s %12s %12s %12s %12s %8s\n", "n", "mu", "kappa", "sup_E", "final_E", "l1_rho", "D_n",
              "steps");
  for (const auto& l : r.levels) {
    std::printf("%3d %11.4e %11.4e %12.5e %12.5e %12.5e %12.5e %8ld%s\n", l.level.n, l.level.mu, l.level.kappa,
                l.sup_rel_energy, l.final_rel_energy, l.l1_rho_err, l.consistency.dissipation, l.steps,
                l.ok ? "" : "  FAILED");
    if (!l.ok) std::printf("    %s\n", l.failure.c_str());
  }
}

int eos_check(const Flags& f) {
  const nsfl::ExperimentConfig c = resolve(f, {});
  const nsfl::GasModel gas(c.gamma, c.z_threshold.value_or(1.0));
  // states are drawn per branch, keeping the stencil clear of the seam Z = Z_
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> lr(-2.0, 2.0);
  double worst_gibbs = 0.0, worst_identity = 0.0;
  for (int branch = 0; branch < 2; ++branch) {
    int drawn = 0;
    while (drawn < 10000) {
      const nsfl::ThermoState st(std::exp(lr(rng)), std::exp(lr(rng)));
      const double w = gas.z_of(st.rho, st.theta) / gas.z_threshold();
      if ((branch == 0) != (w < 1.0) || std::abs(std::log(w)) < 0.05) continue;
      ++drawn;
      const auto g = nsfl::gibbs_residual(gas, st, 1e-4);
      worst_gibbs = std::max({worst_gibbs, std::abs(g.r1), std::abs(g.r2)});
      const double p = nsfl::pressure(gas, st);
      const double rule = (c.gamma - 1.0) * st.rho * nsfl::internal_energy(gas, st);
      worst_identity = std::max(worst_identity, std::abs(p - rule) / std::abs(p));
    }
  }
  std::vector<double> zs;
  for (int k = 0; k <= 2000; ++k) zs.push_back(std::pow(10.0, -4.0 + 8.0 * k / 2000.0));
  const auto stab = nsfl::stability_check(gas, zs);
  const bool pass = worst_gibbs < 1e-6 && worst_identity < 1e-13 && stab.min_dP > 0.0 && stab.min_margin > 0.0;
  std::printf("gamma %.6g  threshold %.6g\n", gas.gamma(), gas.z_threshold());
  std::printf("max gibbs residual    %.3e\n", worst_gibbs);
  std::printf("max closure deviation %.3e\n", worst_identity);
  std::printf("min P' %.3e  min stability margin %.3e\n", stab.min_dP, stab.min_margin);
  std::printf("%s\n", pass ? "PASS" : "FAIL");
  return pass ? 0 : 1;
}

int solve(const Flags& f) {
  nsfl::ExperimentConfig c = resolve(f, {});
  const auto sched = nsfl::build_schedule(c.mu0, c.alpha, std::max(2, c.levels), c.schedule);
  const auto& lvl = sched.levels.front();
  const nsfl::LevelReport l = nsfl::run_level(c, lvl, c.nx, c.ny, c.gap);
  std::printf("mu %.4e kappa %.4e a %.4e  steps %ld\n", lvl.mu, lvl.kappa, lvl.a, l.steps);
  std::printf("sup rel energy %.6e  mass drift %.3e  energy drift %.3e  min rho %.4f  min theta %.4f\n",
              l.sup_rel_energy, l.mass_drift, l.energy_drift, l.min_rho, l.min_theta);
  if (!c.out_dir.empty()) {
    nsfl::ExperimentReport r;
    r.config = c;
    r.schedule = sched;
    r.levels.push_back(l);
    nsfl::persist(r, c.out_dir);
  }
  if (!l.ok) {
    std::fprintf(stderr, "solver failure: %s\n", l.failure.c_str());
    return 3;
  }
  return 0;
}

int experiment(const Flags& f, bool kato) {
  nsfl::ExperimentConfig base;
  if (kato) {
    base.bc = nsfl::WallBc::no_slip;
    base.family = nsfl::FamilyKind::traveling;
  }
  const nsfl::ExperimentConfig c = resolve(f, base);
  const nsfl::ExperimentReport r = nsfl::run_experiment(c);
  print_levels(r);
  if (kato) {
    std::printf("%3s %12s %12s %12s %12s %12s  resolved\n", "n", "grad_S", "grad_m", "kato_1", "kato_2", "kato_3");
    for (const auto& l : r.levels)
      std::printf("%3d %12.5e %12.5e %12.5e %12.5e %12.5e  %s\n", l.level.n, l.kato.gradient[0], l.kato.gradient[1],
                  l.kato_selected[0], l.kato_selected[1], l.kato_selected[2], l.kato.layer_resolved ? "yes" : "no");
    if (r.corrector)
      std::printf("corrector: grad_n exponent %.3f  %s\n", r.corrector->grad_n_exponent,
                  r.corrector->pass ? "pass" : "fail");
  }
  std::printf("convergence: %s (%s)\n", r.convergence.pass ? "pass" : "fail", r.convergence.detail.c_str());
  std::printf("consistency: %s (%s)\n", r.consistency.pass ? "bounded" : "unbounded", r.consistency.detail.c_str());
  if (r.solver_failure) return 3;
  return r.convergence.pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vanishing-dissipation experiments for heat-conducting viscous gases"};
  app.require_subcommand(1);
  Flags f;
  auto* eos = app.add_subcommand("eos-check", "check the equation of state on random states");
  auto* sol = app.add_subcommand("solve", "single run at level 0 of the schedule");
  auto* exp = app.add_subcommand("experiment", "full schedule with convergence verdict");
  auto* kat = app.add_subcommand("kato", "no-slip schedule with boundary-layer functionals");
  for (auto* s : {eos, sol, exp, kat}) add_common(s, f);
  CLI11_PARSE(app, argc, argv);

  try {
    if (*eos) return eos_check(f);
    if (*sol) return solve(f);
    if (*exp) return experiment(f, false);
    if (*kat) return experiment(f, true);
  } catch (const nsfl::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
