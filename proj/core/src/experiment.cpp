#include "nsfl/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nsfl/error.hpp"
#include "nsfl/persist.hpp"

namespace nsfl {

std::string to_string(FamilyKind f) { return f == FamilyKind::stationary ? "stationary" : "traveling"; }
std::string to_string(WallBc b) { return b == WallBc::slip ? "slip" : "noslip"; }

EulerSolution euler_solution_for(const ExperimentConfig& cfg) {
  const DensityProfile prof = cosine_profile(cfg.amplitude);
  if (cfg.family == FamilyKind::stationary) return stationary_family(cfg.gamma, cfg.p0, prof);
  return traveling_family(cfg.gamma, cfg.p0, cfg.speed, prof);
}

GasModel gas_for(const ExperimentConfig& cfg, const EulerSolution& sol) {
  if (cfg.z_threshold) return GasModel(cfg.gamma, *cfg.z_threshold);
  return gas_for(sol, cfg.z_safety);
}

ConvergenceVerdict convergence_assert(std::span<const double> series, double ratio_threshold) {
  ConvergenceVerdict v;
  std::ostringstream os;
  if (series.size() < 3) {
    os << "need at least 3 successful levels, got " << series.size();
    v.detail = os.str();
    return v;
  }
  v.monotone = true;
  for (std::size_t k = 1; k < series.size(); ++k)
    if (!(series[k] < series[k - 1])) v.monotone = false;
  v.ratio = series.front() > 0.0 ? series.back() / series.front() : 1.0;
  v.pass = v.monotone && v.ratio < ratio_threshold;
  os << (v.monotone ? "strictly decreasing" : "not strictly decreasing") << ", last/first = " << v.ratio
     << " (threshold " << ratio_threshold << ")";
  v.detail = os.str();
  return v;
}

namespace {

struct L1Errors {
  double rho = 0.0, rhoe = 0.0, mom = 0.0;
};

L1Errors l1_errors(const GasModel& gas, const EulerSolution& sol, const Snapshot& s) {
  L1Errors e;
  for (int j = 0; j < s.grid.ny; ++j) {
    for (int i = 0; i < s.grid.nx; ++i) {
      const Primitive& w = s.w(i, j);
      const EulerPoint p = sol.at(s.time, s.grid.xc(i), s.grid.yc(j));
      e.rho += std::abs(w.rho - p.rho);
      e.rhoe += std::abs(w.rho * internal_energy(gas, ThermoState(w.rho, w.theta)) - p.rho * p.e);
      e.mom += std::hypot(w.rho * w.u - p.rho * p.u, w.rho * w.v - p.rho * p.v);
    }
  }
  const double da = s.grid.cell_area();
  e.rho *= da;
  e.rhoe *= da;
  e.mom *= da;
  return e;
}

}  // namespace

LevelReport run_level(const ExperimentConfig& cfg, const ScheduleLevel& level, int nx, int ny, bool with_gap) {
  using clock = std::chrono::steady_clock;
  const auto t_start = clock::now();

  LevelReport rep;
  rep.level = level;
  rep.nx = nx;
  rep.ny = ny;

  if (nx % ny != 0) throw InvalidParameter("nx must be a multiple of ny so that the profile is periodic in x");
  const Grid grid(nx, ny);
  const EulerSolution sol = euler_solution_for(cfg);
  const GasModel gas = gas_for(cfg, sol);
  const TransportModel tr(cfg.alpha, 2, cfg.bulk_coeff);
  const BoundaryGeometry geom(grid.ly);
  (void)assign_temperature(gas, sol, grid, 0.0);

  TestTrio trio;
  trio.time_dependent = (cfg.family == FamilyKind::traveling);
  if (cfg.bc == WallBc::slip) {
    trio.eval = [sol](double t, double x, double y) {
      const EulerPoint p = sol.at(t, x, y);
      return TrioPoint{p.rho, (sol.gamma() - 1.0) * p.e, {p.u, p.v}};
    };
  } else {
    const Corrector corr = build_corrector(geom, sol, level.delta);
    trio.eval = [sol, corr](double t, double x, double y) {
      const EulerPoint p = sol.at(t, x, y);
      const Vec2 v = corr(t, x, y);
      return TrioPoint{p.rho, (sol.gamma() - 1.0) * p.e, {p.u - v[0], p.v - v[1]}};
    };
  }

  const double pert = cfg.perturbation * std::sqrt(level.mu);
  const FluidField init = initialize(gas, grid, level.a, [&](double x, double y) {
    const EulerPoint p = sol.at(0.0, x, y);
    const double bump = pert * std::sin(2.0 * std::numbers::pi * x) * std::sin(std::numbers::pi * y);
    return PointState{p.rho * (1.0 + bump), p.u, p.v, (gas.gamma() - 1.0) * p.e};
  });

  SolverOptions opts;
  opts.cfl = cfg.cfl;
  opts.limiter = cfg.limiter;
  opts.flux = cfg.flux;
  Stepper stepper(gas, tr, grid, BoundarySpec{cfg.bc}, Coefficients{level.mu, level.kappa, level.a}, opts);

  RunConfig rc;
  rc.t_final = cfg.t_final;
  const int ns = std::max(1, cfg.time_samples);
  for (int k = 0; k <= ns; ++k) rc.snapshot_times.push_back(cfg.t_final * k / ns);
  rc.entropy_tol_constant = cfg.entropy_tol_constant;

  ConsistencyAccumulator cons(gas, tr, level.mu, level.kappa, level.a);
  KatoAccumulator kato(geom, tr, grid, level.mu, level.delta);
  RelativeEnergyInequality ineq(gas, tr, trio, level.mu, level.kappa, level.a);
  bool started = false;
  L1Errors l1_acc, l1_last;
  double l1_last_t = -1.0;

  rep.sup_rel_energy = 0.0;
  auto observe = [&](const Snapshot& before, const Snapshot& after, double dt) {
    if (!started) {
      if (with_gap) ineq.start(before);
      const double e0 = with_gap ? ineq.rel_energy_now() : integrated_relative_energy(gas, level.a, before, trio);
      rep.sup_rel_energy = std::max(rep.sup_rel_energy, e0);
      started = true;
    }
    cons.add(before, after, dt);
    kato.add(before, after, dt);
    double e1;
    if (with_gap) {
      ineq.add(before, after, dt);
      e1 = ineq.rel_energy_now();
    } else {
      e1 = integrated_relative_energy(gas, level.a, after, trio);
    }
    rep.sup_rel_energy = std::max(rep.sup_rel_energy, e1);
    rep.final_rel_energy = e1;
    if (l1_last_t != before.time) l1_last = l1_errors(gas, sol, before);
    const L1Errors nxt = l1_errors(gas, sol, after);
    l1_acc.rho += 0.5 * dt * (l1_last.rho + nxt.rho);
    l1_acc.rhoe += 0.5 * dt * (l1_last.rhoe + nxt.rhoe);
    l1_acc.mom += 0.5 * dt * (l1_last.mom + nxt.mom);
    l1_last = nxt;
    l1_last_t = after.time;
  };

  RunResult res = run(stepper, init, rc, observe);
  rep.ok = !res.failed;
  rep.failure = res.failure;
  rep.steps = res.steps;
  rep.l1_rho_err = l1_acc.rho;
  rep.l1_rhoe_err = l1_acc.rhoe;
  rep.l1_mom_err = l1_acc.mom;
  rep.consistency = cons.report();
  rep.consistency_constants = fitted_consistency_constants(rep.consistency, cfg.epsilon);
  rep.kato = kato.report();
  rep.kato_selected = cfg.alpha >= 1.0 ? rep.kato.alpha1 : rep.kato.conditional;
  rep.min_entropy_margin = res.min_entropy_margin;
  rep.gap_evaluated = with_gap;

  if (!res.monitors.empty()) {
    const auto& m0 = res.monitors.front();
    const auto& m1 = res.monitors.back();
    rep.mass_drift = std::abs(m1.mass - m0.mass) / std::abs(m0.mass);
    rep.energy_drift = std::abs(m1.energy - m0.energy) / std::abs(m0.energy);
    rep.min_rho = std::numeric_limits<double>::infinity();
    rep.min_theta = std::numeric_limits<double>::infinity();
    for (const auto& m : res.monitors) {
      rep.min_rho = std::min(rep.min_rho, m.min_rho);
      rep.min_theta = std::min(rep.min_theta, m.min_theta);
    }
  }

  const auto& gaps = ineq.series();
  std::size_t gi = 0;
  for (const Snapshot& s : res.snapshots) {
    TimeSample ts;
    ts.time = s.time;
    ts.rel_energy = integrated_relative_energy(gas, level.a, s, trio);
    if (with_gap) {
      while (gi < gaps.size() && gaps[gi].time < s.time) ++gi;
      if (gi < gaps.size() && gaps[gi].time == s.time) {
        ts.gap_lhs = gaps[gi].lhs;
        ts.gap_rhs = gaps[gi].rhs;
      }
    }
    auto mit = std::find_if(res.monitors.begin(), res.monitors.end(), [&](const MonitorSample& m) { return m.time == s.time; });
    if (mit != res.monitors.end()) {
      ts.mass = mit->mass;
      ts.energy = mit->energy;
      ts.min_rho = mit->min_rho;
      ts.min_theta = mit->min_theta;
    }
    rep.series.push_back(ts);
    if (rep.chains_ok) {
      try {
        verify_chains(consistency_chains(tr, s, level.mu, level.kappa, level.a, cfg.epsilon), level.n);
      } catch (const BoundViolation& e) {
        rep.chains_ok = false;
        rep.chain_failure = e.what();
      }
    }
  }
  if (res.steps == 0 && !res.snapshots.empty()) {
    rep.sup_rel_energy = rep.final_rel_energy = rep.series.front().rel_energy;
  }
  if (cfg.write_snapshots) rep.snapshots = std::move(res.snapshots);

  const double secs = std::chrono::duration<double>(clock::now() - t_start).count();
  rep.wall_seconds = cfg.deterministic ? 0.0 : secs;
  return rep;
}

namespace {

void attach_gap_tolerance(LevelReport& fine, const LevelReport& coarse) {
  fine.min_gap_margin = std::numeric_limits<double>::infinity();
  for (auto& s : fine.series) {
    auto it = std::find_if(coarse.series.begin(), coarse.series.end(),
                           [&](const TimeSample& c) { return std::abs(c.time - s.time) < 1e-12; });
    const double scale = std::abs(s.gap_lhs) + std::abs(s.gap_rhs);
    const double floor = 1e-12 * scale + 1e-14;
    s.gap_tol = floor;
    if (it != coarse.series.end() && coarse.ok)
      s.gap_tol += std::abs((s.gap_rhs - s.gap_lhs) - (it->gap_rhs - it->gap_lhs));
    fine.min_gap_margin = std::min(fine.min_gap_margin, (s.gap_rhs - s.gap_lhs) + s.gap_tol);
  }
}

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& cfg, double ratio_threshold) {
  ExperimentReport rep;
  rep.config = cfg;
  if (cfg.levels < 1) throw InvalidParameter("need at least one level");
  rep.schedule = build_schedule(cfg.mu0, cfg.alpha, std::max(2, cfg.levels), cfg.schedule);
  rep.schedule.levels.resize(static_cast<std::size_t>(cfg.levels));

  for (const auto& lvl : rep.schedule.levels) {
    LevelReport lr = run_level(cfg, lvl, cfg.nx, cfg.ny, cfg.gap);
    if (cfg.gap && cfg.two_grid) {
      ExperimentConfig coarse_cfg = cfg;
      coarse_cfg.write_snapshots = false;
      const LevelReport coarse = run_level(coarse_cfg, lvl, cfg.nx / 2, cfg.ny / 2, true);
      attach_gap_tolerance(lr, coarse);
    }
    if (!lr.ok) rep.solver_failure = true;
    rep.levels.push_back(std::move(lr));
  }

  if (cfg.bc == WallBc::no_slip && cfg.family == FamilyKind::traveling) {
    const std::array<double, 3> deltas{0.2, 0.1, 0.05};
    const std::array<double, 3> times{0.0, 0.5 * cfg.t_final, cfg.t_final};
    // the corrector is analytic, so its sup norms are sampled finer than the solver grid
    rep.corrector = corrector_delta_sweep(BoundaryGeometry(1.0), euler_solution_for(cfg),
                                          Grid(4 * cfg.nx, 4 * cfg.ny), deltas, times);
  }

  std::vector<ConsistencyReport> cons;
  std::vector<double> sup;
  std::array<std::vector<double>, 3> l1;
  for (const auto& l : rep.levels) {
    if (!l.ok) continue;
    cons.push_back(l.consistency);
    sup.push_back(l.sup_rel_energy);
    l1[0].push_back(l.l1_rho_err);
    l1[1].push_back(l.l1_rhoe_err);
    l1[2].push_back(l.l1_mom_err);
  }
  rep.consistency = consistency_bound_check(cons, cfg.epsilon);
  rep.convergence = convergence_assert(sup, ratio_threshold);
  for (int k = 0; k < 3; ++k) {
    bool dec = l1[k].size() >= 2;
    for (std::size_t m = 1; m < l1[k].size(); ++m)
      if (!(l1[k][m] < l1[k][m - 1])) dec = false;
    rep.l1_decreasing[k] = dec;
  }

  if (cfg.fine_check && !rep.schedule.levels.empty()) {
    ExperimentConfig fine_cfg = cfg;
    fine_cfg.write_snapshots = false;
    rep.fine = run_level(fine_cfg, rep.schedule.levels.back(), 2 * cfg.nx, 2 * cfg.ny, false);
  }

  if (!cfg.out_dir.empty()) persist(rep, cfg.out_dir);
  return rep;
}

}  // namespace nsfl
