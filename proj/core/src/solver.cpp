#include "nsfl/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "nsfl/error.hpp"

namespace nsfl {

namespace {

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

double limited_slope(Limiter lim, double dm, double dp) {
  switch (lim) {
    case Limiter::minmod:
      return minmod(dm, dp);
    case Limiter::mc:
      return minmod(minmod(2.0 * dm, 2.0 * dp), 0.5 * (dm + dp));
    case Limiter::none:
      return 0.5 * (dm + dp);
  }
  return 0.0;
}

// Face state in the frame of the face normal: un normal velocity, ut tangential.
struct FaceState {
  double rho, un, ut, p, eps;  // eps: internal energy density incl. radiation
};

struct Flux {
  double mass, mom_n, mom_t, energy;
};

Flux physical_flux(const FaceState& s) {
  const double en = 0.5 * s.rho * (s.un * s.un + s.ut * s.ut) + s.eps;
  return {s.rho * s.un, s.rho * s.un * s.un + s.p, s.rho * s.un * s.ut, (en + s.p) * s.un};
}

Flux hllc(const FaceState& l, const FaceState& r, double cl, double cr) {
  const double sl = std::min(l.un - cl, r.un - cr);
  const double sr = std::max(l.un + cl, r.un + cr);
  if (sl >= 0.0) return physical_flux(l);
  if (sr <= 0.0) return physical_flux(r);
  const double ml = l.rho * (sl - l.un);
  const double mr = r.rho * (sr - r.un);
  const double ss = (r.p - l.p + l.un * ml - r.un * mr) / (ml - mr);
  const FaceState& k = ss >= 0.0 ? l : r;
  const double sk = ss >= 0.0 ? sl : sr;
  const double mk = ss >= 0.0 ? ml : mr;
  const Flux f = physical_flux(k);
  const double ek = 0.5 * k.rho * (k.un * k.un + k.ut * k.ut) + k.eps;
  const double fac = mk / (sk - ss);
  const double e_star = fac * (ek / k.rho + (ss - k.un) * (ss + k.p / mk));
  return {f.mass + sk * (fac - k.rho), f.mom_n + sk * (fac * ss - k.rho * k.un),
          f.mom_t + sk * (fac * k.ut - k.rho * k.ut), f.energy + sk * (e_star - ek)};
}

Flux rusanov(const FaceState& l, const FaceState& r, double cl, double cr) {
  const double s = std::max(std::abs(l.un) + cl, std::abs(r.un) + cr);
  const Flux fl = physical_flux(l);
  const Flux fr = physical_flux(r);
  const double el = 0.5 * l.rho * (l.un * l.un + l.ut * l.ut) + l.eps;
  const double er = 0.5 * r.rho * (r.un * r.un + r.ut * r.ut) + r.eps;
  return {0.5 * (fl.mass + fr.mass) - 0.5 * s * (r.rho - l.rho),
          0.5 * (fl.mom_n + fr.mom_n) - 0.5 * s * (r.rho * r.un - l.rho * l.un),
          0.5 * (fl.mom_t + fr.mom_t) - 0.5 * s * (r.rho * r.ut - l.rho * l.ut),
          0.5 * (fl.energy + fr.energy) - 0.5 * s * (er - el)};
}

// Normal pressure on a wall face seen by interior state r (mirror image on the other side).
double wall_pressure(RiemannFlux kind, const FaceState& r, double c) {
  FaceState l = r;
  l.un = -r.un;
  l.ut = -r.ut;
  return (kind == RiemannFlux::hllc ? hllc(l, r, c, c) : rusanov(l, r, c, c)).mom_n;
}

Primitive mirrored(const Primitive& w, WallBc kind) {
  Primitive m = w;
  m.v = -w.v;
  if (kind == WallBc::no_slip) m.u = -w.u;
  return m;
}

}  // namespace

Stepper::Stepper(GasModel gas, TransportModel transport, Grid grid, BoundarySpec bc, Coefficients coeffs,
                 SolverOptions opts)
    : gas_(gas), transport_(transport), grid_(grid), bc_(bc), coeffs_(coeffs), opts_(opts),
      k1_(grid), k2_(grid), fx_(grid), fy_(grid), stage_{grid, 0.0, CellArray<Primitive>(grid)}, tmp_(grid) {
  if (coeffs.mu < 0.0 || coeffs.kappa < 0.0 || coeffs.a < 0.0)
    throw InvalidParameter("dissipation and radiation coefficients must be nonnegative");
  if (!(opts.cfl > 0.0 && opts.cfl <= 1.0)) throw InvalidParameter("CFL number must lie in (0, 1]");
}

Snapshot Stepper::snapshot(const FluidField& f) const {
  Snapshot s{grid_, f.time, CellArray<Primitive>(grid_)};
  fill_snapshot(f, s);
  return s;
}

void Stepper::fill_snapshot(const FluidField& f, Snapshot& out) const {
  out.grid = grid_;
  out.time = f.time;
  if (out.w.nx() != grid_.nx || out.w.ny() != grid_.ny) out.w = CellArray<Primitive>(grid_);
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      try {
        out.w(i, j) = primitive_from_conservative(gas_, coeffs_.a, f.q(i, j));
      } catch (const NonPhysicalState& e) {
        std::ostringstream os;
        os << "positivity lost in cell (" << i << ", " << j << ") at t=" << f.time << ": " << e.what();
        throw PositivityFailure(os.str(), i, j);
      }
    }
  }
  fill_ghosts(out.w);
}

void Stepper::fill_ghosts(CellArray<Primitive>& w) const {
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  for (int i = 0; i < nx; ++i) {
    for (int g = 1; g <= Grid::ghost; ++g) {
      w(i, -g) = mirrored(w(i, g - 1), bc_.kind);
      w(i, ny - 1 + g) = mirrored(w(i, ny - g), bc_.kind);
    }
  }
  for (int j = -Grid::ghost; j < ny + Grid::ghost; ++j) {
    for (int g = 1; g <= Grid::ghost; ++g) {
      w(-g, j) = w(nx - g, j);
      w(nx - 1 + g, j) = w(g - 1, j);
    }
  }
}

double Stepper::stable_dt(const Snapshot& s) const {
  const double h = grid_.h;
  const double a = coeffs_.a;
  double rate = 0.0;
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const Primitive& w = s.w(i, j);
      double r = (std::abs(w.u) + std::abs(w.v) + 2.0 * w.c) / h;
      double nu = 0.0;
      if (coeffs_.mu > 0.0)
        nu += coeffs_.mu * (2.0 * shear_viscosity(transport_, w.theta) + bulk_viscosity(transport_, w.theta)) / w.rho;
      if (coeffs_.kappa > 0.0) {
        const auto d = thermo_derivatives(gas_, ThermoState(w.rho, w.theta));
        const double cv = w.rho * d.e_theta + 4.0 * a * w.theta * w.theta * w.theta;
        nu += coeffs_.kappa * heat_conductivity(transport_, w.theta) / cv;
      }
      r += 4.0 * nu / (h * h);
      rate = std::max(rate, r);
    }
  }
  if (!(rate > 0.0) || !std::isfinite(rate)) throw CflViolation("no finite stable time step");
  return opts_.cfl / rate;
}

void Stepper::rhs(const Snapshot& s, CellArray<Conserved>& out) {
  const auto& w = s.w;
  const int nx = grid_.nx;
  const int ny = grid_.ny;
  const double h = grid_.h;
  const double a = coeffs_.a;
  const double mu = coeffs_.mu;
  const double kap = coeffs_.kappa;
  const Limiter lim = opts_.limiter;
  const RiemannFlux kind = opts_.flux;
  const bool viscous = mu > 0.0;
  const bool conductive = kap > 0.0;

  auto eps_of = [&](double p, double th) {
    const double t4 = a * th * th * th * th;
    return (p - t4 / 3.0) * gas_.inv_gm1() + t4;
  };

  // Face state at the face on the `side` (+1 right, -1 left) of cell c, with
  // neighbours m (behind) and n (ahead) along the sweep direction.
  auto face = [&](const Primitive& m, const Primitive& c, const Primitive& n, double side, bool xdir) {
    auto rec = [&](double vm, double vc, double vn) { return vc + 0.5 * side * limited_slope(lim, vc - vm, vn - vc); };
    FaceState f;
    f.rho = rec(m.rho, c.rho, n.rho);
    const double u = rec(m.u, c.u, n.u);
    const double v = rec(m.v, c.v, n.v);
    f.p = rec(m.p, c.p, n.p);
    const double th = rec(m.theta, c.theta, n.theta);
    f.un = xdir ? u : v;
    f.ut = xdir ? v : u;
    f.eps = eps_of(f.p, th);
    if (!(f.rho > 0.0) || !(f.eps > 0.0) || !(f.p > 0.0)) {
      f.rho = c.rho;
      f.p = c.p;
      f.un = xdir ? c.u : c.v;
      f.ut = xdir ? c.v : c.u;
      f.eps = eps_of(c.p, c.theta);
    }
    return f;
  };

  auto riemann = [&](const FaceState& l, const FaceState& r, double cl, double cr) {
    return kind == RiemannFlux::hllc ? hllc(l, r, cl, cr) : rusanov(l, r, cl, cr);
  };

  // x faces: fx_(i, j) is the face between cells i-1 and i.
  for (int j = 0; j < ny; ++j) {
    for (int i = 1; i <= nx; ++i) {
      const Primitive& wl = w(i - 1, j);
      const Primitive& wr = w(i, j);
      const FaceState l = face(w(i - 2, j), wl, wr, +1.0, true);
      const FaceState r = face(wl, wr, w(i + 1, j), -1.0, true);
      const Flux fc = riemann(l, r, wl.c, wr.c);
      Conserved f{fc.mass, fc.mom_n, fc.mom_t, fc.energy};
      if (viscous || conductive) {
        const double th = 0.5 * (wl.theta + wr.theta);
        if (viscous) {
          Mat2 g;
          g[0][0] = (wr.u - wl.u) / h;
          g[1][0] = (wr.v - wl.v) / h;
          g[0][1] = (w(i, j + 1).u - w(i, j - 1).u + w(i - 1, j + 1).u - w(i - 1, j - 1).u) / (4.0 * h);
          g[1][1] = (w(i, j + 1).v - w(i, j - 1).v + w(i - 1, j + 1).v - w(i - 1, j - 1).v) / (4.0 * h);
          const Mat2 st = viscous_stress<2>(transport_, th, g);
          const double uf = 0.5 * (wl.u + wr.u);
          const double vf = 0.5 * (wl.v + wr.v);
          f[1] -= mu * st[0][0];
          f[2] -= mu * st[1][0];
          f[3] -= mu * (st[0][0] * uf + st[0][1] * vf);
        }
        if (conductive) f[3] -= kap * heat_conductivity(transport_, th) * (wr.theta - wl.theta) / h;
      }
      fx_(i, j) = f;
    }
    fx_(0, j) = fx_(nx, j);
  }

  // y faces: fy_(i, j) is the face between cells j-1 and j; j = 0 and j = ny are walls.
  for (int j = 0; j <= ny; ++j) {
    const bool wall = (j == 0 || j == ny);
    for (int i = 0; i < nx; ++i) {
      const Primitive& wl = w(i, j - 1);
      const Primitive& wr = w(i, j);
      Conserved f{0.0, 0.0, 0.0, 0.0};
      if (wall) {
        // Mirror states give zero mass, energy and (for both conditions) convective tangential flux.
        const bool bottom = (j == 0);
        const Primitive& in = bottom ? wr : wl;
        FaceState r = bottom ? face(wl, wr, w(i, j + 1), -1.0, false) : face(w(i, j - 2), wl, wr, +1.0, false);
        if (!bottom) r.un = -r.un;
        f[2] = wall_pressure(kind, r, in.c);
      } else {
        const FaceState l = face(w(i, j - 2), wl, wr, +1.0, false);
        const FaceState r = face(wl, wr, w(i, j + 1), -1.0, false);
        const Flux fc = riemann(l, r, wl.c, wr.c);
        f = {fc.mass, fc.mom_t, fc.mom_n, fc.energy};
      }
      if (viscous) {
        const double th = 0.5 * (wl.theta + wr.theta);
        Mat2 g;
        g[0][1] = (wr.u - wl.u) / h;
        g[1][1] = (wr.v - wl.v) / h;
        g[0][0] = (w(i + 1, j).u - w(i - 1, j).u + w(i + 1, j - 1).u - w(i - 1, j - 1).u) / (4.0 * h);
        g[1][0] = (w(i + 1, j).v - w(i - 1, j).v + w(i + 1, j - 1).v - w(i - 1, j - 1).v) / (4.0 * h);
        const Mat2 st = viscous_stress<2>(transport_, th, g);
        f[2] -= mu * st[1][1];
        if (wall) {
          if (bc_.kind == WallBc::no_slip) f[1] -= mu * st[0][1];
        } else {
          const double uf = 0.5 * (wl.u + wr.u);
          const double vf = 0.5 * (wl.v + wr.v);
          f[1] -= mu * st[0][1];
          f[3] -= mu * (st[1][0] * uf + st[1][1] * vf);
        }
      }
      if (conductive && !wall) {
        const double th = 0.5 * (wl.theta + wr.theta);
        f[3] -= kap * heat_conductivity(transport_, th) * (wr.theta - wl.theta) / h;
      }
      fy_(i, j) = f;
    }
  }

  const double rh = 1.0 / h;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      for (int k = 0; k < 4; ++k)
        out(i, j)[k] = -((fx_(i + 1, j)[k] - fx_(i, j)[k]) + (fy_(i, j + 1)[k] - fy_(i, j)[k])) * rh;
}

void Stepper::check_positivity(const FluidField& f) const {
  for (int j = 0; j < grid_.ny; ++j) {
    for (int i = 0; i < grid_.nx; ++i) {
      const Conserved& q = f.q(i, j);
      const bool ok_rho = q[0] > 0.0 && std::isfinite(q[0]);
      const double eps = ok_rho ? q[3] - 0.5 * (q[1] * q[1] + q[2] * q[2]) / q[0] : 0.0;
      if (!ok_rho || !above_cold_floor(gas_, q[0], eps)) {
        std::ostringstream os;
        os << "positivity lost in cell (" << i << ", " << j << ") at t=" << f.time;
        throw PositivityFailure(os.str(), i, j);
      }
    }
  }
}

void Stepper::advance(FluidField& f, const Snapshot& current, double dt) {
  if (!(f.grid == grid_)) throw InvalidParameter("field grid does not match the stepper grid");
  const double limit = stable_dt(current);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    std::ostringstream os;
    os.precision(6);
    os << "time step " << dt << " exceeds the stable limit " << limit;
    throw CflViolation(os.str());
  }
  const int nx = grid_.nx;
  const int ny = grid_.ny;

  rhs(current, k1_);
  tmp_.time = f.time + dt;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      for (int k = 0; k < 4; ++k) tmp_.q(i, j)[k] = f.q(i, j)[k] + dt * k1_(i, j)[k];
  check_positivity(tmp_);
  fill_snapshot(tmp_, stage_);

  rhs(stage_, k2_);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      for (int k = 0; k < 4; ++k)
        f.q(i, j)[k] = 0.5 * f.q(i, j)[k] + 0.5 * (tmp_.q(i, j)[k] + dt * k2_(i, j)[k]);
  f.time += dt;
  check_positivity(f);
}

FluidField step(const GasModel& gas, const TransportModel& transport, const FluidField& field,
                const BoundarySpec& bc, const Coefficients& coeffs, double dt, const SolverOptions& opts) {
  Stepper st(gas, transport, field.grid, bc, coeffs, opts);
  FluidField out = field;
  st.advance(out, dt);
  (void)st.snapshot(out);
  return out;
}

double stable_dt(const GasModel& gas, const TransportModel& transport, const FluidField& field,
                 const BoundarySpec& bc, const Coefficients& coeffs, const SolverOptions& opts) {
  return Stepper(gas, transport, field.grid, bc, coeffs, opts).stable_dt(field);
}

double total_entropy(const GasModel& gas, double a, const Snapshot& s) {
  return integrate(s.grid, [&](int i, int j) {
    const Primitive& w = s.w(i, j);
    const ThermoState st(w.rho, w.theta);
    return w.rho * (entropy(gas, st) + radiation_components(a, st).s);
  });
}

double total_entropy_production(const TransportModel& transport, const Snapshot& s, double mu_n, double kappa_n) {
  if (mu_n == 0.0 && kappa_n == 0.0) return 0.0;
  return integrate(s.grid, [&](int i, int j) {
    const CellGradients g = cell_gradients(s, i, j);
    return entropy_production<2>(transport, s.w(i, j).theta, g.grad_u, g.grad_theta, mu_n, kappa_n);
  });
}

double total_mass(const FluidField& f) {
  return integrate(f.grid, [&](int i, int j) { return f.q(i, j)[0]; });
}

double total_energy_content(const FluidField& f) {
  return integrate(f.grid, [&](int i, int j) { return f.q(i, j)[3]; });
}

double discrete_entropy_production(const GasModel& gas, const TransportModel& transport, const Snapshot& before,
                                   const Snapshot& after, double dt, double mu_n, double kappa_n, double a) {
  const double ds = total_entropy(gas, a, after) - total_entropy(gas, a, before);
  const double prod = 0.5 * dt *
                      (total_entropy_production(transport, before, mu_n, kappa_n) +
                       total_entropy_production(transport, after, mu_n, kappa_n));
  return ds - prod;
}

double entropy_defect_tolerance(const Grid& g, double dt, double c) {
  return c * (g.h * g.h + dt * dt) * g.area() * dt;
}

RunResult run(Stepper& stepper, const FluidField& initial, const RunConfig& cfg, const StepObserver& observer) {
  RunResult res;
  res.final_field = initial;
  FluidField& f = res.final_field;
  const Grid& g = stepper.grid();
  const auto& co = stepper.coeffs();

  std::vector<double> events = cfg.snapshot_times;
  events.push_back(cfg.t_final);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());
  std::size_t next_event = 0;
  const double t_eps = 1e-12 * std::max(1.0, cfg.t_final);
  auto want_snapshot = [&](double t) {
    return std::any_of(cfg.snapshot_times.begin(), cfg.snapshot_times.end(),
                       [&](double ts) { return std::abs(ts - t) <= t_eps; });
  };

  res.min_entropy_margin = std::numeric_limits<double>::infinity();
  try {
    Snapshot cur = stepper.snapshot(f);
    Snapshot nxt = cur;
    auto monitor = [&](const Snapshot& s, double dt, double defect, double tol) {
      MonitorSample m;
      m.time = s.time;
      m.dt = dt;
      m.mass = total_mass(f);
      m.energy = total_energy_content(f);
      m.min_rho = std::numeric_limits<double>::infinity();
      m.min_theta = std::numeric_limits<double>::infinity();
      for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
          m.min_rho = std::min(m.min_rho, s.w(i, j).rho);
          m.min_theta = std::min(m.min_theta, s.w(i, j).theta);
        }
      m.entropy_defect = defect;
      m.entropy_tol = tol;
      res.monitors.push_back(m);
    };
    monitor(cur, 0.0, 0.0, 0.0);
    while (next_event < events.size() && events[next_event] <= f.time + t_eps) {
      if (want_snapshot(events[next_event])) res.snapshots.push_back(cur);
      ++next_event;
    }

    while (f.time < cfg.t_final - t_eps) {
      if (res.steps >= cfg.max_steps) throw CflViolation("step budget exhausted before the final time");
      double dt = stepper.stable_dt(cur);
      double target = events[next_event];
      bool hit = false;
      if (f.time + dt >= target - t_eps) {
        dt = target - f.time;
        hit = true;
      } else if (f.time + 2.0 * dt > target) {
        dt = 0.5 * (target - f.time);  // avoid a sliver step before the event
      }
      stepper.advance(f, cur, dt);
      if (hit) f.time = target;
      stepper.fill_snapshot(f, nxt);
      ++res.steps;

      double defect = 0.0;
      double tol = 0.0;
      if (cfg.monitor_entropy) {
        defect = discrete_entropy_production(stepper.gas(), stepper.transport(), cur, nxt, dt, co.mu, co.kappa, co.a);
        tol = entropy_defect_tolerance(g, dt, cfg.entropy_tol_constant);
        res.min_entropy_margin = std::min(res.min_entropy_margin, defect + tol);
      }
      monitor(nxt, dt, defect, tol);
      if (observer) observer(cur, nxt, dt);
      if (hit) {
        if (want_snapshot(target)) res.snapshots.push_back(nxt);
        ++next_event;
      }
      std::swap(cur, nxt);
    }
  } catch (const Error& e) {
    res.failed = true;
    res.failure = e.what();
  }
  return res;
}

}  // namespace nsfl
