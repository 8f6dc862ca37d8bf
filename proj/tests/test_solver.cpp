#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nsfl/error.hpp"
#include "nsfl/euler_reference.hpp"
#include "nsfl/solver.hpp"
#include "oracles.hpp"

using namespace nsfl;
using doctest::Approx;

namespace {

FluidField uniform_field(const GasModel& gas, const Grid& g, double a, double u) {
  return initialize(gas, g, a, [u](double, double) { return PointState{1.0, u, 0.0, 1.0}; });
}

double max_change(const FluidField& a, const FluidField& b) {
  double m = 0.0;
  for (int j = 0; j < a.grid.ny; ++j)
    for (int i = 0; i < a.grid.nx; ++i)
      for (int k = 0; k < 4; ++k) m = std::max(m, std::abs(a.q(i, j)[k] - b.q(i, j)[k]));
  return m;
}

}  // namespace

TEST_CASE("uniform state is a fixed point") {
  const GasModel gas(2.0, 4.0);
  const TransportModel tr(1.0);
  const Grid g(16, 8);
  const Coefficients co{0.01, 0.005, 0.001};
  for (auto [bc, u] : {std::pair{WallBc::slip, 0.3}, std::pair{WallBc::no_slip, 0.0}}) {
    Stepper st(gas, tr, g, {bc}, co);
    FluidField f = uniform_field(gas, g, co.a, u);
    const FluidField f0 = f;
    for (int k = 0; k < 5; ++k) st.advance(f, st.stable_dt(f));
    CHECK(max_change(f, f0) == 0.0);
  }
}

TEST_CASE("one step conserves mass") {
  const GasModel gas(1.4, 10.0);
  const TransportModel tr(1.0);
  const Grid g(32, 16);
  const auto sol = traveling_family(1.4, 1.0, 0.5, cosine_profile(0.2));
  for (WallBc bc : {WallBc::slip, WallBc::no_slip}) {
    Stepper st(gas, tr, g, {bc}, {0.02, 0.01, 1e-3});
    FluidField f = initialize(gas, g, 1e-3, [&](double x, double y) {
      const auto p = sol.at(0.0, x, y);
      return PointState{p.rho, p.u, 0.1 * std::sin(6.0 * x), 0.4 * p.e};
    });
    const double m0 = total_mass(f);
    st.advance(f, st.stable_dt(f));
    CHECK(total_mass(f) == Approx(m0).epsilon(1e-14));
  }
}

TEST_CASE("stable time step") {
  const GasModel gas(2.0, 4.0);
  const TransportModel tr(1.0);
  // inviscid: dt = cfl h / (|u| + |v| + 2c)
  const Grid g(32, 16);
  Stepper st(gas, tr, g, {}, {});
  const double c = std::sqrt(oracle::ideal_sound_speed_sq(2.0, 1.0));
  CHECK(st.stable_dt(uniform_field(gas, g, 0.0, 0.0)) == Approx(0.4 * g.h / (2.0 * c)));
  Stepper fine(gas, tr, g.refined(), {}, {});
  CHECK(fine.stable_dt(uniform_field(gas, g.refined(), 0.0, 0.0)) ==
        Approx(0.5 * st.stable_dt(uniform_field(gas, g, 0.0, 0.0))));
  // strongly diffusive: dt ~ h^2
  Stepper d1(gas, tr, g, {}, {10.0, 10.0, 0.0});
  Stepper d2(gas, tr, g.refined(), {}, {10.0, 10.0, 0.0});
  const double r = d1.stable_dt(uniform_field(gas, g, 0.0, 0.0)) / d2.stable_dt(uniform_field(gas, g.refined(), 0.0, 0.0));
  CHECK(r == Approx(4.0).epsilon(0.02));
  FluidField f = uniform_field(gas, g, 0.0, 0.0);
  CHECK_THROWS_AS(st.advance(f, 2.0 * st.stable_dt(f)), CflViolation);
}

TEST_CASE("primitive round trip") {
  const GasModel gas(2.0, 3.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lu(-2.0, 2.0), uu(-1.0, 1.0);
  for (double a : {0.0, 1e-3, 0.5}) {
    for (int k = 0; k < 2000; ++k) {
      const PointState s{std::exp(lu(rng)), uu(rng), uu(rng), std::exp(lu(rng))};
      const Primitive w = primitive_from_conservative(gas, a, conservative_from_primitive(gas, a, s));
      CHECK(w.rho == Approx(s.rho).epsilon(1e-12));
      CHECK(w.u == Approx(s.u).epsilon(1e-12));
      CHECK(w.v == Approx(s.v).epsilon(1e-12));
      CHECK(w.theta == Approx(s.theta).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(primitive_from_conservative(gas, 0.0, {1.0, 1.0, 0.0, 0.5}), NonPhysicalState);
  CHECK_THROWS_AS(primitive_from_conservative(gas, 0.0, {0.0, 0.0, 0.0, 1.0}), NonPhysicalState);
}

TEST_CASE("initial data bounds") {
  const GasModel gas(2.0, 3.0);
  const Grid g(8, 4);
  DataBounds b;
  b.rho_lo = 0.5;
  b.rho_hi = 2.0;
  CHECK_NOTHROW(initialize(gas, g, 0.0, [](double, double) { return PointState{1.0, 0.0, 0.0, 1.0}; }, b));
  CHECK_THROWS_AS(initialize(gas, g, 0.0, [](double, double) { return PointState{3.0, 0.0, 0.0, 1.0}; }, b),
                  BoundsViolation);
}

TEST_CASE("run bookkeeping") {
  const GasModel gas(2.0, 4.0);
  const TransportModel tr(1.0);
  const Grid g(16, 8);
  Stepper st(gas, tr, g, {}, {0.01, 0.01, 0.0});
  const FluidField f = uniform_field(gas, g, 0.0, 0.2);

  RunConfig zero;
  zero.t_final = 0.0;
  zero.snapshot_times = {0.0};
  const auto r0 = run(st, f, zero);
  CHECK(r0.steps == 0);
  REQUIRE(r0.snapshots.size() == 1);
  CHECK(r0.snapshots[0].w(3, 3).rho == Approx(1.0));

  RunConfig cfg;
  cfg.t_final = 0.05;
  cfg.snapshot_times = {0.0, 0.025, 0.05};
  int calls = 0;
  const auto r = run(st, f, cfg, [&](const Snapshot&, const Snapshot&, double) { ++calls; });
  CHECK_FALSE(r.failed);
  CHECK(calls == r.steps);
  REQUIRE(r.snapshots.size() == 3);
  CHECK(r.snapshots[1].time == Approx(0.025));
  CHECK(r.final_field.time == Approx(0.05));
  for (const auto& m : r.monitors) {
    CHECK(m.mass == Approx(r.monitors.front().mass).epsilon(1e-14));
    CHECK(m.energy == Approx(r.monitors.front().energy).epsilon(1e-14));
    CHECK(m.min_rho == Approx(1.0));
    CHECK(m.entropy_defect == Approx(0.0).scale(1.0));
  }
}

TEST_CASE("inviscid traveling contact converges at second order") {
  const auto sol = traveling_family(1.4, 1.0, 0.5, cosine_profile(0.2));
  const GasModel gas = gas_for(sol);
  const TransportModel tr(1.0);
  const double T = 0.2;
  std::vector<double> hs, errs;
  for (int ny : {16, 32, 64}) {
    const Grid g(2 * ny, ny);
    Stepper st(gas, tr, g, {WallBc::slip}, {}, {0.4, Limiter::mc, RiemannFlux::hllc});
    const FluidField f = initialize(gas, g, 0.0, [&](double x, double y) {
      const auto p = sol.at(0.0, x, y);
      return PointState{p.rho, p.u, p.v, 0.4 * p.e};
    });
    RunConfig cfg;
    cfg.t_final = T;
    const auto r = run(st, f, cfg);
    REQUIRE_FALSE(r.failed);
    hs.push_back(g.h);
    errs.push_back(integrate(g, [&](int i, int j) {
      return std::abs(r.final_field.q(i, j)[0] - sol.at(T, g.xc(i), g.yc(j)).rho);
    }));
    CHECK(r.monitors.back().energy == Approx(r.monitors.front().energy).epsilon(1e-12));
    CHECK(r.min_entropy_margin >= 0.0);
  }
  const double order = fitted_order(hs, errs);
  CHECK(order >= 1.8);
  CHECK(order <= 2.2);
}

TEST_CASE("entropy defect bookkeeping") {
  const GasModel gas(2.0, 4.0);
  const TransportModel tr(1.0);
  const Grid g(16, 8);
  Stepper st(gas, tr, g, {}, {0.01, 0.01, 0.0});
  const FluidField f = uniform_field(gas, g, 0.0, 0.0);
  const Snapshot s = st.snapshot(f);
  CHECK(discrete_entropy_production(gas, tr, s, s, 0.01, 0.01, 0.01, 0.0) == Approx(0.0).scale(1.0));
  CHECK(entropy_defect_tolerance(g, 0.01, 2.0) == Approx(2.0 * (g.h * g.h + 1e-4) * g.area() * 0.01));
  CHECK(total_entropy_production(tr, s, 0.01, 0.01) == 0.0);
}
