#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nsfl/error.hpp"
#include "nsfl/thermodynamics.hpp"
#include "oracles.hpp"

using namespace nsfl;
using doctest::Approx;

TEST_CASE("structure functions match the proof formulas") {
  const GasModel g = build_structure_functions(2.0, 1.0);
  CHECK(g.P(0.5) == Approx(0.5));
  CHECK(g.P(2.0) == Approx(2.5));
  // continuity of S at the seam from both branch formulas
  CHECK(g.S(1.0) == Approx(1.0));
  CHECK(oracle::s1(1.0) == Approx(1.0 / 1.0));
  CHECK(g.dP(1.0) == Approx(1.0));
  CHECK(g.dP(1.0 + 1e-12) == Approx(1.0));

  for (double zt : {0.3, 1.0, 4.0})
    for (double gamma : {1.4, 5.0 / 3.0, 2.0}) {
      const GasModel m(gamma, zt);
      for (double z : {1e-3, 0.1, 0.99 * zt, zt, 1.01 * zt, 10.0 * zt, 1e3 * zt}) {
        CHECK(m.P(z) == Approx(oracle::P(gamma, zt, z)).epsilon(1e-14));
        CHECK(m.S(z) == Approx(oracle::S(zt, z)).epsilon(1e-14));
      }
    }
}

TEST_CASE("invalid gas parameters are rejected") {
  CHECK_THROWS_AS(GasModel(1.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(GasModel(0.5, 1.0), InvalidParameter);
  CHECK_THROWS_AS(GasModel(1.4, 0.0), InvalidParameter);
  CHECK_THROWS_AS(GasModel(1.4, -1.0), InvalidParameter);
  CHECK_THROWS_AS(ThermoState(0.0, 1.0), InvalidParameter);
  CHECK_THROWS_AS(ThermoState(1.0, -1.0), InvalidParameter);
  CHECK_THROWS_AS(ThermoState(NAN, 1.0), InvalidParameter);
}

TEST_CASE("pressure, energy and entropy at hand-evaluated states") {
  const GasModel g(2.0, 1.0);
  CHECK(pressure(g, {0.5, 1.0}) == 0.5);
  CHECK(pressure(g, {2.0, 1.0}) == Approx(2.5));
  CHECK(internal_energy(g, {2.0, 1.0}) == Approx(1.25));
  CHECK(internal_energy(g, {0.5, 1.0}) == Approx(1.0));
  CHECK(entropy(g, {1.0, 4.0}) == Approx(1.0 - std::log(0.25)));
  CHECK(entropy(g, {1.0, 4.0}) == Approx(2.386294361));
  CHECK(entropy(g, {2.0, 1.0}) == Approx(0.5));
  // rho -> 0 at fixed theta
  CHECK(pressure(g, {1e-12, 1.0}) < 1e-11);
}

TEST_CASE("Boyle-Mariotte below the threshold and the closure identity everywhere") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> lu(-4.0, 4.0);
  for (double gamma : {1.4, 5.0 / 3.0, 2.0}) {
    const GasModel g(gamma, 1.7);
    for (int k = 0; k < 2000; ++k) {
      const ThermoState st(std::exp(lu(rng)), std::exp(lu(rng)));
      const double p = pressure(g, st);
      CHECK(p == Approx(oracle::pressure(gamma, 1.7, st.rho, st.theta)).epsilon(1e-12));
      CHECK(std::abs(p - (gamma - 1.0) * st.rho * internal_energy(g, st)) <= 1e-13 * p);
      if (g.z_of(st.rho, st.theta) <= g.z_threshold()) {
        CHECK(p == Approx(st.rho * st.theta).epsilon(1e-15));
        CHECK(internal_energy(g, st) == Approx(st.theta / (gamma - 1.0)).epsilon(1e-15));
      }
      CHECK(entropy(g, st) > 0.0);
    }
  }
}

TEST_CASE("third law and entropy monotonicity") {
  const GasModel g(1.4, 1.0);
  double prev = entropy(g, {1.0, 10.0});
  for (double th = 5.0; th > 1e-3; th *= 0.5) {
    const double s = entropy(g, {1.0, th});
    CHECK(s < prev);
    prev = s;
  }
  CHECK(g.S(1e6) < 1e-5);
  for (double z = 1e-4; z < 1e6; z *= 1.7) CHECK(g.S(1.7 * z) < g.S(z));
}

TEST_CASE("S' follows from P through the structural ODE") {
  for (double gamma : {1.4, 2.0}) {
    const GasModel g(gamma, 2.0);
    for (double z : {0.01, 0.5, 1.9, 2.5, 30.0, 1e4}) {
      const double rhs = -(1.0 / (gamma - 1.0)) * (gamma * g.P(z) - g.dP(z) * z) / (z * z);
      CHECK(std::abs(g.dS(z) - rhs) <= 1e-10 * std::abs(rhs));
    }
  }
}

TEST_CASE("growth of P at infinity") {
  // Derived from the implemented scaling: P(Z) / Z^gamma -> 1 / (gamma Zt^(gamma-1)).
  for (double zt : {0.5, 1.0, 3.0}) {
    const GasModel g(1.4, zt);
    const double lim = 1.0 / (1.4 * std::pow(zt, 0.4));
    CHECK(g.pressure_growth_limit() == Approx(lim).epsilon(1e-14));
    for (double z : {100.0 * zt, 1e4 * zt}) CHECK(g.P(z) / std::pow(z, 1.4) == Approx(lim).epsilon(0.01));
  }
}

TEST_CASE("radiation components") {
  const auto r0 = radiation_components(0.0, {3.0, 2.0});
  CHECK(r0.p == 0.0);
  CHECK(r0.e == 0.0);
  CHECK(r0.s == 0.0);
  const auto r1 = radiation_components(3.0, {1.0, 1.0});
  CHECK(r1.p == Approx(1.0));
  CHECK(r1.e == Approx(3.0));
  CHECK(r1.s == Approx(4.0));
  const auto r2 = radiation_components(1.0, {2.0, 2.0});
  CHECK(r2.p == Approx(16.0 / 3.0));
  CHECK(r2.e == Approx(8.0));
  CHECK(r2.s == Approx(4.0 * 8.0 / (3.0 * 2.0)));  // 4 a theta^3 / (3 rho)
  CHECK_THROWS_AS(radiation_components(-1.0, {1.0, 1.0}), InvalidParameter);
}

TEST_CASE("Gibbs residuals at sample states and their order") {
  const GasModel g(2.0, 1.0);
  for (const ThermoState st : {ThermoState(0.5, 1.0), ThermoState(4.0, 1.0)}) {
    const auto r = gibbs_residual(g, st, 1e-4);
    CHECK(std::abs(r.r1) < 1e-6);
    CHECK(std::abs(r.r2) < 1e-6);
  }
  // the ideal branch has exactly quadratic-in-h truncation from the log term
  const ThermoState st(0.3, 2.0);
  const auto a = gibbs_residual(g, st, 2e-3);
  const auto b = gibbs_residual(g, st, 1e-3);
  CHECK(std::abs(a.r2) / std::abs(b.r2) == Approx(4.0).epsilon(0.02));
  const ThermoState hi(4.0, 1.3);
  const auto c = gibbs_residual(g, hi, 2e-3);
  const auto d = gibbs_residual(g, hi, 1e-3);
  // r1 is polynomial in theta on the upper branch, so only r2 carries truncation there
  CHECK(std::abs(c.r1) < 1e-12);
  CHECK(std::abs(c.r2) / std::abs(d.r2) == Approx(4.0).epsilon(0.02));
  CHECK_THROWS_AS(gibbs_residual(g, {1e-5, 1.0}, 1e-4), DegenerateState);
}

TEST_CASE("analytic derivatives agree with finite differences of the oracle") {
  for (double gamma : {1.4, 2.0}) {
    const GasModel g(gamma, 1.0);
    for (const ThermoState st : {ThermoState(0.4, 1.2), ThermoState(3.0, 0.7)}) {
      const auto d = thermo_derivatives(g, st);
      const double h = 1e-6;
      auto fp = [&](double r, double t) { return oracle::pressure(gamma, 1.0, r, t); };
      auto fs = [&](double r, double t) { return oracle::entropy(gamma, 1.0, r, t); };
      CHECK(d.p_rho == Approx((fp(st.rho + h, st.theta) - fp(st.rho - h, st.theta)) / (2 * h)).epsilon(1e-7));
      CHECK(d.p_theta == Approx((fp(st.rho, st.theta + h) - fp(st.rho, st.theta - h)) / (2 * h)).epsilon(1e-7));
      CHECK(d.s_rho == Approx((fs(st.rho + h, st.theta) - fs(st.rho - h, st.theta)) / (2 * h)).epsilon(1e-7));
      CHECK(d.s_theta == Approx((fs(st.rho, st.theta + h) - fs(st.rho, st.theta - h)) / (2 * h)).epsilon(1e-7));
    }
  }
}

TEST_CASE("stability check") {
  const GasModel g(2.0, 1.0);
  std::vector<double> zs;
  for (int k = 0; k <= 40; ++k) zs.push_back(0.1 * std::pow(100.0, k / 40.0));
  const auto rep = stability_check(g, zs);
  CHECK(rep.samples == zs.size());
  CHECK(rep.min_dP > 0.0);
  CHECK(rep.min_margin > 0.0);
  CHECK(rep.observed_bound == Approx(1.0));  // gamma Z - Z over Z on the identity branch
  // on the upper branch gamma P - P' Z is the constant gamma - 1
  CHECK(2.0 * g.P(5.0) - g.dP(5.0) * 5.0 == Approx(1.0));
  const double bad[] = {0.5, -1.0};
  CHECK_THROWS_AS(stability_check(g, bad), InvalidParameter);
}

TEST_CASE("ideal-gas sound speed") {
  const GasModel g(2.0, 10.0);
  CHECK(sound_speed_sq(g, 0.0, {1.0, 1.0}) == Approx(oracle::ideal_sound_speed_sq(2.0, 1.0)));
  CHECK(sound_speed_sq(g, 0.0, {0.7, 1.3}) == Approx(oracle::ideal_sound_speed_sq(2.0, 1.3)));
  CHECK(sound_speed_sq(g, 0.5, {1.0, 1.0}) > 0.0);
}

TEST_CASE("temperature inversion") {
  const GasModel g(2.0, 1.0);
  // a = 0 on the identity branch: theta = (gamma - 1) e
  CHECK(temperature_from_energy(g, 0.0, 0.5, 0.5 * 1.3) == Approx(1.3).epsilon(1e-15));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> lu(-3.0, 3.0);
  for (double a : {0.0, 1e-3, 1.0}) {
    for (int k = 0; k < 500; ++k) {
      const ThermoState st(std::exp(lu(rng)), std::exp(lu(rng)));
      const double E = st.rho * oracle::energy(2.0, 1.0, st.rho, st.theta) + a * std::pow(st.theta, 4);
      CHECK(temperature_from_energy(g, a, st.rho, E) == Approx(st.theta).epsilon(1e-12));
      const double p = oracle::pressure(2.0, 1.0, st.rho, st.theta) + a * std::pow(st.theta, 4) / 3.0;
      CHECK(temperature_from_pressure(g, a, st.rho, p) == Approx(st.theta).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(temperature_from_energy(g, 0.0, 1.0, 0.0), NonPhysicalState);
  CHECK_THROWS_AS(temperature_from_energy(g, 0.0, 1.0, -1.0), NonPhysicalState);
  CHECK_THROWS_AS(temperature_from_energy(g, 0.0, 2.0, g.inv_gm1() * g.cold_pressure(2.0)), NonPhysicalState);
  CHECK(above_cold_floor(g, 2.0, 1.0001 * g.inv_gm1() * g.cold_pressure(2.0)));
}
