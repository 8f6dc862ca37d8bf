#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nsfl/error.hpp"
#include "nsfl/euler_reference.hpp"
#include "oracles.hpp"

using namespace nsfl;
using doctest::Approx;

namespace {

const Grid grids[] = {Grid(32, 32), Grid(64, 64), Grid(128, 128)};

template <class F>
double order_of(F&& residual) {
  std::vector<double> h, err;
  for (const Grid& g : grids) {
    h.push_back(g.h);
    err.push_back(residual(g));
  }
  return fitted_order(h, err);
}

}  // namespace

TEST_CASE("threshold for given density and energy bounds") {
  CHECK(minimal_z_threshold(2.0, 2.0, 0.5) == Approx(4.0));
  const auto sol = stationary_family(2.0, 1.0, cosine_profile(0.2));
  const GasModel g = gas_for(sol, 2.0);
  CHECK(g.z_threshold() > minimal_z_threshold(2.0, sol.rho_hi(), sol.e_lo()));
  CHECK_THROWS_AS(gas_for(sol, 1.0), InvalidParameter);
  CHECK_THROWS_AS(minimal_z_threshold(2.0, -1.0, 0.5), InvalidParameter);
}

TEST_CASE("families are isobaric and well formed") {
  const auto st = stationary_family(2.0, 1.0, cosine_profile(0.2));
  CHECK(st.theta(0.0, 0.3, 0.4) == Approx(1.0 / st.at(0.0, 0.3, 0.4).rho));
  for (double x : {0.0, 0.17, 0.5}) {
    const auto p = st.at(0.0, x, 0.3);
    CHECK((2.0 - 1.0) * p.rho * p.e == Approx(1.0));
    CHECK(p.u == 0.0);
  }
  const auto tr = traveling_family(1.4, 1.0, 0.5, cosine_profile(0.2));
  CHECK(tr.at(0.4, 0.3, 0.2).rho == Approx(st.at(0.0, 0.1, 0.2).rho));
  CHECK(tr.at(0.4, 0.3, 0.0).u == 0.5);
  CHECK(tr.at(0.0, 0.3, 1.0).v == 0.0);
  const auto still = traveling_family(1.4, 1.0, 0.0, cosine_profile(0.2));
  CHECK(still.kind() == EulerKind::stationary_density);
  CHECK_THROWS_AS(stationary_family(2.0, 1.0, cosine_profile(1.5)), InvalidProfile);
  CHECK_THROWS_AS(stationary_family(2.0, -1.0, uniform_profile(1.0)), InvalidProfile);
}

TEST_CASE("temperature assignment and the threshold") {
  const Grid grid(32, 16);
  const auto sol = stationary_family(2.0, 1.0, uniform_profile(1.0));
  const GasModel g(2.0, 3.0);
  const auto th = assign_temperature(g, sol, grid, 0.0);
  CHECK(th(5, 5) == Approx(1.0));
  // e = 1 so theta = 1 and Z = 1 >= 0.5
  CHECK_THROWS_AS(assign_temperature(GasModel(2.0, 0.5), sol, grid, 0.0), ThresholdViolation);
}

TEST_CASE("constant state has vanishing residuals") {
  const Grid grid(16, 16);
  const auto sol = stationary_family(2.0, 1.0, uniform_profile(1.0));
  const GasModel g(2.0, 4.0);
  const auto r = euler_residual(g, sol, grid, 0.0);
  CHECK(r.mass == 0.0);
  CHECK(r.momentum == Approx(0.0).scale(1.0));
  CHECK(r.energy == Approx(0.0).scale(1.0));
  CHECK(entropy_conservation_residual(g, sol, grid, 0.0) == Approx(0.0).scale(1.0));
  const auto tr = transport_identity_residuals(g, sol, grid, 0.0);
  CHECK(tr.theta == Approx(0.0).scale(1.0));
  CHECK(tr.pressure == Approx(0.0).scale(1.0));
}

TEST_CASE("traveling family residuals converge at second order") {
  const auto sol = traveling_family(1.4, 1.0, 0.5, cosine_profile(0.2));
  const GasModel g = gas_for(sol);
  const double t = 0.3;
  const double mass = order_of([&](const Grid& gr) { return euler_residual(g, sol, gr, t).mass; });
  const double energy = order_of([&](const Grid& gr) { return euler_residual(g, sol, gr, t).energy; });
  const double ent = order_of([&](const Grid& gr) { return entropy_conservation_residual(g, sol, gr, t); });
  const double theta = order_of([&](const Grid& gr) { return transport_identity_residuals(g, sol, gr, t).theta; });
  for (double o : {mass, energy, ent, theta}) {
    CHECK(o >= 1.8);
    CHECK(o <= 2.2);
  }
}

TEST_CASE("stationary family residuals") {
  const auto sol = stationary_family(2.0, 1.0, cosine_profile(0.2));
  const GasModel g = gas_for(sol);
  // u = 0 and rho e = p0 / (gamma - 1) make mass, energy and entropy residuals vanish exactly;
  // the momentum residual keeps the truncation of the chain-rule pressure gradient
  for (const Grid& gr : grids) {
    const auto r = euler_residual(g, sol, gr, 0.0);
    CHECK(r.mass == 0.0);
    CHECK(r.energy == 0.0);
    CHECK(entropy_conservation_residual(g, sol, gr, 0.0) == 0.0);
  }
  const double o = order_of([&](const Grid& gr) { return euler_residual(g, sol, gr, 0.0).momentum; });
  CHECK(o >= 1.8);
  CHECK(o <= 2.2);
}

TEST_CASE("algebraic identity remainder is quadratic") {
  const GasModel g(1.4, 50.0);
  CHECK(identity_bracket(g, {1.0, 1.0}, {1.0, 1.0}) == Approx(0.0).scale(1.0));
  CHECK(identity_remainder(g, {1.0, 1.0}, {1.0, 1.0}) == Approx(0.0).scale(1.0));
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.5, 2.0);
  std::vector<ThermoState> samples;
  for (int k = 0; k < 50; ++k) samples.emplace_back(u(rng), u(rng));
  const auto rep = algebraic_identity_check(g, samples, 1e-2);
  CHECK(rep.min_ratio >= 3.5);
  CHECK(rep.max_ratio <= 4.5);
  CHECK(rep.max_linear_coeff < 1e-8);
}

TEST_CASE("fitted order") {
  const double h[] = {0.1, 0.05, 0.025};
  const double e2[] = {0.01, 0.0025, 0.000625};
  const double e1[] = {3.0, 1.5, 0.75};
  CHECK(fitted_order(h, e2) == Approx(2.0));
  CHECK(fitted_order(h, e1) == Approx(1.0));
}
