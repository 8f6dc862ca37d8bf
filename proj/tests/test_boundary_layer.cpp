#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "helpers.hpp"
#include "nsfl/boundary_layer.hpp"
#include "nsfl/error.hpp"

using namespace nsfl;
using doctest::Approx;
using testing_util::analytic_snapshot;
using testing_util::prim;

TEST_CASE("channel geometry") {
  const BoundaryGeometry g;
  CHECK(g.distance(0.1) == Approx(0.1));
  CHECK(g.distance(0.9) == Approx(0.1));
  CHECK(g.projection(0.3, 0.8)[1] == 1.0);
  CHECK(g.grad_distance(0.2)[1] == 1.0);
  CHECK(g.outward_normal(0.2)[1] == -1.0);
  CHECK(g.layer_fraction(0.05, 0.1, 0.1) == Approx(1.0));
  CHECK(g.layer_fraction(0.15, 0.1, 0.1) == Approx(0.0));
  CHECK(g.layer_fraction(0.1, 0.1, 0.1) == Approx(0.5));
  CHECK_THROWS_AS(BoundaryGeometry(0.0), InvalidParameter);
}

TEST_CASE("normal-tangential split is an orthogonal projection") {
  const BoundaryGeometry g;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-2.0, 2.0), y(0.0, 1.0);
  for (int k = 0; k < 10000; ++k) {
    const double yy = y(rng);
    const Vec2 w{u(rng), u(rng)};
    const auto s = normal_tangential_split(g, yy, w);
    CHECK(s.n[0] + s.tau[0] == Approx(w[0]));
    CHECK(s.n[1] + s.tau[1] == Approx(w[1]));
    CHECK(dot(s.n, s.tau) == Approx(0.0).scale(1.0));
    const auto again = normal_tangential_split(g, yy, s.n);
    CHECK(again.n[1] == Approx(s.n[1]));
    CHECK(again.tau[0] == Approx(0.0).scale(1.0));
  }
}

TEST_CASE("corrector matches the wall trace and vanishes outside the layer") {
  const BoundaryGeometry g;
  const auto sol = traveling_family(1.4, 1.0, 0.25, cosine_profile(0.2));
  const Corrector c = build_corrector(g, sol, 0.1);
  CHECK(c(0.2, 0.3, 0.0)[0] == Approx(0.25));
  CHECK(c(0.2, 0.3, 1.0)[0] == Approx(0.25));
  CHECK(c(0.2, 0.3, 0.5)[0] == 0.0);
  for (double yy = 0.0; yy <= 1.0; yy += 0.01) CHECK(c(0.0, 0.4, yy)[1] == 0.0);
  CHECK(layer_cutoff(0.0) == 1.0);
  CHECK(layer_cutoff(1.0) == 0.0);
  CHECK(layer_cutoff(0.5) == Approx(0.5));
  CHECK(layer_cutoff_derivative(0.5) == Approx(-30.0 / 16.0));
  CHECK_THROWS_AS(build_corrector(g, sol, 0.0), InvalidDelta);
  CHECK_THROWS_AS(build_corrector(g, sol, 0.6), InvalidDelta);
}

TEST_CASE("corrector delta sweep") {
  const BoundaryGeometry g;
  const auto sol = traveling_family(1.4, 1.0, 0.25, cosine_profile(0.2));
  const Grid grid(256, 128);
  const double deltas[] = {0.2, 0.1, 0.05};
  const double times[] = {0.0, 0.25, 0.5};
  const auto sw = corrector_delta_sweep(g, sol, grid, deltas, times);
  CHECK(sw.pass);
  // uniform tangential wall speed: the corrector is divergence free
  for (const auto& e : sw.estimates) CHECK(e.div == Approx(0.0).scale(1.0));
  CHECK(sw.grad_n_exponent == Approx(-1.0).epsilon(0.1));
  for (const auto& e : sw.estimates) CHECK(e.grad_n * e.delta == Approx(sw.estimates[0].grad_n * 0.2).epsilon(0.1));
  const double one[] = {0.1};
  CHECK_THROWS_AS(corrector_delta_sweep(g, sol, grid, one, times), InvalidParameter);
}

TEST_CASE("Kato functionals on uniform and resting states") {
  const BoundaryGeometry geom;
  const TransportModel tr(1.0);
  const Grid grid(64, 32);
  const double t_final = 0.5;
  std::vector<Snapshot> hist;
  for (double t : {0.0, 0.25, 0.5})
    hist.push_back(analytic_snapshot(grid, [](double, double) { return prim(1.0, 0.0, 0.0, 1.0); }, t));
  for (double delta : {0.125, 0.25}) {
    const auto a1 = kato_alpha1_criterion(geom, tr, hist, delta, 0.01);
    CHECK(a1[0] == Approx(0.01 / delta));
    CHECK(a1[1] == Approx(2.0 * t_final * grid.lx));
    CHECK(a1[2] == 0.0);
  }
  const auto gr = kato_gradient_criterion(geom, tr, hist, 0.1);
  CHECK(gr[0] == 0.0);
  CHECK(gr[1] == 0.0);

  const TransportModel tr3(1.0 / 3.0);
  const auto c3 = kato_conditional_criterion(geom, tr3, hist, 0.25, 0.01);
  CHECK(c3[1] == Approx(2.0 * t_final * grid.lx));
  CHECK(c3[2] == 0.0);
  CHECK_THROWS_AS(kato_conditional_criterion(geom, tr, hist, 0.25, 0.01), InvalidParameter);
  CHECK_THROWS_AS(kato_alpha1_criterion(geom, tr, hist, 0.05, 0.01), UnresolvedLayer);
}

TEST_CASE("Kato third functional scales with one over mu") {
  const BoundaryGeometry geom;
  const TransportModel tr(1.0);
  const Grid grid(64, 32);
  std::vector<Snapshot> hist;
  for (double t : {0.0, 0.5})
    hist.push_back(analytic_snapshot(
        grid, [](double x, double y) { return prim(1.0, 0.1, 0.2 * std::sin(3.0 * x) * y * (1 - y), 1.0); }, t));
  const auto a = kato_alpha1_criterion(geom, tr, hist, 0.25, 0.02);
  const auto b = kato_alpha1_criterion(geom, tr, hist, 0.25, 0.04);
  CHECK(a[2] > 0.0);
  CHECK(b[2] == Approx(0.5 * a[2]));
  CHECK(b[0] == Approx(2.0 * a[0]));
}

TEST_CASE("Kato gradient functional on a linear shear") {
  // u = (s y, 0) near the bottom wall: |S|^2 = 2 s^2 mu(theta)^2 for the symmetric deviator
  const BoundaryGeometry geom;
  const TransportModel tr(1.0);
  const Grid grid(64, 64);
  const double s = 3.0, mu = 0.25;
  std::vector<Snapshot> hist;
  for (double t : {0.0, 1.0})
    hist.push_back(analytic_snapshot(grid, [&](double, double y) { return prim(1.0, s * y, 0.0, 1.0); }, t));
  const auto k = kato_integrands(geom, tr, hist[0], mu, mu);
  const double mt = 1.0 + std::sqrt(2.0);
  // two strips of width mu along the channel
  CHECK(k.grad_stress == Approx(2.0 * s * s * mt * mt * 2.0 * mu * grid.lx));
  const auto gr = kato_gradient_criterion(geom, tr, hist, mu);
  CHECK(gr[0] == Approx(mu * k.grad_stress));
}
