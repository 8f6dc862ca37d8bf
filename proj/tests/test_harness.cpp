#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "nsfl/config.hpp"
#include "nsfl/error.hpp"
#include "nsfl/experiment.hpp"
#include "nsfl/persist.hpp"
#include "nsfl/schedule.hpp"

using namespace nsfl;
using doctest::Approx;

TEST_CASE("dissipation schedule") {
  const auto s = build_schedule(0.1, 1.0, 5);
  REQUIRE(s.levels.size() == 5);
  for (std::size_t n = 0; n < s.levels.size(); ++n) {
    const auto& l = s.levels[n];
    CHECK(l.n == static_cast<int>(n));
    CHECK(l.mu == Approx(0.1 * std::pow(2.0, -static_cast<double>(n))));
    CHECK(l.a == Approx(l.mu * l.mu));
    CHECK(l.kappa == Approx(std::pow(l.a, 0.75) * l.sigma));
    CHECK(l.kappa / std::pow(l.a, 0.75) == Approx(std::sqrt(l.mu)));
    CHECK(l.delta == Approx(std::sqrt(l.mu)));
    if (n > 0) {
      CHECK(l.mu < s.levels[n - 1].mu);
      CHECK(l.kappa / std::pow(l.a, 0.75) < s.levels[n - 1].kappa / std::pow(s.levels[n - 1].a, 0.75));
    }
  }
  const auto third = build_schedule(0.1, 1.0 / 3.0, 2);
  CHECK(third.levels[1].a == Approx(std::pow(0.05, 3.0)));
  CHECK_THROWS_AS(build_schedule(0.0, 1.0, 3), InvalidParameter);
  CHECK_THROWS_AS(build_schedule(0.1, 1.0, 0), InvalidParameter);
}

TEST_CASE("convergence assertion") {
  const double good[] = {1.0, 0.5, 0.2, 0.1, 0.05};
  const auto v = convergence_assert(good, 0.2);
  CHECK(v.pass);
  CHECK(v.ratio == Approx(0.05));
  const double flat[] = {1.0, 1.0, 1.0};
  const auto f = convergence_assert(flat, 0.25);
  CHECK_FALSE(f.pass);
  CHECK(f.ratio == Approx(1.0));
  const double bump[] = {1.0, 0.1, 0.2, 0.01};
  CHECK_FALSE(convergence_assert(bump, 0.25).monotone);
  const double two[] = {1.0, 0.1};
  CHECK_FALSE(convergence_assert(two, 0.25).pass);
}

TEST_CASE("summary CSV round trip is bit exact") {
  std::vector<LevelReport> levels(2);
  levels[0].level = {0, 0.1, 0.01, 0.316, 1.0 / 3.0, std::sqrt(0.1)};
  levels[0].sup_rel_energy = 1.0 / 7.0;
  levels[0].consistency.e = {1e-300, 2.5, std::nextafter(1.0, 2.0), 4, 5, 6};
  levels[0].kato_selected = {0.1, 0.2, 0.3};
  levels[1].level.n = 1;
  levels[1].l1_mom_err = 3.14159265358979;
  levels[1].wall_seconds = 12.5;
  std::ostringstream os;
  write_summary_csv(os, levels);
  std::istringstream is(os.str());
  const auto rows = read_summary_csv(is);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == summary_row(levels[0]));
  CHECK(rows[1] == summary_row(levels[1]));
  CHECK(rows[0].e[2] == std::nextafter(1.0, 2.0));

  std::ostringstream empty;
  write_summary_csv(empty, {});
  const std::string text = empty.str();
  CHECK(text.rfind("n,mu,kappa,a,delta,sup_rel_energy", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);

  std::istringstream bad("n,mu\n1,2\n");
  CHECK_THROWS_AS(read_summary_csv(bad), IoError);
}

TEST_CASE("series CSV round trip") {
  std::vector<LevelReport> levels(1);
  levels[0].level.n = 3;
  TimeSample t;
  t.time = 0.25;
  t.rel_energy = 1e-7;
  t.gap_lhs = 0.1;
  t.gap_rhs = 0.2;
  levels[0].series = {t, t};
  std::ostringstream os;
  write_series_csv(os, levels);
  std::istringstream is(os.str());
  const auto rows = read_series_csv(is);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].n == 3);
  CHECK(rows[1].sample.gap_rhs == 0.2);
  CHECK(rows[1].sample.rel_energy == 1e-7);
}

TEST_CASE("configuration JSON") {
  ExperimentConfig c;
  c.gamma = 5.0 / 3.0;
  c.family = FamilyKind::traveling;
  c.bc = WallBc::no_slip;
  c.limiter = Limiter::mc;
  c.z_threshold = 12.5;
  c.schedule.delta_power = 0.25;
  c.nx = 64;
  c.ny = 32;
  const ExperimentConfig back = config_from_json(config_to_json(c));
  CHECK(back.gamma == c.gamma);
  CHECK(back.family == FamilyKind::traveling);
  CHECK(back.bc == WallBc::no_slip);
  CHECK(back.limiter == Limiter::mc);
  REQUIRE(back.z_threshold.has_value());
  CHECK(*back.z_threshold == 12.5);
  CHECK(back.schedule.delta_power == 0.25);
  CHECK(back.nx == 64);
  CHECK(config_to_json(back) == config_to_json(c));

  const auto partial = config_from_json(R"({"levels": 3, "bc": "noslip"})");
  CHECK(partial.levels == 3);
  CHECK(partial.bc == WallBc::no_slip);
  CHECK(partial.gamma == 1.4);
  CHECK_THROWS_AS(config_from_json(R"({"levles": 3})"), InvalidParameter);
  CHECK_THROWS_AS(config_from_json("{"), InvalidParameter);
  CHECK_THROWS_AS(parse_family("spinning"), InvalidParameter);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.json"), IoError);
}

TEST_CASE("small experiment end to end") {
  ExperimentConfig c;
  c.levels = 3;
  c.nx = 16;
  c.ny = 8;
  c.mu0 = 0.2;
  c.t_final = 0.05;
  c.time_samples = 2;
  c.deterministic = true;
  c.two_grid = false;
  const auto a = run_experiment(c);
  REQUIRE(a.levels.size() == 3);
  CHECK_FALSE(a.solver_failure);
  for (const auto& l : a.levels) {
    CHECK(l.ok);
    CHECK(l.steps > 0);
    CHECK(l.wall_seconds == 0.0);
    CHECK(l.series.size() == 3);
    CHECK(std::abs(l.mass_drift) < 1e-13);
    CHECK(l.sup_rel_energy >= 0.0);
  }
  const auto b = run_experiment(c);
  std::ostringstream sa, sb;
  write_summary_csv(sa, a.levels);
  write_summary_csv(sb, b.levels);
  CHECK(sa.str() == sb.str());

  ExperimentConfig bad = c;
  bad.nx = 12;
  CHECK_THROWS_AS(run_level(bad, a.schedule.levels[0], 12, 8), InvalidParameter);
}
