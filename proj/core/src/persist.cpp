#include "nsfl/persist.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nsfl/error.hpp"

namespace nsfl {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double to_double(const std::string& s) {
  // strtod handles inf and nan spellings that from_chars rejects on some libraries
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw IoError("malformed number in csv: '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) throw IoError("malformed integer in csv: '" + s + "'");
  return v;
}

const char* kSummaryHeader =
    "n,mu,kappa,a,delta,sup_rel_energy,final_rel_energy,l1_rho_err,l1_rhoe_err,l1_mom_err,"
    "E1,E2,E3,E4,E5,E6,D_n,kato_1,kato_2,kato_3,energy_drift,wall_seconds";
const char* kSeriesHeader = "n,time,rel_energy,gap_lhs,gap_rhs,gap_tol,mass,energy,min_rho,min_theta";

void expect_header(std::istream& is, const char* header) {
  std::string line;
  if (!std::getline(is, line)) throw IoError("csv is empty");
  if (line != header) throw IoError("unexpected csv header: " + line);
}

}  // namespace

SummaryRow summary_row(const LevelReport& l) {
  SummaryRow r;
  r.n = l.level.n;
  r.mu = l.level.mu;
  r.kappa = l.level.kappa;
  r.a = l.level.a;
  r.delta = l.level.delta;
  r.sup_rel_energy = l.sup_rel_energy;
  r.final_rel_energy = l.final_rel_energy;
  r.l1_rho_err = l.l1_rho_err;
  r.l1_rhoe_err = l.l1_rhoe_err;
  r.l1_mom_err = l.l1_mom_err;
  r.e = l.consistency.e;
  r.dissipation = l.consistency.dissipation;
  r.kato = l.kato_selected;
  r.energy_drift = l.energy_drift;
  r.wall_seconds = l.wall_seconds;
  return r;
}

void write_summary_csv(std::ostream& os, const std::vector<LevelReport>& levels) {
  os << kSummaryHeader << '\n';
  for (const auto& l : levels) {
    const SummaryRow r = summary_row(l);
    os << r.n;
    for (double v : {r.mu, r.kappa, r.a, r.delta, r.sup_rel_energy, r.final_rel_energy, r.l1_rho_err, r.l1_rhoe_err,
                     r.l1_mom_err})
      os << ',' << fmt(v);
    for (double v : r.e) os << ',' << fmt(v);
    os << ',' << fmt(r.dissipation);
    for (double v : r.kato) os << ',' << fmt(v);
    os << ',' << fmt(r.energy_drift) << ',' << fmt(r.wall_seconds) << '\n';
  }
  if (!os) throw IoError("failed writing summary csv");
}

std::vector<SummaryRow> read_summary_csv(std::istream& is) {
  expect_header(is, kSummaryHeader);
  std::vector<SummaryRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 22) throw IoError("summary row has " + std::to_string(c.size()) + " fields, expected 22");
    SummaryRow r;
    r.n = to_int(c[0]);
    double* scalars[] = {&r.mu, &r.kappa, &r.a, &r.delta, &r.sup_rel_energy, &r.final_rel_energy,
                         &r.l1_rho_err, &r.l1_rhoe_err, &r.l1_mom_err};
    for (int k = 0; k < 9; ++k) *scalars[k] = to_double(c[1 + k]);
    for (int k = 0; k < 6; ++k) r.e[k] = to_double(c[10 + k]);
    r.dissipation = to_double(c[16]);
    for (int k = 0; k < 3; ++k) r.kato[k] = to_double(c[17 + k]);
    r.energy_drift = to_double(c[20]);
    r.wall_seconds = to_double(c[21]);
    rows.push_back(r);
  }
  return rows;
}

void write_series_csv(std::ostream& os, const std::vector<LevelReport>& levels) {
  os << kSeriesHeader << '\n';
  for (const auto& l : levels) {
    for (const auto& s : l.series) {
      os << l.level.n;
      for (double v : {s.time, s.rel_energy, s.gap_lhs, s.gap_rhs, s.gap_tol, s.mass, s.energy, s.min_rho, s.min_theta})
        os << ',' << fmt(v);
      os << '\n';
    }
  }
  if (!os) throw IoError("failed writing series csv");
}

std::vector<SeriesRow> read_series_csv(std::istream& is) {
  expect_header(is, kSeriesHeader);
  std::vector<SeriesRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto c = split(line);
    if (c.size() != 10) throw IoError("series row has " + std::to_string(c.size()) + " fields, expected 10");
    SeriesRow r;
    r.n = to_int(c[0]);
    TimeSample& s = r.sample;
    double* f[] = {&s.time, &s.rel_energy, &s.gap_lhs, &s.gap_rhs, &s.gap_tol,
                   &s.mass, &s.energy, &s.min_rho, &s.min_theta};
    for (int k = 0; k < 9; ++k) *f[k] = to_double(c[1 + k]);
    rows.push_back(r);
  }
  return rows;
}

std::vector<CriterionRow> criterion_rows(const ExperimentReport& rep) {
  std::vector<CriterionRow> rows;
  for (const auto& l : rep.levels) {
    const int n = l.level.n;
    rows.push_back({n, "solver_ok", l.ok ? 1.0 : 0.0, l.ok});
    rows.push_back({n, "sup_rel_energy", l.sup_rel_energy, l.ok});
    rows.push_back({n, "energy_drift", l.energy_drift, l.energy_drift < 1e-6});
    rows.push_back({n, "mass_drift", l.mass_drift, l.mass_drift < 1e-12});
    rows.push_back({n, "entropy_margin", l.min_entropy_margin, l.min_entropy_margin >= 0.0});
    if (l.gap_evaluated) rows.push_back({n, "gap_margin", l.min_gap_margin, l.min_gap_margin >= 0.0});
    rows.push_back({n, "chains", l.chains_ok ? 1.0 : 0.0, l.chains_ok});
    for (int k = 0; k < 3; ++k)
      rows.push_back({n, "kato_" + std::to_string(k + 1), l.kato_selected[k], l.kato.layer_resolved});
  }
  const double conv = rep.convergence.ratio;
  rows.push_back({-1, "convergence_ratio", conv, rep.convergence.pass});
  rows.push_back({-1, "consistency_bounded", rep.consistency.pass ? 1.0 : 0.0, rep.consistency.pass});
  if (rep.corrector) rows.push_back({-1, "corrector_exponent", rep.corrector->grad_n_exponent, rep.corrector->pass});
  if (rep.fine && !rep.levels.empty()) {
    const double base = rep.levels.back().sup_rel_energy;
    const double rel = base > 0.0 ? std::abs(rep.fine->sup_rel_energy - base) / base : 0.0;
    rows.push_back({-1, "fine_grid_change", rel, rel < 0.2});
  }
  return rows;
}

void write_criteria_csv(std::ostream& os, const std::vector<CriterionRow>& rows) {
  os << "run,criterion,value,pass\n";
  for (const auto& r : rows) os << r.run << ',' << r.criterion << ',' << fmt(r.value) << ',' << (r.pass ? 1 : 0) << '\n';
  if (!os) throw IoError("failed writing criteria csv");
}

void write_snapshot_csv(std::ostream& os, const Snapshot& s) {
  os << "i,j,x,y,rho,u,v,theta,p\n";
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) {
      const Primitive& w = s.w(i, j);
      os << i << ',' << j << ',' << fmt(s.grid.xc(i)) << ',' << fmt(s.grid.yc(j)) << ',' << fmt(w.rho) << ','
         << fmt(w.u) << ',' << fmt(w.v) << ',' << fmt(w.theta) << ',' << fmt(w.p) << '\n';
    }
  if (!os) throw IoError("failed writing snapshot csv");
}

std::string summary_json(const ExperimentReport& rep) {
  using nlohmann::json;
  const auto& c = rep.config;
  json j;
  j["config"] = {{"gamma", c.gamma},     {"alpha", c.alpha},   {"mu0", c.mu0},     {"levels", c.levels},
                 {"nx", c.nx},           {"ny", c.ny},         {"bc", to_string(c.bc)},
                 {"family", to_string(c.family)},              {"p0", c.p0},       {"amplitude", c.amplitude},
                 {"speed", c.speed},     {"t_final", c.t_final}, {"cfl", c.cfl}, {"epsilon", c.epsilon},
                 {"deterministic", c.deterministic}};
  if (c.z_threshold) j["config"]["z_threshold"] = *c.z_threshold;
  j["convergence"] = {{"pass", rep.convergence.pass},
                      {"monotone", rep.convergence.monotone},
                      {"ratio", rep.convergence.ratio},
                      {"detail", rep.convergence.detail}};
  j["consistency"] = {{"pass", rep.consistency.pass},
                      {"growth", rep.consistency.growth},
                      {"omega_decreasing", rep.consistency.omega_decreasing},
                      {"detail", rep.consistency.detail}};
  j["l1_decreasing"] = rep.l1_decreasing;
  j["solver_failure"] = rep.solver_failure;
  json levels = json::array();
  for (const auto& l : rep.levels) {
    levels.push_back({{"n", l.level.n},
                      {"ok", l.ok},
                      {"failure", l.failure},
                      {"steps", l.steps},
                      {"sup_rel_energy", l.sup_rel_energy},
                      {"min_gap_margin", l.min_gap_margin},
                      {"chains_ok", l.chains_ok},
                      {"chain_failure", l.chain_failure},
                      {"kato_gradient", l.kato.gradient},
                      {"kato_layer_resolved", l.kato.layer_resolved},
                      {"kato_gradient_resolved", l.kato.gradient_resolved},
                      {"mass_drift", l.mass_drift},
                      {"energy_drift", l.energy_drift}});
  }
  j["levels"] = levels;
  if (rep.fine) j["fine"] = {{"nx", rep.fine->nx}, {"ny", rep.fine->ny}, {"sup_rel_energy", rep.fine->sup_rel_energy}};
  if (rep.corrector) {
    json est = json::array();
    for (const auto& e : rep.corrector->estimates)
      est.push_back({{"delta", e.delta}, {"div", e.div}, {"dt_plus_value", e.dt_plus_value},
                     {"grad_tau", e.grad_tau}, {"grad_n", e.grad_n}});
    j["corrector"] = {{"estimates", est},
                      {"variation", rep.corrector->variation},
                      {"grad_n_exponent", rep.corrector->grad_n_exponent},
                      {"pass", rep.corrector->pass}};
  }
  return j.dump(2);
}

void persist(const ExperimentReport& rep, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  auto open = [](const std::filesystem::path& p) {
    std::ofstream f(p, std::ios::binary);
    if (!f) throw IoError("cannot open " + p.string() + " for writing");
    return f;
  };
  {
    auto f = open(dir / "summary.csv");
    write_summary_csv(f, rep.levels);
  }
  {
    auto f = open(dir / "series.csv");
    write_series_csv(f, rep.levels);
  }
  {
    auto f = open(dir / "criteria.csv");
    write_criteria_csv(f, criterion_rows(rep));
  }
  {
    auto f = open(dir / "summary.json");
    f << summary_json(rep) << '\n';
    if (!f) throw IoError("failed writing summary json");
  }
  for (const auto& l : rep.levels) {
    if (l.snapshots.empty()) continue;
    const auto sub = dir / "snapshots";
    std::filesystem::create_directories(sub, ec);
    if (ec) throw IoError("cannot create " + sub.string() + ": " + ec.message());
    for (std::size_t k = 0; k < l.snapshots.size(); ++k) {
      auto f = open(sub / ("level" + std::to_string(l.level.n) + "_t" + std::to_string(k) + ".csv"));
      write_snapshot_csv(f, l.snapshots[k]);
    }
  }
}

}  // namespace nsfl
