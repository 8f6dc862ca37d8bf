#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "nsfl/experiment.hpp"

namespace nsfl {

/// One row of summary.csv.
struct SummaryRow {
  int n = 0;
  double mu = 0.0, kappa = 0.0, a = 0.0, delta = 0.0;
  double sup_rel_energy = 0.0, final_rel_energy = 0.0;
  double l1_rho_err = 0.0, l1_rhoe_err = 0.0, l1_mom_err = 0.0;
  std::array<double, 6> e{};
  double dissipation = 0.0;
  std::array<double, 3> kato{};
  double energy_drift = 0.0;
  double wall_seconds = 0.0;

  bool operator==(const SummaryRow&) const = default;
};

SummaryRow summary_row(const LevelReport& level);

/// One row of series.csv: a level index and one time sample.
struct SeriesRow {
  int n = 0;
  TimeSample sample;
};

struct CriterionRow {
  int run = 0;
  std::string criterion;
  double value = 0.0;
  bool pass = false;
};

std::vector<CriterionRow> criterion_rows(const ExperimentReport& report);

// Doubles are printed with 17 significant digits so reading back is exact.
void write_summary_csv(std::ostream& os, const std::vector<LevelReport>& levels);
std::vector<SummaryRow> read_summary_csv(std::istream& is);
void write_series_csv(std::ostream& os, const std::vector<LevelReport>& levels);
std::vector<SeriesRow> read_series_csv(std::istream& is);
void write_criteria_csv(std::ostream& os, const std::vector<CriterionRow>& rows);
void write_snapshot_csv(std::ostream& os, const Snapshot& s);

std::string summary_json(const ExperimentReport& report);

/// Writes summary.csv, series.csv, criteria.csv, summary.json and, when
/// requested, snapshots/ into dir. Throws IoError.
void persist(const ExperimentReport& report, const std::filesystem::path& dir);

}  // namespace nsfl
