#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nsfl/boundary_layer.hpp"
#include "nsfl/euler_reference.hpp"
#include "nsfl/relative_energy.hpp"
#include "nsfl/schedule.hpp"
#include "nsfl/solver.hpp"

namespace nsfl {

enum class FamilyKind { stationary, traveling };

struct ExperimentConfig {
  // gas and transport
  double gamma = 1.4;
  std::optional<double> z_threshold;  ///< default: z_safety times the minimal admissible value
  double z_safety = 2.0;
  double alpha = 1.0;
  double bulk_coeff = 0.0;

  // Euler reference
  FamilyKind family = FamilyKind::stationary;
  double p0 = 1.0;
  double amplitude = 0.2;
  double speed = 0.25;

  // schedule
  double mu0 = 0.1;
  int levels = 5;
  ScheduleOptions schedule;

  // discretization
  int nx = 128;
  int ny = 64;
  WallBc bc = WallBc::slip;
  double t_final = 0.5;
  double cfl = 0.4;
  Limiter limiter = Limiter::minmod;
  RiemannFlux flux = RiemannFlux::hllc;

  // diagnostics
  int time_samples = 10;             ///< sample times k T / time_samples
  bool gap = true;                   ///< evaluate the relative energy inequality
  bool two_grid = true;              ///< coarse rerun for the gap tolerance
  bool fine_check = false;           ///< rerun the last level on the refined grid
  double epsilon = 0.5;              ///< epsilon in the consistency bound
  double entropy_tol_constant = 1.0;
  double perturbation = 0.0;         ///< initial density perturbation amplitude times mu_n^{1/2}

  bool deterministic = false;
  std::string out_dir;
  bool write_snapshots = false;
};

std::string to_string(FamilyKind f);
std::string to_string(WallBc b);

/// Euler solution, gas model and grid implied by a configuration.
EulerSolution euler_solution_for(const ExperimentConfig& cfg);
GasModel gas_for(const ExperimentConfig& cfg, const EulerSolution& sol);

struct TimeSample {
  double time = 0.0;
  double rel_energy = 0.0;
  double gap_lhs = 0.0;
  double gap_rhs = 0.0;
  double gap_tol = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double min_rho = 0.0;
  double min_theta = 0.0;
};

struct LevelReport {
  ScheduleLevel level;
  int nx = 0, ny = 0;
  bool ok = true;
  std::string failure;

  double sup_rel_energy = 0.0;
  double final_rel_energy = 0.0;
  double l1_rho_err = 0.0;  ///< space-time L1 distances to the Euler fields
  double l1_rhoe_err = 0.0;
  double l1_mom_err = 0.0;

  ConsistencyReport consistency;
  std::array<double, 6> consistency_constants{};
  bool chains_ok = true;
  std::string chain_failure;

  KatoReport kato;
  std::array<double, 3> kato_selected{};  ///< alpha1 functionals for alpha = 1, conditional otherwise

  std::vector<TimeSample> series;
  double min_gap_margin = 0.0;  ///< min over samples of gap + tol
  bool gap_evaluated = false;

  double mass_drift = 0.0;    ///< relative
  double energy_drift = 0.0;  ///< relative
  double min_rho = 0.0;
  double min_theta = 0.0;
  double min_entropy_margin = 0.0;
  long steps = 0;
  double wall_seconds = 0.0;

  std::vector<Snapshot> snapshots;
};

struct ConvergenceVerdict {
  bool pass = false;
  bool monotone = false;
  double ratio = 0.0;  ///< last / first
  std::string detail;
};

/// Strictly decreasing series with last/first below the threshold.
ConvergenceVerdict convergence_assert(std::span<const double> series, double ratio_threshold);

struct ExperimentReport {
  ExperimentConfig config;
  DissipationSchedule schedule;
  std::vector<LevelReport> levels;
  std::optional<LevelReport> fine;  ///< refined-grid rerun of the last level
  std::optional<CorrectorSweep> corrector;
  ConsistencyVerdict consistency;
  ConvergenceVerdict convergence;
  std::array<bool, 3> l1_decreasing{};
  bool solver_failure = false;
};

/// One NSF run at the given schedule level and grid with all diagnostics.
LevelReport run_level(const ExperimentConfig& cfg, const ScheduleLevel& level, int nx, int ny,
                      bool with_gap = true);

ExperimentReport run_experiment(const ExperimentConfig& cfg, double ratio_threshold = 0.25);

}  // namespace nsfl
