#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "nsfl/field.hpp"
#include "nsfl/grid.hpp"
#include "nsfl/thermodynamics.hpp"
#include "nsfl/transport.hpp"

namespace nsfl {

enum class WallBc { slip, no_slip };

/// Wall condition; the thermal condition is always no-flux.
struct BoundarySpec {
  WallBc kind = WallBc::slip;
};

enum class Limiter { minmod, mc, none };
enum class RiemannFlux { hllc, rusanov };

struct Coefficients {
  double mu = 0.0;
  double kappa = 0.0;
  double a = 0.0;
};

struct SolverOptions {
  double cfl = 0.4;
  Limiter limiter = Limiter::minmod;
  RiemannFlux flux = RiemannFlux::hllc;
};

/// Explicit finite-volume integrator for the scaled Navier-Stokes-Fourier
/// system with radiation. Holds scratch storage, so one instance per thread.
class Stepper {
 public:
  Stepper(GasModel gas, TransportModel transport, Grid grid, BoundarySpec bc, Coefficients coeffs,
          SolverOptions opts = {});

  const GasModel& gas() const noexcept { return gas_; }
  const TransportModel& transport() const noexcept { return transport_; }
  const Grid& grid() const noexcept { return grid_; }
  const BoundarySpec& bc() const noexcept { return bc_; }
  const Coefficients& coeffs() const noexcept { return coeffs_; }
  const SolverOptions& options() const noexcept { return opts_; }

  /// Primitive snapshot of the field with ghosts filled.
  Snapshot snapshot(const FluidField& f) const;
  void fill_snapshot(const FluidField& f, Snapshot& out) const;
  void fill_ghosts(CellArray<Primitive>& w) const;

  double stable_dt(const Snapshot& s) const;
  double stable_dt(const FluidField& f) const { return stable_dt(snapshot(f)); }

  /// One SSP-RK2 step; `current` must be the snapshot of `f`.
  void advance(FluidField& f, const Snapshot& current, double dt);
  void advance(FluidField& f, double dt) { advance(f, snapshot(f), dt); }

  /// Semi-discrete right-hand side dq/dt for the given snapshot.
  void rhs(const Snapshot& s, CellArray<Conserved>& out);

 private:
  void check_positivity(const FluidField& f) const;

  GasModel gas_;
  TransportModel transport_;
  Grid grid_;
  BoundarySpec bc_;
  Coefficients coeffs_;
  SolverOptions opts_;

  CellArray<Conserved> k1_, k2_;
  CellArray<Conserved> fx_, fy_;
  Snapshot stage_;
  FluidField tmp_;
};

FluidField step(const GasModel& gas, const TransportModel& transport, const FluidField& field,
                const BoundarySpec& bc, const Coefficients& coeffs, double dt, const SolverOptions& opts = {});

double stable_dt(const GasModel& gas, const TransportModel& transport, const FluidField& field,
                 const BoundarySpec& bc, const Coefficients& coeffs, const SolverOptions& opts = {});

/// Total entropy  int rho (s + s_R).
double total_entropy(const GasModel& gas, double a, const Snapshot& s);

/// int (1/theta)(mu_n S : grad u - kappa_n q . grad theta / theta)
double total_entropy_production(const TransportModel& transport, const Snapshot& s, double mu_n, double kappa_n);

double total_mass(const FluidField& f);
double total_energy_content(const FluidField& f);

/// Entropy change minus the trapezoidal production over the step; walls carry no entropy flux.
double discrete_entropy_production(const GasModel& gas, const TransportModel& transport, const Snapshot& before,
                                   const Snapshot& after, double dt, double mu_n, double kappa_n, double a);

/// Tolerance C (h^2 + dt^2) |Omega| dt for the entropy defect.
double entropy_defect_tolerance(const Grid& g, double dt, double c = 1.0);

struct MonitorSample {
  double time = 0.0;
  double dt = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double min_rho = 0.0;
  double min_theta = 0.0;
  double entropy_defect = 0.0;
  double entropy_tol = 0.0;
};

/// Called after every accepted step with the snapshots before and after.
using StepObserver = std::function<void(const Snapshot& before, const Snapshot& after, double dt)>;

struct RunConfig {
  double t_final = 0.0;
  std::vector<double> snapshot_times;  ///< inside [0, t_final]; steps are clipped to hit them
  bool monitor_entropy = true;
  double entropy_tol_constant = 1.0;
  long max_steps = 10'000'000;
};

struct RunResult {
  std::vector<Snapshot> snapshots;
  std::vector<MonitorSample> monitors;
  FluidField final_field;
  long steps = 0;
  bool failed = false;
  std::string failure;
  double min_entropy_margin = 0.0;  ///< min over steps of defect + tol
};

/// Advances `initial` to t_final. Step errors are caught and reported in the
/// result (failed = true) together with everything computed so far.
RunResult run(Stepper& stepper, const FluidField& initial, const RunConfig& cfg, const StepObserver& observer = {});

}  // namespace nsfl
