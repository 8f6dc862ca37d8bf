#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nsfl/grid.hpp"
#include "nsfl/thermodynamics.hpp"

namespace nsfl {

enum class EulerKind { stationary_density, traveling_density, reference_solver };

std::string to_string(EulerKind k);

struct EulerPoint {
  double rho;
  double u;
  double v;
  double e;  ///< specific internal energy
};

/// Smooth positive density profile on the channel, with its range.
struct DensityProfile {
  std::function<double(double x, double y)> rho;
  double min = 0.0;
  double max = 0.0;
};

/// 1 + A cos(2 pi x) cos^2(pi y): periodic in x with period 1, flat at y = 0 and y = 1.
DensityProfile cosine_profile(double amplitude);
DensityProfile uniform_profile(double value);

/// Closed-form Euler solution (rho_E, u_E, e_E)(t, x, y) on the unit-height channel.
class EulerSolution {
 public:
  EulerSolution(EulerKind kind, double gamma, std::function<EulerPoint(double, double, double)> eval, double rho_lo,
                double rho_hi, double e_lo, double e_hi);

  EulerKind kind() const noexcept { return kind_; }
  double gamma() const noexcept { return gamma_; }

  EulerPoint at(double t, double x, double y) const { return eval_(t, x, y); }
  /// theta_E = (gamma - 1) e_E
  double theta(double t, double x, double y) const { return (gamma_ - 1.0) * eval_(t, x, y).e; }

  double rho_lo() const noexcept { return rho_lo_; }
  double rho_hi() const noexcept { return rho_hi_; }
  double e_lo() const noexcept { return e_lo_; }
  double e_hi() const noexcept { return e_hi_; }
  double theta_lo() const noexcept { return (gamma_ - 1.0) * e_lo_; }
  double theta_hi() const noexcept { return (gamma_ - 1.0) * e_hi_; }

 private:
  EulerKind kind_;
  double gamma_;
  std::function<EulerPoint(double, double, double)> eval_;
  double rho_lo_, rho_hi_, e_lo_, e_hi_;
};

/// u_E = 0, e_E = p0 / ((gamma - 1) rho_E).
EulerSolution stationary_family(double gamma, double p0, const DensityProfile& profile);

/// u_E = (speed, 0), rho_E(x - speed t, y), e_E = p0 / ((gamma - 1) rho_E).
EulerSolution traveling_family(double gamma, double p0, double speed, const DensityProfile& profile);

/// Smallest admissible threshold rho_max / ((gamma - 1) e_min)^{1/(gamma-1)}.
double minimal_z_threshold(double gamma, double rho_max, double e_min);

/// Gas model whose threshold is `safety` times the minimal one for the solution.
GasModel gas_for(const EulerSolution& sol, double safety = 2.0);

/// theta_E at cell centers; throws ThresholdViolation if Z_E >= Z_ anywhere.
CellArray<double> assign_temperature(const GasModel& gas, const EulerSolution& sol, const Grid& grid, double t);

struct EulerResidual {
  double mass = 0.0;
  double momentum = 0.0;
  double energy = 0.0;
};

/// Residual norms use central differences with step h in space and time and
/// the discrete L2 norm over cell centers.
EulerResidual euler_residual(const GasModel& gas, const EulerSolution& sol, const Grid& grid, double t);
double entropy_conservation_residual(const GasModel& gas, const EulerSolution& sol, const Grid& grid, double t);

struct TransportIdentityResidual {
  double theta = 0.0;
  double pressure = 0.0;
};

TransportIdentityResidual transport_identity_residuals(const GasModel& gas, const EulerSolution& sol,
                                                       const Grid& grid, double t);

struct AlgebraicIdentityReport {
  double max_deviation = 0.0;  ///< at the largest probe amplitude
  double min_ratio = 0.0;      ///< deviation(eps) / deviation(eps/2)
  double max_ratio = 0.0;
  double max_linear_coeff = 0.0;
};

/// Bracket  p_E - p + (gamma-1) rho_E theta_E (s - s_E) - gamma (1 - rho/rho_E) p_E
/// evaluated at (rho, theta) near the base state, minus its linearization at the base.
double identity_bracket(const GasModel& gas, const ThermoState& base, const ThermoState& state);
double identity_remainder(const GasModel& gas, const ThermoState& base, const ThermoState& state);

/// Taylor-order probe of the remainder at relative amplitude eps and eps/2.
AlgebraicIdentityReport algebraic_identity_check(const GasModel& gas, std::span<const ThermoState> samples,
                                                 double eps = 1e-2);

/// Least-squares slope of log(err) against log(h).
double fitted_order(std::span<const double> h, std::span<const double> err);

}  // namespace nsfl
