#pragma once

#include <cstddef>
#include <span>

namespace nsfl {

/// Strictly positive (density, temperature) pair.
struct ThermoState {
  double rho;
  double theta;

  ThermoState(double rho_, double theta_);
};

/// Polytropic gas whose pressure and entropy are generated by the structure
/// functions P, S of Z = rho / theta^{1/(gamma-1)}:
///
///   p = theta^{gamma/(gamma-1)} P(Z),  e = p / ((gamma-1) rho),  s = S(Z).
///
/// P(Z) = Z below the threshold (Boyle-Mariotte), P grows like Z^gamma above it.
class GasModel {
 public:
  GasModel(double gamma, double z_threshold);

  double gamma() const noexcept { return gamma_; }
  double z_threshold() const noexcept { return z_threshold_; }
  /// 1 / (gamma - 1)
  double inv_gm1() const noexcept { return inv_gm1_; }

  double z_of(double rho, double theta) const;
  /// theta^{1/(gamma-1)}; exact integer and half-integer exponents avoid pow.
  double theta_pow(double theta) const noexcept;

  double P(double z) const noexcept;
  double dP(double z) const noexcept;
  double S(double z) const noexcept;
  double dS(double z) const noexcept;

  /// lim P(Z)/Z^gamma as Z -> infinity.
  double pressure_growth_limit() const noexcept;

  /// Pressure at (rho, theta -> 0+); the cold floor below which no temperature exists.
  double cold_pressure(double rho) const noexcept;

 private:
  double gamma_;
  double z_threshold_;
  double inv_gm1_;
  int twice_k_ = -1;  ///< 2/(gamma-1) when it is a small integer up to rounding
};

GasModel build_structure_functions(double gamma, double z_threshold);

double pressure(const GasModel& gas, const ThermoState& state);
double internal_energy(const GasModel& gas, const ThermoState& state);
double entropy(const GasModel& gas, const ThermoState& state);

/// Values and analytic first partials of p, e, s (gas part only).
struct ThermoDerivatives {
  double p, e, s;
  double p_rho, p_theta;
  double e_rho, e_theta;
  double s_rho, s_theta;
};

ThermoDerivatives thermo_derivatives(const GasModel& gas, const ThermoState& state);

struct RadiationComponents {
  double p;
  double e;
  double s;
};

RadiationComponents radiation_components(double a, const ThermoState& state);

struct GibbsResidual {
  double r1;  ///< e_theta - theta s_theta
  double r2;  ///< theta s_rho - e_rho + p / rho^2
};

/// Gibbs relation checked with central differences of e and s; the step in
/// each variable is fd_step * value.
GibbsResidual gibbs_residual(const GasModel& gas, const ThermoState& state, double fd_step = 1e-5);

struct StabilityReport {
  std::size_t samples = 0;
  double min_dP = 0.0;
  double min_margin = 0.0;      ///< min of gamma P - P' Z
  double observed_bound = 0.0;  ///< max of (gamma P - P' Z) / Z
};

/// Throws StabilityViolation at the first offending Z.
StabilityReport stability_check(const GasModel& gas, std::span<const double> z_samples);

/// Squared sound speed of the gas-plus-radiation mixture.
double sound_speed_sq(const GasModel& gas, double a, const ThermoState& state);

/// True when the internal energy density eps exceeds the cold floor at rho,
/// i.e. a positive temperature with rho e = eps exists.
bool above_cold_floor(const GasModel& gas, double rho, double eps);

/// Temperature with rho e(rho, theta) + a theta^4 = energy_density.
/// Throws NonPhysicalState when the energy is at or below the cold floor.
double temperature_from_energy(const GasModel& gas, double a, double rho, double energy_density);

/// Temperature with p(rho, theta) + a theta^4 / 3 = total_pressure.
double temperature_from_pressure(const GasModel& gas, double a, double rho, double total_pressure);

}  // namespace nsfl
