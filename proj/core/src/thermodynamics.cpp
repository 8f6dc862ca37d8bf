#include "nsfl/thermodynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <utility>

#include "nsfl/error.hpp"

namespace nsfl {

namespace {

std::string fmt(const char* what, double v) {
  std::ostringstream os;
  os.precision(17);
  os << what << v;
  return os.str();
}

constexpr double kInversionTol = 1e-13;
constexpr int kInversionMaxIter = 60;

// Root of an increasing f on (0, hi] with f(hi) >= 0. Newton steps that leave
// the bracket fall back to bisection.
template <class F>
double invert_monotone(F&& f, double hi, const char* what) {
  double lo = 0.0;
  double x = hi;
  for (int it = 0; it < kInversionMaxIter; ++it) {
    auto [val, slope] = f(x);
    if (val == 0.0) return x;
    if (val > 0.0)
      hi = x;
    else
      lo = x;
    double next = x - val / slope;
    if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
    if (std::abs(next - x) <= kInversionTol * next) return next;
    x = next;
  }
  throw NonPhysicalState(std::string(what) + ": temperature inversion did not converge");
}

}  // namespace

ThermoState::ThermoState(double rho_, double theta_) : rho(rho_), theta(theta_) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw InvalidParameter(fmt("density must be positive, got ", rho));
  if (!(theta > 0.0) || !std::isfinite(theta))
    throw InvalidParameter(fmt("temperature must be positive, got ", theta));
}

GasModel::GasModel(double gamma, double z_threshold)
    : gamma_(gamma), z_threshold_(z_threshold), inv_gm1_(1.0 / (gamma - 1.0)) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) throw InvalidParameter(fmt("gamma must exceed 1, got ", gamma));
  if (!(z_threshold > 0.0) || !std::isfinite(z_threshold))
    throw InvalidParameter(fmt("z_threshold must be positive, got ", z_threshold));
  const double twice = 2.0 * inv_gm1_;
  if (std::abs(twice - std::round(twice)) < 1e-12 && twice > 0.5 && twice < 16.5)
    twice_k_ = static_cast<int>(std::round(twice));
}

double GasModel::theta_pow(double theta) const noexcept {
  if (twice_k_ < 0) return std::pow(theta, inv_gm1_);
  double r = (twice_k_ % 2) ? std::sqrt(theta) : 1.0;
  for (int i = 0; i < twice_k_ / 2; ++i) r *= theta;
  return r;
}

double GasModel::z_of(double rho, double theta) const { return rho / theta_pow(theta); }

// P(Z) = Z_ P1(Z / Z_), S(Z) = S1(Z / Z_) with
//   P1(w) = w                          for w <= 1
//   P1(w) = (gamma-1)/gamma + w^gamma/gamma   for w > 1
//   S1(w) = 1 - log w  /  1 / w.
double GasModel::P(double z) const noexcept {
  const double w = z / z_threshold_;
  if (w <= 1.0) return z;
  return z_threshold_ * ((gamma_ - 1.0) + std::pow(w, gamma_)) / gamma_;
}

double GasModel::dP(double z) const noexcept {
  const double w = z / z_threshold_;
  if (w <= 1.0) return 1.0;
  return std::pow(w, gamma_ - 1.0);
}

double GasModel::S(double z) const noexcept {
  const double w = z / z_threshold_;
  if (w <= 1.0) return 1.0 - std::log(w);
  return 1.0 / w;
}

double GasModel::dS(double z) const noexcept {
  const double w = z / z_threshold_;
  if (w <= 1.0) return -1.0 / z;
  return -z_threshold_ / (z * z);
}

double GasModel::pressure_growth_limit() const noexcept {
  return 1.0 / (gamma_ * std::pow(z_threshold_, gamma_ - 1.0));
}

double GasModel::cold_pressure(double rho) const noexcept {
  return std::pow(rho, gamma_) * pressure_growth_limit();
}

GasModel build_structure_functions(double gamma, double z_threshold) { return GasModel(gamma, z_threshold); }

double pressure(const GasModel& gas, const ThermoState& st) {
  const double tpow = gas.theta_pow(st.theta);
  const double z = st.rho / tpow;
  if (z <= gas.z_threshold()) return st.rho * st.theta;
  return st.theta * tpow * gas.P(z);
}

double internal_energy(const GasModel& gas, const ThermoState& st) {
  return gas.inv_gm1() * pressure(gas, st) / st.rho;
}

double entropy(const GasModel& gas, const ThermoState& st) { return gas.S(gas.z_of(st.rho, st.theta)); }

ThermoDerivatives thermo_derivatives(const GasModel& gas, const ThermoState& st) {
  const double g = gas.gamma();
  const double k = gas.inv_gm1();
  const double rho = st.rho;
  const double th = st.theta;
  const double tpow = gas.theta_pow(th);
  const double z = rho / tpow;

  ThermoDerivatives d{};
  if (z <= gas.z_threshold()) {
    // Identity branch in closed form so that the ideal gas is reproduced exactly.
    d.p = rho * th;
    d.p_rho = th;
    d.p_theta = rho;
  } else {
    const double P = gas.P(z);
    const double dP = gas.dP(z);
    d.p = th * tpow * P;
    d.p_rho = th * dP;
    d.p_theta = tpow * (g * P - dP * z) * k;
  }
  d.e = k * d.p / rho;
  d.e_theta = k * d.p_theta / rho;
  d.e_rho = k * (d.p_rho / rho - d.p / (rho * rho));

  const double dS = gas.dS(z);
  d.s = gas.S(z);
  d.s_rho = dS * z / rho;
  d.s_theta = -dS * k * z / th;
  return d;
}

RadiationComponents radiation_components(double a, const ThermoState& st) {
  if (a < 0.0) throw InvalidParameter(fmt("radiation coefficient must be nonnegative, got ", a));
  const double t3 = st.theta * st.theta * st.theta;
  return {a * t3 * st.theta / 3.0, a * t3 * st.theta / st.rho, 4.0 * a * t3 / (3.0 * st.rho)};
}

GibbsResidual gibbs_residual(const GasModel& gas, const ThermoState& st, double fd_step) {
  if (!(fd_step > 0.0)) throw InvalidParameter(fmt("fd_step must be positive, got ", fd_step));
  if (st.rho < 2.0 * fd_step || st.theta < 2.0 * fd_step)
    throw DegenerateState("finite-difference stencil leaves the admissible state space");

  const double hr = fd_step * st.rho;
  const double ht = fd_step * st.theta;
  auto e = [&](double r, double t) { return internal_energy(gas, ThermoState(r, t)); };
  auto s = [&](double r, double t) { return entropy(gas, ThermoState(r, t)); };

  const double e_t = (e(st.rho, st.theta + ht) - e(st.rho, st.theta - ht)) / (2.0 * ht);
  const double s_t = (s(st.rho, st.theta + ht) - s(st.rho, st.theta - ht)) / (2.0 * ht);
  const double e_r = (e(st.rho + hr, st.theta) - e(st.rho - hr, st.theta)) / (2.0 * hr);
  const double s_r = (s(st.rho + hr, st.theta) - s(st.rho - hr, st.theta)) / (2.0 * hr);
  const double p = pressure(gas, st);

  return {e_t - st.theta * s_t, st.theta * s_r - e_r + p / (st.rho * st.rho)};
}

StabilityReport stability_check(const GasModel& gas, std::span<const double> z_samples) {
  StabilityReport rep;
  rep.min_dP = std::numeric_limits<double>::infinity();
  rep.min_margin = std::numeric_limits<double>::infinity();
  for (double z : z_samples) {
    if (!(z > 0.0) || !std::isfinite(z)) throw InvalidParameter(fmt("stability sample must be positive, got ", z));
    const double dP = gas.dP(z);
    const double margin = gas.gamma() * gas.P(z) - dP * z;
    if (!(dP > 0.0)) throw StabilityViolation(fmt("P'(Z) <= 0 at Z = ", z), z);
    if (!(margin > 0.0)) throw StabilityViolation(fmt("gamma P - P' Z <= 0 at Z = ", z), z);
    rep.min_dP = std::min(rep.min_dP, dP);
    rep.min_margin = std::min(rep.min_margin, margin);
    rep.observed_bound = std::max(rep.observed_bound, margin / z);
    ++rep.samples;
  }
  return rep;
}

double sound_speed_sq(const GasModel& gas, double a, const ThermoState& st) {
  const auto d = thermo_derivatives(gas, st);
  if (a == 0.0) return d.p_rho + st.theta * d.p_theta * d.p_theta / (st.rho * st.rho * d.e_theta);
  const double t3 = st.theta * st.theta * st.theta;
  const double pt = d.p_theta + 4.0 * a * t3 / 3.0;
  const double et = d.e_theta + 4.0 * a * t3 / st.rho;
  return d.p_rho + st.theta * pt * pt / (st.rho * st.rho * et);
}

bool above_cold_floor(const GasModel& gas, double rho, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) return false;
  // Cheap sufficient test first: the ideal-gas temperature lies on the identity branch.
  const double th_ideal = (gas.gamma() - 1.0) * eps / rho;
  if (rho <= gas.z_threshold() * gas.theta_pow(th_ideal)) return true;
  return eps > gas.inv_gm1() * gas.cold_pressure(rho);
}

double temperature_from_energy(const GasModel& gas, double a, double rho, double energy_density) {
  if (!(rho > 0.0)) throw NonPhysicalState(fmt("nonpositive density ", rho));
  if (!above_cold_floor(gas, rho, energy_density))
    throw NonPhysicalState(fmt("internal energy at or below the cold floor: ", energy_density));

  // Since P(Z) >= Z, the ideal-gas temperature bounds the root from above.
  const double th_ideal = (gas.gamma() - 1.0) * energy_density / rho;
  if (a == 0.0 && gas.z_of(rho, th_ideal) <= gas.z_threshold()) return th_ideal;

  // Try the identity branch first: k rho th + a th^4 = energy is convex in th,
  // so Newton from the upper bound th_ideal decreases monotonically to the root.
  if (a > 0.0) {
    const double k = gas.inv_gm1();
    double th = th_ideal;
    for (int it = 0; it < kInversionMaxIter; ++it) {
      const double t3 = th * th * th;
      const double next = th - (k * rho * th + a * t3 * th - energy_density) / (k * rho + 4.0 * a * t3);
      const bool done = std::abs(next - th) <= kInversionTol * next;
      th = next;
      if (done) break;
    }
    if (th > 0.0 && gas.z_of(rho, th) <= gas.z_threshold()) return th;
  }

  auto f = [&](double th) {
    const auto d = thermo_derivatives(gas, ThermoState(rho, th));
    const double t3 = th * th * th;
    return std::pair{rho * d.e + a * t3 * th - energy_density, rho * d.e_theta + 4.0 * a * t3};
  };
  // the radiation part alone also bounds the root
  const double hi = a > 0.0 ? std::min(th_ideal, std::sqrt(std::sqrt(energy_density / a))) : th_ideal;
  return invert_monotone(f, hi, "energy");
}

double temperature_from_pressure(const GasModel& gas, double a, double rho, double total_pressure) {
  if (!(rho > 0.0)) throw NonPhysicalState(fmt("nonpositive density ", rho));
  if (!(total_pressure > gas.cold_pressure(rho)) || !std::isfinite(total_pressure))
    throw NonPhysicalState(fmt("pressure at or below the cold floor: ", total_pressure));

  const double th_ideal = total_pressure / rho;
  if (a == 0.0 && gas.z_of(rho, th_ideal) <= gas.z_threshold()) return th_ideal;

  auto f = [&](double th) {
    const auto d = thermo_derivatives(gas, ThermoState(rho, th));
    const double t3 = th * th * th;
    return std::pair{d.p + a * t3 * th / 3.0 - total_pressure, d.p_theta + 4.0 * a * t3 / 3.0};
  };
  const double hi = a > 0.0 ? std::min(th_ideal, std::sqrt(std::sqrt(3.0 * total_pressure / a))) : th_ideal;
  return invert_monotone(f, hi, "pressure");
}

}  // namespace nsfl
