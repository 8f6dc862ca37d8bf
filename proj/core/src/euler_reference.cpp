#include "nsfl/euler_reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "nsfl/error.hpp"

namespace nsfl {

std::string to_string(EulerKind k) {
  switch (k) {
    case EulerKind::stationary_density:
      return "stationary";
    case EulerKind::traveling_density:
      return "traveling";
    case EulerKind::reference_solver:
      return "reference";
  }
  return "unknown";
}

DensityProfile cosine_profile(double amplitude) {
  using std::numbers::pi;
  DensityProfile p;
  p.rho = [amplitude](double x, double y) {
    const double cy = std::cos(pi * y);
    return 1.0 + amplitude * std::cos(2.0 * pi * x) * cy * cy;
  };
  p.min = 1.0 - std::abs(amplitude);
  p.max = 1.0 + std::abs(amplitude);
  return p;
}

DensityProfile uniform_profile(double value) {
  return {[value](double, double) { return value; }, value, value};
}

EulerSolution::EulerSolution(EulerKind kind, double gamma, std::function<EulerPoint(double, double, double)> eval,
                             double rho_lo, double rho_hi, double e_lo, double e_hi)
    : kind_(kind), gamma_(gamma), eval_(std::move(eval)), rho_lo_(rho_lo), rho_hi_(rho_hi), e_lo_(e_lo), e_hi_(e_hi) {
  if (!(gamma > 1.0)) throw InvalidParameter("gamma must exceed 1");
  if (!(rho_lo > 0.0) || !(e_lo > 0.0)) throw InvalidProfile("Euler solution must have positive density and energy");
}

namespace {

void check_profile(const DensityProfile& prof, double p0) {
  if (!prof.rho) throw InvalidProfile("density profile is empty");
  if (!(prof.min > 0.0) || !(prof.max >= prof.min))
    throw InvalidProfile("density profile must be positive, lower bound " + std::to_string(prof.min));
  if (!(p0 > 0.0)) throw InvalidProfile("background pressure must be positive");
}

}  // namespace

EulerSolution stationary_family(double gamma, double p0, const DensityProfile& profile) {
  check_profile(profile, p0);
  const double k = 1.0 / (gamma - 1.0);
  auto rho = profile.rho;
  return EulerSolution(
      EulerKind::stationary_density, gamma,
      [rho, p0, k](double, double x, double y) {
        const double r = rho(x, y);
        return EulerPoint{r, 0.0, 0.0, k * p0 / r};
      },
      profile.min, profile.max, k * p0 / profile.max, k * p0 / profile.min);
}

EulerSolution traveling_family(double gamma, double p0, double speed, const DensityProfile& profile) {
  check_profile(profile, p0);
  if (speed == 0.0) return stationary_family(gamma, p0, profile);
  const double k = 1.0 / (gamma - 1.0);
  auto rho = profile.rho;
  return EulerSolution(
      EulerKind::traveling_density, gamma,
      [rho, p0, k, speed](double t, double x, double y) {
        const double r = rho(x - speed * t, y);
        return EulerPoint{r, speed, 0.0, k * p0 / r};
      },
      profile.min, profile.max, k * p0 / profile.max, k * p0 / profile.min);
}

double minimal_z_threshold(double gamma, double rho_max, double e_min) {
  if (!(rho_max > 0.0) || !(e_min > 0.0)) throw InvalidParameter("bounds must be positive");
  return rho_max / std::pow((gamma - 1.0) * e_min, 1.0 / (gamma - 1.0));
}

GasModel gas_for(const EulerSolution& sol, double safety) {
  if (!(safety > 1.0)) throw InvalidParameter("threshold safety factor must exceed 1");
  return GasModel(sol.gamma(), safety * minimal_z_threshold(sol.gamma(), sol.rho_hi(), sol.e_lo()));
}

CellArray<double> assign_temperature(const GasModel& gas, const EulerSolution& sol, const Grid& grid, double t) {
  CellArray<double> th(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const double x = grid.xc(i);
      const double y = grid.yc(j);
      const EulerPoint pt = sol.at(t, x, y);
      const double theta = (gas.gamma() - 1.0) * pt.e;
      const double z = gas.z_of(pt.rho, theta);
      if (!(z < gas.z_threshold())) {
        std::ostringstream os;
        os << "Euler state leaves the ideal branch at (" << x << ", " << y << "): Z = " << z
           << " >= " << gas.z_threshold();
        throw ThresholdViolation(os.str());
      }
      th(i, j) = theta;
    }
  }
  return th;
}

namespace {

struct Fields {
  double rho, u, v, theta, p, e;
};

Fields fields_at(const GasModel& gas, const EulerSolution& sol, double t, double x, double y) {
  const EulerPoint pt = sol.at(t, x, y);
  const double th = (gas.gamma() - 1.0) * pt.e;
  return {pt.rho, pt.u, pt.v, th, pressure(gas, ThermoState(pt.rho, th)), pt.e};
}

// Central difference of a scalar functional of the fields along t, x or y.
template <class F>
double dt_(const GasModel& g, const EulerSolution& s, double t, double x, double y, double h, F&& f) {
  return (f(fields_at(g, s, t + h, x, y)) - f(fields_at(g, s, t - h, x, y))) / (2.0 * h);
}
template <class F>
double dx_(const GasModel& g, const EulerSolution& s, double t, double x, double y, double h, F&& f) {
  return (f(fields_at(g, s, t, x + h, y)) - f(fields_at(g, s, t, x - h, y))) / (2.0 * h);
}
template <class F>
double dy_(const GasModel& g, const EulerSolution& s, double t, double x, double y, double h, F&& f) {
  return (f(fields_at(g, s, t, x, y + h)) - f(fields_at(g, s, t, x, y - h))) / (2.0 * h);
}

template <class F>
double l2_norm(const Grid& grid, F&& r) {
  double s = 0.0;
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const double v = r(grid.xc(i), grid.yc(j));
      s += v * v;
    }
  return std::sqrt(s * grid.cell_area());
}

// Pressure partials through the chain rule, so that the truncation error of the
// difference quotients of rho and theta is what remains (not rounding of p).
struct PressureGrad {
  double t, x, y;
};

PressureGrad pressure_gradient(const GasModel& g, const EulerSolution& s, double t, double x, double y, double h) {
  const Fields c = fields_at(g, s, t, x, y);
  const auto d = thermo_derivatives(g, ThermoState(c.rho, c.theta));
  auto rho = [](const Fields& f) { return f.rho; };
  auto th = [](const Fields& f) { return f.theta; };
  return {d.p_rho * dt_(g, s, t, x, y, h, rho) + d.p_theta * dt_(g, s, t, x, y, h, th),
          d.p_rho * dx_(g, s, t, x, y, h, rho) + d.p_theta * dx_(g, s, t, x, y, h, th),
          d.p_rho * dy_(g, s, t, x, y, h, rho) + d.p_theta * dy_(g, s, t, x, y, h, th)};
}

}  // namespace

EulerResidual euler_residual(const GasModel& gas, const EulerSolution& sol, const Grid& grid, double t) {
  const double h = grid.h;
  EulerResidual r;
  r.mass = l2_norm(grid, [&](double x, double y) {
    return dt_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho; }) +
           dx_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.u; }) +
           dy_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.v; });
  });
  r.momentum = l2_norm(grid, [&](double x, double y) {
    const PressureGrad gp = pressure_gradient(gas, sol, t, x, y, h);
    const double rx = dt_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.u; }) +
                      dx_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.u * f.u; }) +
                      dy_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.u * f.v; }) + gp.x;
    const double ry = dt_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.v; }) +
                      dx_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.u * f.v; }) +
                      dy_(gas, sol, t, x, y, h, [](const Fields& f) { return f.rho * f.v * f.v; }) + gp.y;
    return std::hypot(rx, ry);
  });
  auto energy = [](const Fields& f) { return 0.5 * f.rho * (f.u * f.u + f.v * f.v) + f.rho * f.e; };
  r.energy = l2_norm(grid, [&](double x, double y) {
    return dt_(gas, sol, t, x, y, h, energy) +
           dx_(gas, sol, t, x, y, h, [&](const Fields& f) { return (energy(f) + f.p) * f.u; }) +
           dy_(gas, sol, t, x, y, h, [&](const Fields& f) { return (energy(f) + f.p) * f.v; });
  });
  return r;
}

double entropy_conservation_residual(const GasModel& gas, const EulerSolution& sol, const Grid& grid, double t) {
  const double h = grid.h;
  auto rs = [&](const Fields& f) { return f.rho * entropy(gas, ThermoState(f.rho, f.theta)); };
  return l2_norm(grid, [&](double x, double y) {
    return dt_(gas, sol, t, x, y, h, rs) + dx_(gas, sol, t, x, y, h, [&](const Fields& f) { return rs(f) * f.u; }) +
           dy_(gas, sol, t, x, y, h, [&](const Fields& f) { return rs(f) * f.v; });
  });
}

TransportIdentityResidual transport_identity_residuals(const GasModel& gas, const EulerSolution& sol,
                                                       const Grid& grid, double t) {
  const double h = grid.h;
  const double g = gas.gamma();
  auto th = [](const Fields& f) { return f.theta; };
  auto div_u = [&](double x, double y) {
    return dx_(gas, sol, t, x, y, h, [](const Fields& f) { return f.u; }) +
           dy_(gas, sol, t, x, y, h, [](const Fields& f) { return f.v; });
  };
  TransportIdentityResidual r;
  r.theta = l2_norm(grid, [&](double x, double y) {
    const Fields c = fields_at(gas, sol, t, x, y);
    return dt_(gas, sol, t, x, y, h, th) + c.u * dx_(gas, sol, t, x, y, h, th) +
           c.v * dy_(gas, sol, t, x, y, h, th) + (g - 1.0) * c.theta * div_u(x, y);
  });
  r.pressure = l2_norm(grid, [&](double x, double y) {
    const Fields c = fields_at(gas, sol, t, x, y);
    const PressureGrad gp = pressure_gradient(gas, sol, t, x, y, h);
    return gp.t + c.u * gp.x + c.v * gp.y + g * c.p * div_u(x, y);
  });
  return r;
}

double identity_bracket(const GasModel& gas, const ThermoState& base, const ThermoState& st) {
  const double g = gas.gamma();
  const double pe = pressure(gas, base);
  const double se = entropy(gas, base);
  return pe - pressure(gas, st) + (g - 1.0) * base.rho * base.theta * (entropy(gas, st) - se) -
         g * (1.0 - st.rho / base.rho) * pe;
}

double identity_remainder(const GasModel& gas, const ThermoState& base, const ThermoState& st) {
  const double g = gas.gamma();
  const auto d = thermo_derivatives(gas, base);
  const double rt = (g - 1.0) * base.rho * base.theta;
  const double lin_rho = -d.p_rho + rt * d.s_rho + g * d.p / base.rho;
  const double lin_theta = -d.p_theta + rt * d.s_theta;
  return identity_bracket(gas, base, st) - lin_rho * (st.rho - base.rho) - lin_theta * (st.theta - base.theta);
}

AlgebraicIdentityReport algebraic_identity_check(const GasModel& gas, std::span<const ThermoState> samples,
                                                 double eps) {
  constexpr double dirs[4][2] = {{1.0, 0.0}, {0.0, 1.0}, {0.7071067811865476, 0.7071067811865476},
                                 {0.7071067811865476, -0.7071067811865476}};
  AlgebraicIdentityReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  rep.max_ratio = 0.0;
  for (const ThermoState& b : samples) {
    for (const auto& d : dirs) {
      auto rem = [&](double s) {
        return identity_remainder(gas, b, ThermoState(b.rho * (1.0 + s * d[0]), b.theta * (1.0 + s * d[1])));
      };
      const double big = std::abs(rem(eps));
      const double small = std::abs(rem(0.5 * eps));
      rep.max_deviation = std::max(rep.max_deviation, big);
      if (small > 0.0) {
        rep.min_ratio = std::min(rep.min_ratio, big / small);
        rep.max_ratio = std::max(rep.max_ratio, big / small);
      }
      constexpr double probe = 1e-5;
      const double lin = std::abs(rem(probe) - rem(-probe)) / (2.0 * probe);
      rep.max_linear_coeff = std::max(rep.max_linear_coeff, lin);
    }
  }
  if (!std::isfinite(rep.min_ratio)) rep.min_ratio = 0.0;
  return rep;
}

double fitted_order(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw InvalidParameter("order fit needs at least two matching points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t k = 0; k < h.size(); ++k) {
    if (!(h[k] > 0.0) || !(err[k] > 0.0)) throw InvalidParameter("order fit needs positive samples");
    const double x = std::log(h[k]);
    const double y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace nsfl
