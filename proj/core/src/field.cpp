#include "nsfl/field.hpp"

#include <cmath>
#include <sstream>

#include "nsfl/error.hpp"

namespace nsfl {

Conserved conservative_from_primitive(const GasModel& gas, double a, const PointState& s) {
  const ThermoState st(s.rho, s.theta);
  const double e = internal_energy(gas, st);
  const double t2 = s.theta * s.theta;
  return {s.rho, s.rho * s.u, s.rho * s.v, 0.5 * s.rho * (s.u * s.u + s.v * s.v) + s.rho * e + a * t2 * t2};
}

Primitive primitive_from_conservative(const GasModel& gas, double a, const Conserved& q) {
  const double rho = q[0];
  if (!(rho > 0.0) || !std::isfinite(rho)) throw NonPhysicalState("nonpositive density");
  Primitive w;
  w.rho = rho;
  w.u = q[1] / rho;
  w.v = q[2] / rho;
  const double eps = q[3] - 0.5 * rho * (w.u * w.u + w.v * w.v);
  w.theta = temperature_from_energy(gas, a, rho, eps);
  const ThermoState st(rho, w.theta);
  const double t2 = w.theta * w.theta;
  w.p = pressure(gas, st) + a * t2 * t2 / 3.0;
  w.c = std::sqrt(sound_speed_sq(gas, a, st));
  return w;
}

FluidField initialize(const GasModel& gas, const Grid& grid, double a, const InitialData& data,
                      const DataBounds& b) {
  FluidField f(grid);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const PointState s = data(grid.xc(i), grid.yc(j));
      const bool bad_rho = (b.rho_hi > 0.0) && !(s.rho > b.rho_lo && s.rho < b.rho_hi);
      const bool bad_theta = (b.theta_hi > 0.0) && !(s.theta > b.theta_lo && s.theta < b.theta_hi);
      const bool bad_u = (b.speed_hi > 0.0) && std::hypot(s.u, s.v) > b.speed_hi;
      if (bad_rho || bad_theta || bad_u || !(s.rho > 0.0) || !(s.theta > 0.0)) {
        std::ostringstream os;
        os << "initial data out of bounds at cell (" << i << ", " << j << "): rho=" << s.rho
           << " theta=" << s.theta << " |u|=" << std::hypot(s.u, s.v);
        throw BoundsViolation(os.str());
      }
      f.q(i, j) = conservative_from_primitive(gas, a, s);
    }
  }
  return f;
}

CellGradients cell_gradients(const Snapshot& s, int i, int j) {
  const auto& w = s.w;
  const double r = 0.5 / s.grid.h;
  CellGradients g;
  g.grad_u[0][0] = (w(i + 1, j).u - w(i - 1, j).u) * r;
  g.grad_u[0][1] = (w(i, j + 1).u - w(i, j - 1).u) * r;
  g.grad_u[1][0] = (w(i + 1, j).v - w(i - 1, j).v) * r;
  g.grad_u[1][1] = (w(i, j + 1).v - w(i, j - 1).v) * r;
  g.grad_theta[0] = (w(i + 1, j).theta - w(i - 1, j).theta) * r;
  g.grad_theta[1] = (w(i, j + 1).theta - w(i, j - 1).theta) * r;
  return g;
}

}  // namespace nsfl
