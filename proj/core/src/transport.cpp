#include "nsfl/transport.hpp"

#include <cmath>
#include <string>

#include "nsfl/error.hpp"

namespace nsfl {

TransportModel::TransportModel(double alpha, int dim, double bulk_coeff)
    : alpha_(alpha), dim_(dim), bulk_coeff_(bulk_coeff) {
  if (!(alpha >= 1.0 / 3.0 - 1e-15 && alpha <= 1.0))
    throw InvalidParameter("alpha must lie in [1/3, 1], got " + std::to_string(alpha));
  if (dim != 2 && dim != 3) throw InvalidParameter("dimension must be 2 or 3, got " + std::to_string(dim));
  if (!(bulk_coeff >= 0.0)) throw InvalidParameter("bulk coefficient must be nonnegative");
}

double shear_viscosity(const TransportModel& m, double theta) {
  if (m.alpha() == 1.0) return 1.0 + std::sqrt(1.0 + theta * theta);
  return 1.0 + std::pow(1.0 + theta * theta, 0.5 * m.alpha());
}

double shear_viscosity_derivative(const TransportModel& m, double theta) {
  return m.alpha() * theta * std::pow(1.0 + theta * theta, 0.5 * m.alpha() - 1.0);
}

double bulk_viscosity(const TransportModel& m, double theta) {
  if (m.bulk_coeff() == 0.0) return 0.0;
  return m.bulk_coeff() * shear_viscosity(m, theta);
}

double heat_conductivity(const TransportModel& /*m*/, double theta) { return 1.0 + theta * theta * theta; }

}  // namespace nsfl
