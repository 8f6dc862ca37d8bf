#pragma once

#include <cstddef>

#include "nsfl/linalg.hpp"

namespace nsfl {

/// Temperature-dependent transport coefficients
///   mu(theta)    = 1 + (1 + theta^2)^{alpha/2}
///   eta(theta)   = bulk_coeff * mu(theta)   (zero by default)
///   kappa(theta) = 1 + theta^3
/// The dimensional prefactors mu_n, kappa_n are supplied per call.
class TransportModel {
 public:
  explicit TransportModel(double alpha, int dim = 2, double bulk_coeff = 0.0);

  double alpha() const noexcept { return alpha_; }
  int dim() const noexcept { return dim_; }
  double bulk_coeff() const noexcept { return bulk_coeff_; }

  // Two-sided growth constants: lower*(1+theta^alpha) <= mu <= upper*(1+theta^alpha).
  static constexpr double mu_lower = 0.5;
  static constexpr double mu_upper = 2.0;
  static constexpr double dmu_bound = 1.0;
  static constexpr double kappa_lower = 1.0;
  static constexpr double kappa_upper = 1.0;
  double eta_upper() const noexcept { return 2.0 * bulk_coeff_; }

 private:
  double alpha_;
  int dim_;
  double bulk_coeff_;
};

double shear_viscosity(const TransportModel& m, double theta);
double shear_viscosity_derivative(const TransportModel& m, double theta);
double bulk_viscosity(const TransportModel& m, double theta);
double heat_conductivity(const TransportModel& m, double theta);

/// S = 2 mu (D - (1/d) div u I) + eta div u I, grad_u(i, j) = d u_i / d x_j.
template <std::size_t D>
Mat<D> viscous_stress(const TransportModel& m, double theta, const Mat<D>& grad_u) {
  const double mu = shear_viscosity(m, theta);
  const double eta = bulk_viscosity(m, theta);
  const double div = trace(grad_u);
  Mat<D> s{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) s[i][j] = mu * (grad_u[i][j] + grad_u[j][i]);
  for (std::size_t i = 0; i < D; ++i) s[i][i] += (eta - 2.0 * mu / static_cast<double>(D)) * div;
  return s;
}

/// q = -kappa(theta) grad theta
template <std::size_t D>
Vec<D> heat_flux(const TransportModel& m, double theta, const Vec<D>& grad_theta) {
  return (-heat_conductivity(m, theta)) * grad_theta;
}

/// (1/theta) (mu_n S : D u - kappa_n q . grad theta / theta)
template <std::size_t D>
double entropy_production(const TransportModel& m, double theta, const Mat<D>& grad_u,
                          const Vec<D>& grad_theta, double mu_n, double kappa_n) {
  const Mat<D> s = viscous_stress<D>(m, theta, grad_u);
  // S is symmetric, so S : D u = S : grad u.
  const double visc = contract(s, grad_u);
  const double heat = heat_conductivity(m, theta) * norm_sq(grad_theta) / theta;
  return (mu_n * visc + kappa_n * heat) / theta;
}

}  // namespace nsfl
