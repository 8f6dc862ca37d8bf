#pragma once

// Independent reference formulas used by the tests. Nothing here calls into
// the library; each function is written from the defining formulas.

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Proof formulas on the unit threshold.
inline double p1(double gamma, double w) { return w <= 1.0 ? w : (gamma - 1.0) / gamma + std::pow(w, gamma) / gamma; }
inline double s1(double w) { return w <= 1.0 ? 1.0 - std::log(w) : 1.0 / w; }

// Scaled structure functions P(Z) = Zt P1(Z / Zt), S(Z) = S1(Z / Zt).
inline double P(double gamma, double zt, double z) { return zt * p1(gamma, z / zt); }
inline double S(double zt, double z) { return s1(z / zt); }

inline double Z(double gamma, double rho, double theta) { return rho / std::pow(theta, 1.0 / (gamma - 1.0)); }

inline double pressure(double gamma, double zt, double rho, double theta) {
  return std::pow(theta, gamma / (gamma - 1.0)) * P(gamma, zt, Z(gamma, rho, theta));
}
inline double energy(double gamma, double zt, double rho, double theta) {
  return pressure(gamma, zt, rho, theta) / ((gamma - 1.0) * rho);
}
inline double entropy(double gamma, double zt, double rho, double theta) { return S(zt, Z(gamma, rho, theta)); }

// Isentropic sound speed squared of an ideal gas p = rho theta, e = theta / (gamma - 1).
inline double ideal_sound_speed_sq(double gamma, double theta) { return gamma * theta; }

// H_Theta = rho (e - Theta s) plus radiation rho (e_R - Theta s_R).
inline double ballistic(double gamma, double zt, double a, double rho, double theta, double Theta) {
  const double er = a * std::pow(theta, 4) / rho;
  const double sr = 4.0 * a * std::pow(theta, 3) / (3.0 * rho);
  return rho * (energy(gamma, zt, rho, theta) - Theta * entropy(gamma, zt, rho, theta)) + rho * (er - Theta * sr);
}

// Central second differences of f(x, y) at (x0, y0) with relative steps.
inline std::array<double, 3> hessian(const std::function<double(double, double)>& f, double x0, double y0,
                                     double h = 1e-4) {
  const double hx = h * std::max(1.0, std::abs(x0));
  const double hy = h * std::max(1.0, std::abs(y0));
  const double fxx = (f(x0 + hx, y0) - 2.0 * f(x0, y0) + f(x0 - hx, y0)) / (hx * hx);
  const double fyy = (f(x0, y0 + hy) - 2.0 * f(x0, y0) + f(x0, y0 - hy)) / (hy * hy);
  const double fxy =
      (f(x0 + hx, y0 + hy) - f(x0 + hx, y0 - hy) - f(x0 - hx, y0 + hy) + f(x0 - hx, y0 - hy)) / (4.0 * hx * hy);
  return {fxx, fxy, fyy};
}

// Least-squares slope of log(err) against log(h).
inline double slope(const std::vector<double>& h, const std::vector<double>& err) {
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    const double x = std::log(h[k]), y = std::log(err[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline double smoothstep5(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 - 15.0 * s + 6.0 * s * s);
}

}  // namespace oracle
