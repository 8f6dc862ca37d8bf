#include "nsfl/schedule.hpp"

#include <cmath>
#include <string>

#include "nsfl/error.hpp"

namespace nsfl {

DissipationSchedule build_schedule(double mu0, double alpha, int levels, const ScheduleOptions& opts) {
  if (!(mu0 > 0.0 && mu0 <= 1.0)) throw InvalidParameter("mu0 must lie in (0, 1]");
  if (!(alpha >= 1.0 / 3.0 - 1e-15 && alpha <= 1.0)) throw InvalidParameter("alpha must lie in [1/3, 1]");
  if (levels < 2) throw InvalidParameter("a schedule needs at least two levels, got " + std::to_string(levels));
  if (!(opts.sigma_power > 0.0)) throw InvalidParameter("slack exponent must be positive so that sigma_n -> 0");
  if (!(opts.delta_power > 0.0 && opts.delta_power < 1.0))
    throw InvalidParameter("layer exponent must lie in (0, 1) so that delta_n -> 0 and mu_n / delta_n -> 0");
  if (!(opts.delta_scale > 0.0)) throw InvalidParameter("layer scale must be positive");

  DissipationSchedule s;
  s.mu0 = mu0;
  s.alpha = alpha;
  const double pa = 4.0 / (1.0 + alpha);
  for (int n = 0; n < levels; ++n) {
    ScheduleLevel l;
    l.n = n;
    l.mu = std::ldexp(mu0, -n);
    l.a = std::pow(l.mu, pa);
    l.sigma = std::pow(l.mu, opts.sigma_power);
    l.kappa = std::pow(l.a, 0.75) * l.sigma;
    l.delta = opts.delta_scale * std::pow(l.mu, opts.delta_power);
    s.levels.push_back(l);
  }
  return s;
}

}  // namespace nsfl
