#pragma once

#include <vector>

namespace nsfl {

struct ScheduleLevel {
  int n = 0;
  double mu = 0.0;
  double a = 0.0;      ///< mu^{4/(1+alpha)}
  double sigma = 0.0;  ///< slack kappa / a^{3/4}
  double kappa = 0.0;  ///< a^{3/4} sigma
  double delta = 0.0;  ///< layer thickness
};

struct ScheduleOptions {
  double sigma_power = 0.5;  ///< sigma_n = mu_n^{sigma_power}
  double delta_power = 0.5;  ///< delta_n = delta_scale * mu_n^{delta_power}
  double delta_scale = 1.0;
};

struct DissipationSchedule {
  double mu0 = 0.0;
  double alpha = 1.0;
  std::vector<ScheduleLevel> levels;
};

/// mu_n = mu0 2^{-n}, a_n = mu_n^{4/(1+alpha)}, kappa_n = a_n^{3/4} sigma_n.
DissipationSchedule build_schedule(double mu0, double alpha, int levels, const ScheduleOptions& opts = {});

}  // namespace nsfl
