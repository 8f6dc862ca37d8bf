#pragma once

#include <array>
#include <span>
#include <vector>

#include "nsfl/euler_reference.hpp"
#include "nsfl/field.hpp"
#include "nsfl/linalg.hpp"
#include "nsfl/transport.hpp"

namespace nsfl {

/// Distance to the walls of the channel [0, Lx] x [0, Ly].
class BoundaryGeometry {
 public:
  explicit BoundaryGeometry(double ly = 1.0);

  double ly() const noexcept { return ly_; }
  double distance(double y) const noexcept { return y < 0.5 * ly_ ? y : ly_ - y; }
  /// Nearest wall point of (x, y).
  Vec2 projection(double x, double y) const noexcept { return {x, y < 0.5 * ly_ ? 0.0 : ly_}; }
  /// Gradient of the distance; equals minus the outward normal at the projection.
  Vec2 grad_distance(double y) const noexcept { return {0.0, y < 0.5 * ly_ ? 1.0 : -1.0}; }
  Vec2 outward_normal(double y) const noexcept { return {0.0, y < 0.5 * ly_ ? -1.0 : 1.0}; }

  /// Overlap of the cell row centred at y (height h) with the layer {d < delta}.
  double layer_fraction(double y, double h, double delta) const noexcept;

 private:
  double ly_;
};

struct NormalTangential {
  Vec2 n;
  Vec2 tau;
};

/// w_n = (w . grad d) grad d,  w_tau = w - w_n
NormalTangential normal_tangential_split(const BoundaryGeometry& g, double y, const Vec2& w);

/// Reversed quintic smoothstep: 1 for s <= 0, 0 for s >= 1.
double layer_cutoff(double s);
double layer_cutoff_derivative(double s);

/// v_delta(t, x) = xi(d(x) / delta) u_E(t, Pi(x)).
class Corrector {
 public:
  Corrector(BoundaryGeometry geometry, EulerSolution euler, double delta);

  double delta() const noexcept { return delta_; }
  const BoundaryGeometry& geometry() const noexcept { return geom_; }
  Vec2 operator()(double t, double x, double y) const;

 private:
  BoundaryGeometry geom_;
  EulerSolution euler_;
  double delta_;
};

Corrector build_corrector(const BoundaryGeometry& geometry, const EulerSolution& euler, double delta);

struct CorrectorEstimates {
  double delta = 0.0;
  double div = 0.0;          ///< sup |div v_delta|
  double dt_plus_value = 0.0; ///< sup |d_t v_delta| + sup |v_delta|
  double grad_tau = 0.0;     ///< sup |d_x v_delta|
  double grad_n = 0.0;       ///< sup |d_y v_delta|
};

/// Sup norms by central differences at cell centres and the given times.
CorrectorEstimates corrector_estimates(const Corrector& c, const Grid& grid, std::span<const double> times);

struct CorrectorSweep {
  std::vector<CorrectorEstimates> estimates;
  std::array<double, 3> variation{};  ///< max/min of the delta-independent norms (1 when all vanish)
  double grad_n_exponent = 0.0;       ///< fitted slope of log grad_n against log delta
  bool pass = false;
};

CorrectorSweep corrector_delta_sweep(const BoundaryGeometry& g, const EulerSolution& euler, const Grid& grid,
                                     std::span<const double> deltas, std::span<const double> times);

/// Instantaneous layer integrands of the Kato-type functionals.
struct KatoIntegrands {
  double grad_stress = 0.0;    ///< int_{d<mu} |S|^2
  double grad_momentum = 0.0;  ///< int_{d<mu} rho |u|^2 / d^2 + rho^2 |u_n|^2 / d^2
  double theta_pow = 0.0;      ///< int_{d<delta} theta^{1+alpha}
  double theta_sq = 0.0;       ///< int_{d<delta} theta^2
  double lp_momentum = 0.0;    ///< |rho u_n|_{L^p(d<delta)}, p = 24/(17+3 alpha)
  double theta_norm_sq = 0.0;  ///< |theta^{(1-alpha)/2}|^2_{L^{8/(1-alpha)}(d<delta)}
  double l2_momentum_sq = 0.0; ///< |rho u_n|^2_{L^2(d<delta)}
};

KatoIntegrands kato_integrands(const BoundaryGeometry& g, const TransportModel& tr, const Snapshot& s, double mu,
                               double delta);

struct KatoReport {
  std::array<double, 2> gradient{};     ///< rr2b functionals
  std::array<double, 3> conditional{};  ///< r2b functionals (alpha < 1)
  std::array<double, 3> alpha1{};       ///< r2bis functionals
  bool gradient_resolved = false;       ///< mu >= 2h
  bool layer_resolved = false;          ///< delta >= 4h
};

/// Trapezoidal time integration of the Kato functionals over solver steps.
class KatoAccumulator {
 public:
  KatoAccumulator(BoundaryGeometry geometry, TransportModel transport, const Grid& grid, double mu, double delta);
  void add(const Snapshot& before, const Snapshot& after, double dt);
  KatoReport report() const;

 private:
  BoundaryGeometry geom_;
  TransportModel tr_;
  double h_, mu_, delta_;
  KatoIntegrands last_{};
  double last_t_ = -1.0;
  bool has_last_ = false;
  KatoIntegrands integral_{};
  double cond_third_ = 0.0;
};

/// Functionals over a stored history (trapezoid between consecutive snapshots).
std::array<double, 2> kato_gradient_criterion(const BoundaryGeometry& g, const TransportModel& tr,
                                              std::span<const Snapshot> history, double mu_n, bool* resolved = nullptr);
std::array<double, 3> kato_conditional_criterion(const BoundaryGeometry& g, const TransportModel& tr,
                                                 std::span<const Snapshot> history, double delta_n, double mu_n);
std::array<double, 3> kato_alpha1_criterion(const BoundaryGeometry& g, const TransportModel& tr,
                                            std::span<const Snapshot> history, double delta_n, double mu_n);

}  // namespace nsfl
