#include "nsfl/boundary_layer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsfl/error.hpp"

namespace nsfl {

BoundaryGeometry::BoundaryGeometry(double ly) : ly_(ly) {
  if (!(ly > 0.0)) throw InvalidParameter("channel height must be positive");
}

double BoundaryGeometry::layer_fraction(double y, double h, double delta) const noexcept {
  const double lo = y - 0.5 * h;
  const double hi = y + 0.5 * h;
  const double bottom = std::clamp(std::min(hi, delta) - lo, 0.0, h);
  const double top = std::clamp(hi - std::max(lo, ly_ - delta), 0.0, h);
  return std::min(1.0, (bottom + top) / h);
}

NormalTangential normal_tangential_split(const BoundaryGeometry& g, double y, const Vec2& w) {
  const Vec2 nd = g.grad_distance(y);
  const Vec2 wn = dot(w, nd) * nd;
  return {wn, w - wn};
}

double layer_cutoff(double s) {
  if (s <= 0.0) return 1.0;
  if (s >= 1.0) return 0.0;
  return 1.0 - s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

double layer_cutoff_derivative(double s) {
  if (s <= 0.0 || s >= 1.0) return 0.0;
  const double q = s * (1.0 - s);
  return -30.0 * q * q;
}

Corrector::Corrector(BoundaryGeometry geometry, EulerSolution euler, double delta)
    : geom_(geometry), euler_(std::move(euler)), delta_(delta) {
  if (!(delta > 0.0 && delta < 0.5 * geom_.ly())) {
    std::ostringstream os;
    os << "layer thickness must lie in (0, " << 0.5 * geom_.ly() << "), got " << delta;
    throw InvalidDelta(os.str());
  }
}

Vec2 Corrector::operator()(double t, double x, double y) const {
  const double xi = layer_cutoff(geom_.distance(y) / delta_);
  if (xi == 0.0) return {0.0, 0.0};
  const Vec2 p = geom_.projection(x, y);
  const EulerPoint e = euler_.at(t, p[0], p[1]);
  return {xi * e.u, xi * e.v};
}

Corrector build_corrector(const BoundaryGeometry& geometry, const EulerSolution& euler, double delta) {
  return Corrector(geometry, euler, delta);
}

CorrectorEstimates corrector_estimates(const Corrector& c, const Grid& grid, std::span<const double> times) {
  CorrectorEstimates est;
  est.delta = c.delta();
  const double h = grid.h;
  double sup_dt = 0.0, sup_v = 0.0;
  for (double t : times) {
    for (int j = 0; j < grid.ny; ++j) {
      for (int i = 0; i < grid.nx; ++i) {
        const double x = grid.xc(i);
        const double y = grid.yc(j);
        const Vec2 vxp = c(t, x + h, y), vxm = c(t, x - h, y);
        const Vec2 vyp = c(t, x, y + h), vym = c(t, x, y - h);
        const Vec2 vtp = c(t + h, x, y), vtm = c(t - h, x, y);
        const Vec2 dx = (0.5 / h) * (vxp - vxm);
        const Vec2 dy = (0.5 / h) * (vyp - vym);
        const Vec2 dt = (0.5 / h) * (vtp - vtm);
        est.div = std::max(est.div, std::abs(dx[0] + dy[1]));
        est.grad_tau = std::max(est.grad_tau, norm(dx));
        est.grad_n = std::max(est.grad_n, norm(dy));
        sup_dt = std::max(sup_dt, norm(dt));
        sup_v = std::max(sup_v, norm(c(t, x, y)));
      }
    }
  }
  est.dt_plus_value = sup_dt + sup_v;
  return est;
}

CorrectorSweep corrector_delta_sweep(const BoundaryGeometry& g, const EulerSolution& euler, const Grid& grid,
                                     std::span<const double> deltas, std::span<const double> times) {
  if (deltas.size() < 2) throw InvalidParameter("delta sweep needs at least two thicknesses");
  CorrectorSweep sw;
  for (double d : deltas) sw.estimates.push_back(corrector_estimates(build_corrector(g, euler, d), grid, times));

  constexpr double floor = 1e-10;
  auto variation = [&](auto get) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& e : sw.estimates) {
      lo = std::min(lo, get(e));
      hi = std::max(hi, get(e));
    }
    if (hi < floor) return 1.0;
    return lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
  };
  sw.variation[0] = variation([](const CorrectorEstimates& e) { return e.div; });
  sw.variation[1] = variation([](const CorrectorEstimates& e) { return e.dt_plus_value; });
  sw.variation[2] = variation([](const CorrectorEstimates& e) { return e.grad_tau; });

  std::vector<double> ds, gn;
  for (const auto& e : sw.estimates) {
    ds.push_back(e.delta);
    gn.push_back(e.grad_n);
  }
  const bool nonzero = std::all_of(gn.begin(), gn.end(), [](double v) { return v > 0.0; });
  sw.grad_n_exponent = nonzero ? fitted_order(ds, gn) : 0.0;
  sw.pass = nonzero && sw.variation[0] < 2.0 && sw.variation[1] < 2.0 && sw.variation[2] < 2.0 &&
            sw.grad_n_exponent >= -1.2 && sw.grad_n_exponent <= -0.8;
  return sw;
}

KatoIntegrands kato_integrands(const BoundaryGeometry& g, const TransportModel& tr, const Snapshot& s, double mu,
                               double delta) {
  const double alpha = tr.alpha();
  const double p = 24.0 / (17.0 + 3.0 * alpha);
  const double h = s.grid.h;
  KatoIntegrands k;
  double lp = 0.0, th_norm = 0.0;
  for (int j = 0; j < s.grid.ny; ++j) {
    const double y = s.grid.yc(j);
    const double wm = g.layer_fraction(y, h, mu);
    const double wd = g.layer_fraction(y, h, delta);
    if (wm == 0.0 && wd == 0.0) continue;
    const double d = g.distance(y);
    for (int i = 0; i < s.grid.nx; ++i) {
      const Primitive& w = s.w(i, j);
      const NormalTangential nt = normal_tangential_split(g, y, {w.u, w.v});
      const double mn = w.rho * norm(nt.n);
      if (wm > 0.0) {
        const CellGradients gr = cell_gradients(s, i, j);
        const Mat2 st = viscous_stress<2>(tr, w.theta, gr.grad_u);
        k.grad_stress += wm * contract(st, st);
        k.grad_momentum += wm * (w.rho * (w.u * w.u + w.v * w.v) + mn * mn) / (d * d);
      }
      if (wd > 0.0) {
        k.theta_pow += wd * std::pow(w.theta, 1.0 + alpha);
        k.theta_sq += wd * w.theta * w.theta;
        lp += wd * std::pow(mn, p);
        if (alpha < 1.0) th_norm += wd * std::pow(std::pow(w.theta, 0.5 * (1.0 - alpha)), 8.0 / (1.0 - alpha));
        k.l2_momentum_sq += wd * mn * mn;
      }
    }
  }
  const double da = s.grid.cell_area();
  k.grad_stress *= da;
  k.grad_momentum *= da;
  k.theta_pow *= da;
  k.theta_sq *= da;
  k.l2_momentum_sq *= da;
  k.lp_momentum = std::pow(lp * da, 1.0 / p);
  k.theta_norm_sq = alpha < 1.0 ? std::pow(th_norm * da, 2.0 * (1.0 - alpha) / 8.0) : 1.0;
  return k;
}

namespace {

double conditional_third(const KatoIntegrands& k, double mu, double delta) {
  return k.lp_momentum / delta + k.lp_momentum * k.lp_momentum * k.theta_norm_sq / (delta * delta * mu);
}

KatoIntegrands axpy(const KatoIntegrands& acc, double w, const KatoIntegrands& a, const KatoIntegrands& b) {
  KatoIntegrands r = acc;
  r.grad_stress += w * (a.grad_stress + b.grad_stress);
  r.grad_momentum += w * (a.grad_momentum + b.grad_momentum);
  r.theta_pow += w * (a.theta_pow + b.theta_pow);
  r.theta_sq += w * (a.theta_sq + b.theta_sq);
  r.l2_momentum_sq += w * (a.l2_momentum_sq + b.l2_momentum_sq);
  return r;
}

}  // namespace

KatoAccumulator::KatoAccumulator(BoundaryGeometry geometry, TransportModel transport, const Grid& grid, double mu,
                                 double delta)
    : geom_(geometry), tr_(transport), h_(grid.h), mu_(mu), delta_(delta) {
  if (!(mu > 0.0)) throw InvalidParameter("Kato functionals need a positive viscosity");
  if (!(delta > 0.0 && delta < 0.5 * geom_.ly())) throw InvalidDelta("layer thickness out of range");
}

void KatoAccumulator::add(const Snapshot& before, const Snapshot& after, double dt) {
  if (!has_last_ || last_t_ != before.time) last_ = kato_integrands(geom_, tr_, before, mu_, delta_);
  const KatoIntegrands next = kato_integrands(geom_, tr_, after, mu_, delta_);
  integral_ = axpy(integral_, 0.5 * dt, last_, next);
  cond_third_ += 0.5 * dt * (conditional_third(last_, mu_, delta_) + conditional_third(next, mu_, delta_));
  last_ = next;
  last_t_ = after.time;
  has_last_ = true;
}

KatoReport KatoAccumulator::report() const {
  KatoReport r;
  r.gradient = {mu_ * integral_.grad_stress, mu_ * integral_.grad_momentum};
  r.conditional = {mu_ / delta_, integral_.theta_pow / delta_, cond_third_};
  r.alpha1 = {mu_ / delta_, integral_.theta_sq / delta_, integral_.l2_momentum_sq / mu_};
  r.gradient_resolved = mu_ >= 2.0 * h_;
  r.layer_resolved = delta_ >= 4.0 * h_;
  return r;
}

namespace {

KatoReport history_report(const BoundaryGeometry& g, const TransportModel& tr, std::span<const Snapshot> history,
                          double mu, double delta) {
  if (history.empty()) throw InvalidParameter("empty run history");
  KatoAccumulator acc(g, tr, history.front().grid, mu, delta);
  for (std::size_t k = 1; k < history.size(); ++k)
    acc.add(history[k - 1], history[k], history[k].time - history[k - 1].time);
  return acc.report();
}

void require_layer(const Grid& grid, double delta) {
  if (delta < 4.0 * grid.h) {
    std::ostringstream os;
    os << "layer thickness " << delta << " is below four cells (h = " << grid.h << ")";
    throw UnresolvedLayer(os.str());
  }
}

}  // namespace

std::array<double, 2> kato_gradient_criterion(const BoundaryGeometry& g, const TransportModel& tr,
                                              std::span<const Snapshot> history, double mu_n, bool* resolved) {
  const double delta = std::min(mu_n, 0.49 * g.ly());
  const KatoReport r = history_report(g, tr, history, mu_n, delta);
  if (resolved) *resolved = r.gradient_resolved;
  return r.gradient;
}

std::array<double, 3> kato_conditional_criterion(const BoundaryGeometry& g, const TransportModel& tr,
                                                 std::span<const Snapshot> history, double delta_n, double mu_n) {
  if (!(tr.alpha() < 1.0)) throw InvalidParameter("conditional criterion needs alpha < 1; use the alpha = 1 form");
  if (history.empty()) throw InvalidParameter("empty run history");
  require_layer(history.front().grid, delta_n);
  return history_report(g, tr, history, mu_n, delta_n).conditional;
}

std::array<double, 3> kato_alpha1_criterion(const BoundaryGeometry& g, const TransportModel& tr,
                                            std::span<const Snapshot> history, double delta_n, double mu_n) {
  if (history.empty()) throw InvalidParameter("empty run history");
  require_layer(history.front().grid, delta_n);
  return history_report(g, tr, history, mu_n, delta_n).alpha1;
}

}  // namespace nsfl
