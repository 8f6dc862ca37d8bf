#include "nsfl/relative_energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "nsfl/error.hpp"

namespace nsfl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double smoothstep5(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double plateau(double x, double lo, double hi, double m) {
  if (x >= lo && x <= hi) return 1.0;
  if (x < lo) {
    const double a = lo / m;
    return x <= a ? 0.0 : smoothstep5((x - a) / (lo - a));
  }
  const double b = hi * m;
  return x >= b ? 0.0 : smoothstep5((b - x) / (b - hi));
}

// X = grad u + grad u^T - div u I (two dimensions)
Mat2 deviator2(const Mat2& g) {
  const double div = g[0][0] + g[1][1];
  Mat2 x{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) x[i][j] = g[i][j] + g[j][i];
  x[0][0] -= div;
  x[1][1] -= div;
  return x;
}

double theta4(double th) {
  const double t2 = th * th;
  return t2 * t2;
}

}  // namespace

TrioJet trio_jet(const TestTrio& trio, double t, double x, double y, double step) {
  TrioJet j;
  j.value = trio.eval(t, x, y);
  const double r2 = 0.5 / step;
  auto diff = [&](const TrioPoint& p, const TrioPoint& m, double& dr, double& dT, Vec2& dU) {
    dr = (p.r - m.r) * r2;
    dT = (p.Theta - m.Theta) * r2;
    dU = {(p.U[0] - m.U[0]) * r2, (p.U[1] - m.U[1]) * r2};
  };
  if (trio.time_dependent) {
    diff(trio.eval(t + step, x, y), trio.eval(t - step, x, y), j.r_t, j.Theta_t, j.U_t);
  } else {
    j.r_t = j.Theta_t = 0.0;
    j.U_t = {0.0, 0.0};
  }
  Vec2 ux{}, uy{};
  diff(trio.eval(t, x + step, y), trio.eval(t, x - step, y), j.grad_r[0], j.grad_Theta[0], ux);
  diff(trio.eval(t, x, y + step), trio.eval(t, x, y - step), j.grad_r[1], j.grad_Theta[1], uy);
  j.grad_U = {{{ux[0], uy[0]}, {ux[1], uy[1]}}};
  return j;
}

double ballistic_free_energy(const GasModel& gas, double rho, double theta, double Theta, double a) {
  const ThermoState st(rho, theta);
  double h = rho * (internal_energy(gas, st) - Theta * entropy(gas, st));
  if (a != 0.0) {
    const auto rad = radiation_components(a, st);
    h += rho * (rad.e - Theta * rad.s);
  }
  return h;
}

double ballistic_free_energy_drho(const GasModel& gas, double rho, double Theta) {
  const auto d = thermo_derivatives(gas, ThermoState(rho, Theta));
  // d(rho e)/d rho = p_rho / (gamma - 1);  d(rho s)/d rho = s + rho s_rho
  return gas.inv_gm1() * d.p_rho - Theta * (d.s + rho * d.s_rho);
}

double relative_energy(const GasModel& gas, const ThermoState& st, const Vec2& u, const TrioPoint& tr) {
  const double du0 = u[0] - tr.U[0];
  const double du1 = u[1] - tr.U[1];
  const double kin = 0.5 * st.rho * (du0 * du0 + du1 * du1);
  const double h = ballistic_free_energy(gas, st.rho, st.theta, tr.Theta);
  const double hr = ballistic_free_energy(gas, tr.r, tr.Theta, tr.Theta);
  const double dh = ballistic_free_energy_drho(gas, tr.r, tr.Theta);
  return kin + (h - hr - dh * (st.rho - tr.r));
}

double radiation_gap(double a, double theta, double Theta) {
  const double t3 = theta * theta * theta;
  return a * (theta * t3 + theta4(Theta) / 3.0 - (4.0 / 3.0) * Theta * t3);
}

double augmented_relative_energy(const GasModel& gas, double a, const ThermoState& st, const Vec2& u,
                                 const TrioPoint& tr) {
  return relative_energy(gas, st, u, tr) + radiation_gap(a, st.theta, tr.Theta);
}

EssResCutoff::EssResCutoff(double rho_lo_, double rho_hi_, double theta_lo_, double theta_hi_, double margin_)
    : rho_lo(rho_lo_), rho_hi(rho_hi_), theta_lo(theta_lo_), theta_hi(theta_hi_), margin(margin_) {
  if (!(rho_lo > 0.0 && rho_hi >= rho_lo && theta_lo > 0.0 && theta_hi >= theta_lo))
    throw InvalidParameter("cutoff box must be positive and ordered");
  if (!(margin > 1.0)) throw InvalidParameter("cutoff margin must exceed 1");
}

double EssResCutoff::operator()(double rho, double theta) const {
  return plateau(rho, rho_lo, rho_hi, margin) * plateau(theta, theta_lo, theta_hi, margin);
}

EssRes ess_res_split(const EssResCutoff& cutoff, const ThermoState& st, double value) {
  const double ess = cutoff(st.rho, st.theta) * value;
  return {ess, value - ess};
}

CoercivityReport coercivity_check(const GasModel& gas, double a, const EssResCutoff& cutoff,
                                  std::span<const CoercivitySample> samples) {
  CoercivityReport rep;
  rep.c_quadratic = kInf;
  rep.c_residual = kInf;
  rep.min_energy = kInf;
  for (const auto& s : samples) {
    const double e = relative_energy(gas, s.state, s.u, s.trio);
    const double ea = e + radiation_gap(a, s.state.theta, s.trio.Theta);
    const double du0 = s.u[0] - s.trio.U[0];
    const double du1 = s.u[1] - s.trio.U[1];
    const double scale = 1.0 + std::abs(ballistic_free_energy(gas, s.state.rho, s.state.theta, s.trio.Theta)) +
                         std::abs(ballistic_free_energy(gas, s.trio.r, s.trio.Theta, s.trio.Theta)) +
                         std::abs(ballistic_free_energy_drho(gas, s.trio.r, s.trio.Theta) * (s.state.rho - s.trio.r)) +
                         0.5 * s.state.rho * (du0 * du0 + du1 * du1);
    if (e < -1e-12 * scale) {
      std::ostringstream os;
      os << "negative relative energy " << e << " at rho=" << s.state.rho << " theta=" << s.state.theta;
      throw CoercivityFailure(os.str());
    }
    rep.min_energy = std::min(rep.min_energy, e);
    ++rep.samples;

    const double phi = cutoff(s.state.rho, s.state.theta);
    const double dr = s.state.rho - s.trio.r;
    const double dt = s.state.theta - s.trio.Theta;
    const double quad = phi * (dr * dr + dt * dt + du0 * du0 + du1 * du1);
    if (quad > 0.0) {
      rep.c_quadratic = std::min(rep.c_quadratic, e / quad);
      ++rep.quadratic_samples;
    }
    if (phi < 1.0) {
      const auto rad = radiation_components(a, s.state);
      const double res = (1.0 - phi) * (1.0 + s.state.rho * (internal_energy(gas, s.state) + rad.e) +
                                        s.state.rho * std::abs(entropy(gas, s.state) + rad.s));
      rep.c_residual = std::min(rep.c_residual, ea / res);
      ++rep.residual_samples;
    }
  }
  if (rep.quadratic_samples == 0) rep.c_quadratic = 0.0;
  if (rep.residual_samples == 0) rep.c_residual = 0.0;
  if (rep.quadratic_samples > 0 && !(rep.c_quadratic > 0.0))
    throw CoercivityFailure("quadratic coercivity constant is not positive");
  if (rep.residual_samples > 0 && !(rep.c_residual > 0.0))
    throw CoercivityFailure("residual coercivity constant is not positive");
  return rep;
}

double dissipation_functional(const TransportModel& tr, const Snapshot& s, double mu_n, double kappa_n) {
  return integrate(s.grid, [&](int i, int j) {
    const Primitive& w = s.w(i, j);
    const CellGradients g = cell_gradients(s, i, j);
    const Mat2 x = deviator2(g.grad_u);
    const double div = trace(g.grad_u);
    double d = 0.0;
    if (mu_n != 0.0)
      d += mu_n * (shear_viscosity(tr, w.theta) * contract(x, x) + bulk_viscosity(tr, w.theta) * div * div) / w.theta;
    if (kappa_n != 0.0)
      d += kappa_n * heat_conductivity(tr, w.theta) * norm_sq(g.grad_theta) / (w.theta * w.theta);
    return d;
  });
}

double total_energy(const GasModel& gas, double a, const Snapshot& s) {
  return integrate(s.grid, [&](int i, int j) {
    const Primitive& w = s.w(i, j);
    return 0.5 * w.rho * (w.u * w.u + w.v * w.v) + w.rho * internal_energy(gas, ThermoState(w.rho, w.theta)) +
           a * theta4(w.theta);
  });
}

ConsistencyNorms consistency_error_terms(const TransportModel& tr, const Snapshot& s, double mu_n, double kappa_n,
                                         double a_n) {
  std::array<double, 6> acc{};
  for (int j = 0; j < s.grid.ny; ++j) {
    std::array<double, 6> row{};
    for (int i = 0; i < s.grid.nx; ++i) {
      const Primitive& w = s.w(i, j);
      const double t3 = w.theta * w.theta * w.theta;
      row[5] += a_n * t3 * w.theta;
      row[2] += (4.0 / 3.0) * a_n * t3;
      row[3] += (4.0 / 3.0) * a_n * t3 * std::hypot(w.u, w.v);
      if (mu_n != 0.0 || kappa_n != 0.0) {
        const CellGradients g = cell_gradients(s, i, j);
        if (mu_n != 0.0) row[1] += mu_n * frobenius(viscous_stress<2>(tr, w.theta, g.grad_u));
        if (kappa_n != 0.0) row[4] += kappa_n * heat_conductivity(tr, w.theta) * norm(g.grad_theta) / w.theta;
      }
    }
    for (int k = 0; k < 6; ++k) acc[k] += row[k];
  }
  ConsistencyNorms n;
  const double area = s.grid.cell_area();
  for (int k = 0; k < 6; ++k) n.e[k] = acc[k] * area;
  n.e[0] = n.e[5] / 3.0;
  return n;
}

double omega_remainder(double mu, double kappa, double a) {
  if (kappa == 0.0) return mu;
  if (a == 0.0) return kInf;
  return mu + kappa + kappa / std::pow(a, 0.75);
}

ConsistencyAccumulator::ConsistencyAccumulator(const GasModel& gas, const TransportModel& transport, double mu,
                                               double kappa, double a)
    : gas_(gas), transport_(transport) {
  rep_.mu = mu;
  rep_.kappa = kappa;
  rep_.a = a;
  rep_.omega = omega_remainder(mu, kappa, a);
}

ConsistencyAccumulator::Point ConsistencyAccumulator::evaluate(const Snapshot& s) const {
  Point p;
  p.norms = consistency_error_terms(transport_, s, rep_.mu, rep_.kappa, rep_.a);
  p.d = dissipation_functional(transport_, s, rep_.mu, rep_.kappa);
  p.en = total_energy(gas_, rep_.a, s);
  p.t = s.time;
  return p;
}

void ConsistencyAccumulator::add(const Snapshot& before, const Snapshot& after, double dt) {
  if (!has_last_ || last_.t != before.time) last_ = evaluate(before);
  const Point next = evaluate(after);
  for (int k = 0; k < 6; ++k) rep_.e[k] += 0.5 * dt * (last_.norms.e[k] + next.norms.e[k]);
  rep_.dissipation += 0.5 * dt * (last_.d + next.d);
  rep_.energy += 0.5 * dt * (last_.en + next.en);
  rep_.t_final += dt;
  last_ = next;
  has_last_ = true;
}

ConsistencyReport ConsistencyAccumulator::report() const { return rep_; }

std::array<double, 6> fitted_consistency_constants(const ConsistencyReport& r, double epsilon) {
  std::array<double, 6> c{};
  const double denom = r.energy + r.t_final * r.omega;
  for (int k = 0; k < 6; ++k) {
    const double excess = std::max(0.0, r.e[k] - epsilon * r.dissipation);
    c[k] = denom > 0.0 ? excess / denom : (excess > 0.0 ? kInf : 0.0);
  }
  return c;
}

ConsistencyVerdict consistency_bound_check(std::span<const ConsistencyReport> runs, double epsilon,
                                           double growth_limit) {
  ConsistencyVerdict v;
  if (runs.empty()) {
    v.pass = true;
    return v;
  }
  for (const auto& r : runs) v.constants.push_back(fitted_consistency_constants(r, epsilon));
  v.omega_decreasing = true;
  for (std::size_t n = 1; n < runs.size(); ++n)
    if (!(runs[n].omega < runs[n - 1].omega)) v.omega_decreasing = false;
  if (runs.size() == 1) v.omega_decreasing = true;

  constexpr double floor = 1e-300;
  bool bounded = true;
  std::ostringstream os;
  for (int k = 0; k < 6; ++k) {
    const double c0 = v.constants.front()[k];
    double worst = 0.0;
    for (const auto& c : v.constants) worst = std::max(worst, c[k]);
    v.growth[k] = worst <= floor ? 0.0 : worst / std::max(c0, floor);
    if (!std::isfinite(worst) || worst > growth_limit * c0 + floor) {
      bounded = false;
      os << "E" << (k + 1) << " constant grows by " << v.growth[k] << "; ";
    }
  }
  if (!v.omega_decreasing) os << "omega_n not decreasing; ";
  v.pass = bounded && v.omega_decreasing;
  v.detail = os.str();
  return v;
}

ChainReport consistency_chains(const TransportModel& tr, const Snapshot& s, double mu, double kappa, double a,
                               double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidParameter("epsilon must be positive");
  const double alpha = tr.alpha();
  const double c = 1.0 / (4.0 * epsilon);
  const double area = s.grid.area();
  const double q = 8.0 / (5.0 - alpha);

  double heat_a = 0, heat_d = 0, kappa_int = 0, th3 = 0, th4 = 0, visc0 = 0, visc_d = 0, mu_theta = 0, th1a = 0;
  double rad0 = 0, u4 = 0, ident2 = 0, korn_num = 0, korn_x = 0, mom = 0;
  const double p_id = alpha < 1.0 ? 8.0 / (1.0 - alpha) : 0.0;
  for (int j = 0; j < s.grid.ny; ++j) {
    for (int i = 0; i < s.grid.nx; ++i) {
      const Primitive& w = s.w(i, j);
      const CellGradients g = cell_gradients(s, i, j);
      const double th = w.theta;
      const double kt = heat_conductivity(tr, th);
      const double gt = norm(g.grad_theta);
      heat_a += kt * gt / th;
      heat_d += kt * gt * gt / (th * th);
      kappa_int += kt;
      th3 += th * th * th;
      th4 += theta4(th);
      const Mat2 x = deviator2(g.grad_u);
      const double xn = frobenius(x);
      const double mt = shear_viscosity(tr, th);
      visc0 += mt * xn;
      visc_d += mt * xn * xn / th;
      mu_theta += mt * th;
      th1a += std::pow(th, 1.0 + alpha);
      const double speed = std::hypot(w.u, w.v);
      rad0 += th * th * th * speed;
      u4 += speed * speed * speed * speed;
      if (alpha < 1.0) ident2 += std::pow(std::pow(th, 0.5 * (1.0 - alpha)), p_id);
      korn_num += std::pow(speed, q) + std::pow(frobenius(g.grad_u), q);
      korn_x += std::pow(xn, q);
      mom += w.rho * speed;
    }
  }
  const double da = s.grid.cell_area();
  for (double* v : {&heat_a, &heat_d, &kappa_int, &th3, &th4, &visc0, &visc_d, &mu_theta, &th1a, &rad0, &u4, &ident2,
                    &korn_num, &korn_x, &mom})
    *v *= da;

  const double d_full = [&] {
    double d = 0.0;
    if (mu != 0.0) d += mu * visc_d;
    if (kappa != 0.0) d += kappa * heat_d;
    return d;
  }();

  ChainReport r;
  // Heat flux: Young, kappa = 1 + theta^3, Hoelder, x^{3/4} <= 1 + x.
  r.heat[0] = kappa * heat_a;
  r.heat[1] = epsilon * kappa * heat_d + c * kappa * kappa_int;
  r.heat[2] = epsilon * d_full + c * kappa * area + c * kappa * th3;
  const double ka = (kappa == 0.0) ? 0.0 : (a > 0.0 ? kappa / std::pow(a, 0.75) : kInf);
  r.heat[3] = epsilon * d_full + c * kappa * area + c * ka * std::pow(area, 0.25) * std::pow(a * th4, 0.75);
  r.heat[4] = epsilon * d_full + c * kappa * area + c * ka * std::pow(area, 0.25) * (1.0 + a * th4);

  // Viscous stress: Young, mu theta <= 2 mu_upper (1 + theta^{1+alpha}), x^{1+alpha} <= x^4 + 1.
  const double mb = TransportModel::mu_upper;
  r.viscous[0] = mu * visc0;
  r.viscous[1] = epsilon * mu * visc_d + c * mu * mu_theta;
  r.viscous[2] = epsilon * d_full + c * mu * 2.0 * mb * (area + th1a);
  const double ma = (mu == 0.0) ? 0.0 : (a > 0.0 ? mu / std::pow(a, 0.25 * (1.0 + alpha)) : kInf);
  r.viscous[3] = epsilon * d_full + c * 2.0 * mb * (mu * area + ma * (a * th4 + area));

  // Radiation convective flux: Hoelder with exponents 4/3 and 4.
  r.radiation[0] = a * rad0;
  r.radiation[1] = a * std::pow(th4, 0.75) * std::pow(u4, 0.25);

  const double l43_sq = std::pow(th4, 1.5);
  const double lid_sq = alpha < 1.0 ? std::pow(ident2, 2.0 / p_id) : 1.0;
  r.identity_lhs = l43_sq * lid_sq;
  r.identity_rhs = std::pow(th4, 0.25 * (7.0 - alpha));
  const double den = std::pow(korn_x, 1.0 / q) + mom;
  r.korn_ratio = den > 0.0 ? std::pow(korn_num, 1.0 / q) / den : 0.0;
  return r;
}

void verify_chains(const ChainReport& c, int run_index, double rel_tol) {
  auto check = [&](const char* chain, int link, double lo, double hi) {
    if (lo > hi * (1.0 + rel_tol) + 1e-300) {
      std::ostringstream os;
      os << chain << " chain link " << link << " violated in run " << run_index << ": " << lo << " > " << hi;
      throw BoundViolation(os.str());
    }
  };
  for (int k = 0; k + 1 < 5; ++k) check("heat-flux", k, c.heat[k], c.heat[k + 1]);
  for (int k = 0; k + 1 < 4; ++k) check("viscous", k, c.viscous[k], c.viscous[k + 1]);
  check("radiation", 0, c.radiation[0], c.radiation[1]);
}

namespace {

std::vector<TrioJet> trio_jets(const TestTrio& trio, const Snapshot& s) {
  std::vector<TrioJet> jets;
  jets.reserve(s.grid.cells());
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) jets.push_back(trio_jet(trio, s.time, s.grid.xc(i), s.grid.yc(j)));
  return jets;
}

GapIntegrands gap_integrands_with(const GasModel& gas, const TransportModel& tr, const Snapshot& s,
                                  const std::vector<TrioJet>& jets, double mu, double kappa, double a) {
  GapIntegrands out;
  std::size_t k = 0;
  std::array<double, 8> rhs{};
  double re = 0.0, ld = 0.0;
  for (int j = 0; j < s.grid.ny; ++j) {
    for (int i = 0; i < s.grid.nx; ++i, ++k) {
      const TrioJet& J = jets[k];
      const Primitive& w = s.w(i, j);
      const ThermoState st(w.rho, w.theta);
      const ThermoState sr(J.value.r, J.value.Theta);
      const Vec2 u{w.u, w.v};
      const Vec2& U = J.value.U;
      const Vec2 d = U - u;  // U - u
      const CellGradients g = cell_gradients(s, i, j);
      const Mat2 S = viscous_stress<2>(tr, w.theta, g.grad_u);
      const double kt = heat_conductivity(tr, w.theta);

      re += augmented_relative_energy(gas, a, st, u, J.value);
      ld += (J.value.Theta / w.theta) *
            (mu * contract(S, g.grad_u) + kappa * kt * norm_sq(g.grad_theta) / w.theta);

      const double sig = entropy(gas, st) + radiation_components(a, st).s;
      const double sig_r = entropy(gas, sr) + radiation_components(a, sr).s;
      const double P = pressure(gas, st) + a * theta4(w.theta) / 3.0;
      const double divU = trace(J.grad_U);
      const Vec2 UgradU = apply(J.grad_U, U);  // (U . grad) U

      // P(r, Theta) derivatives by the chain rule.
      const auto dr = thermo_derivatives(gas, sr);
      const double pr_th = dr.p_theta + (4.0 / 3.0) * a * J.value.Theta * J.value.Theta * J.value.Theta;
      const double Pt = dr.p_rho * J.r_t + pr_th * J.Theta_t;
      const Vec2 gP = dr.p_rho * J.grad_r + pr_th * J.grad_Theta;

      rhs[0] += w.rho * bilinear(d, J.grad_U, (-1.0) * d);
      rhs[1] += mu * contract(S, J.grad_U);
      rhs[2] += kappa * kt * dot(g.grad_theta, J.grad_Theta) / w.theta;
      rhs[3] += w.rho * (sig - sig_r) * dot(d, J.grad_Theta);
      rhs[4] += w.rho * dot(J.U_t + UgradU, d);
      rhs[5] += -P * divU;
      rhs[6] += -w.rho * (sig - sig_r) * (J.Theta_t + dot(U, J.grad_Theta));
      rhs[7] += (1.0 - w.rho / J.value.r) * Pt - (w.rho / J.value.r) * dot(u, gP);
    }
  }
  const double da = s.grid.cell_area();
  out.rel_energy = re * da;
  out.lhs_dissipation = ld * da;
  for (int m = 0; m < 8; ++m) out.rhs[m] = rhs[m] * da;
  return out;
}

}  // namespace

GapIntegrands gap_integrands(const GasModel& gas, const TransportModel& tr, const Snapshot& s, const TestTrio& trio,
                             double mu, double kappa, double a) {
  return gap_integrands_with(gas, tr, s, trio_jets(trio, s), mu, kappa, a);
}

RelativeEnergyInequality::RelativeEnergyInequality(const GasModel& gas, const TransportModel& transport,
                                                   TestTrio trio, double mu, double kappa, double a)
    : gas_(gas), transport_(transport), trio_(std::move(trio)), mu_(mu), kappa_(kappa), a_(a) {}

GapIntegrands RelativeEnergyInequality::eval(const Snapshot& s) {
  if (trio_.time_dependent) return gap_integrands(gas_, transport_, s, trio_, mu_, kappa_, a_);
  if (cache_.size() != s.grid.cells()) cache_ = trio_jets(trio_, s);
  return gap_integrands_with(gas_, transport_, s, cache_, mu_, kappa_, a_);
}

void RelativeEnergyInequality::start(const Snapshot& s0) {
  last_ = eval(s0);
  e0_ = last_.rel_energy;
  diss_int_ = 0.0;
  rhs_int_ = 0.0;
  time_ = s0.time;
  series_.clear();
  series_.push_back(current());
}

void RelativeEnergyInequality::add(const Snapshot& before, const Snapshot& after, double dt) {
  if (before.time != time_) start(before);
  const GapIntegrands next = eval(after);
  double r0 = 0.0, r1 = 0.0;
  for (int m = 0; m < 8; ++m) {
    r0 += last_.rhs[m];
    r1 += next.rhs[m];
  }
  rhs_int_ += 0.5 * dt * (r0 + r1);
  diss_int_ += 0.5 * dt * (last_.lhs_dissipation + next.lhs_dissipation);
  last_ = next;
  time_ = after.time;
  series_.push_back(current());
}

GapSample RelativeEnergyInequality::current() const {
  return {time_, last_.rel_energy - e0_ + diss_int_, rhs_int_};
}

double integrated_relative_energy(const GasModel& gas, double a, const Snapshot& s, const TestTrio& trio) {
  return integrate(s.grid, [&](int i, int j) {
    const Primitive& w = s.w(i, j);
    return augmented_relative_energy(gas, a, ThermoState(w.rho, w.theta), {w.u, w.v},
                                     trio.eval(s.time, s.grid.xc(i), s.grid.yc(j)));
  });
}

BasicEstimateReport basic_estimates(const GasModel& gas, std::span<const ThermoState> samples) {
  BasicEstimateReport r;
  for (const auto& st : samples) {
    const double re = st.rho * internal_energy(gas, st);
    r.c_energy = std::max(r.c_energy, (std::pow(st.rho, gas.gamma()) + st.rho * st.theta) / re);
    const double rs = st.rho * entropy(gas, st);
    const double bound = st.rho * (1.0 + std::abs(std::log(st.rho)) + std::max(0.0, std::log(st.theta)));
    r.c_entropy = std::max(r.c_entropy, rs / bound);
  }
  return r;
}

}  // namespace nsfl
