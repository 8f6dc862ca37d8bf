#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nsfl/field.hpp"
#include "nsfl/linalg.hpp"
#include "nsfl/thermodynamics.hpp"
#include "nsfl/transport.hpp"

namespace nsfl {

/// Test functions (r, Theta, U) at one point.
struct TrioPoint {
  double r;
  double Theta;
  Vec2 U;
};

/// Trio as a smooth map of (t, x, y). Derivatives are taken by central
/// differences of this map.
struct TestTrio {
  std::function<TrioPoint(double t, double x, double y)> eval;
  bool time_dependent = true;
};

struct TrioJet {
  TrioPoint value;
  double r_t, Theta_t;
  Vec2 U_t;
  Vec2 grad_r, grad_Theta;
  Mat2 grad_U;  ///< (i, j) = d U_i / d x_j
};

TrioJet trio_jet(const TestTrio& trio, double t, double x, double y, double step = 1e-5);

/// H_Theta(rho, theta) = rho (e + e_R - Theta (s + s_R)).
double ballistic_free_energy(const GasModel& gas, double rho, double theta, double Theta, double a = 0.0);

/// d H_Theta / d rho at (rho, theta = Theta); radiation does not contribute.
double ballistic_free_energy_drho(const GasModel& gas, double rho, double Theta);

/// Pointwise relative energy without radiation.
double relative_energy(const GasModel& gas, const ThermoState& state, const Vec2& u, const TrioPoint& trio);

/// a theta^4 + a Theta^4 / 3 - (4a/3) Theta theta^3 >= 0
double radiation_gap(double a, double theta, double Theta);

double augmented_relative_energy(const GasModel& gas, double a, const ThermoState& state, const Vec2& u,
                                 const TrioPoint& trio);

/// Phi(rho, theta): 1 on the box, 0 outside [lo/margin, hi*margin] in each variable.
struct EssResCutoff {
  double rho_lo, rho_hi, theta_lo, theta_hi;
  double margin = 2.0;

  EssResCutoff(double rho_lo_, double rho_hi_, double theta_lo_, double theta_hi_, double margin_ = 2.0);
  double operator()(double rho, double theta) const;
};

struct EssRes {
  double ess;
  double res;
};

EssRes ess_res_split(const EssResCutoff& cutoff, const ThermoState& state, double value);

struct CoercivitySample {
  ThermoState state;
  Vec2 u;
  TrioPoint trio;
};

struct CoercivityReport {
  std::size_t samples = 0;
  std::size_t quadratic_samples = 0;
  std::size_t residual_samples = 0;
  double c_quadratic = 0.0;  ///< min E / ([rho-r]^2 + [theta-Theta]^2 + |u-U|^2)_ess
  double c_residual = 0.0;   ///< min E_a / (1 + rho (e+e_R) + rho |s+s_R|)_res
  double min_energy = 0.0;
};

/// Throws CoercivityFailure if a sample gives negative energy beyond rounding or c <= 0.
CoercivityReport coercivity_check(const GasModel& gas, double a, const EssResCutoff& cutoff,
                                  std::span<const CoercivitySample> samples);

/// Integrals over one snapshot.
double dissipation_functional(const TransportModel& transport, const Snapshot& s, double mu_n, double kappa_n);
double total_energy(const GasModel& gas, double a, const Snapshot& s);

/// L1 norms of the six consistency error terms at one time.
struct ConsistencyNorms {
  std::array<double, 6> e{};
};

ConsistencyNorms consistency_error_terms(const TransportModel& transport, const Snapshot& s, double mu_n,
                                         double kappa_n, double a_n);

/// Time-integrated consistency data of one run.
struct ConsistencyReport {
  std::array<double, 6> e{};   ///< space-time L1 norms of E^1..E^6
  double dissipation = 0.0;    ///< int_0^T D_n dt
  double energy = 0.0;         ///< int_0^T E_n dt
  double t_final = 0.0;
  double mu = 0.0, kappa = 0.0, a = 0.0;
  double omega = 0.0;          ///< mu + kappa + kappa / a^{3/4}
};

double omega_remainder(double mu, double kappa, double a);

/// Trapezoidal accumulator over solver steps.
class ConsistencyAccumulator {
 public:
  ConsistencyAccumulator(const GasModel& gas, const TransportModel& transport, double mu, double kappa, double a);
  void add(const Snapshot& before, const Snapshot& after, double dt);
  ConsistencyReport report() const;

 private:
  struct Point {
    ConsistencyNorms norms;
    double d = 0.0, en = 0.0, t = 0.0;
  };
  Point evaluate(const Snapshot& s) const;

  GasModel gas_;
  TransportModel transport_;
  ConsistencyReport rep_;
  Point last_;
  bool has_last_ = false;
};

/// Smallest c(eps) with E_i <= eps D + c (E + T omega) for this run.
std::array<double, 6> fitted_consistency_constants(const ConsistencyReport& r, double epsilon);

struct ConsistencyVerdict {
  bool pass = false;
  std::vector<std::array<double, 6>> constants;  ///< per run
  std::array<double, 6> growth{};                ///< max_n c_n / c_0 per term
  bool omega_decreasing = false;
  std::string detail;
};

/// Bounded means max_n c_i,n <= growth_limit * c_i,0 (up to a tiny absolute floor) with omega_n decreasing.
ConsistencyVerdict consistency_bound_check(std::span<const ConsistencyReport> runs, double epsilon,
                                           double growth_limit = 2.0);

/// Intermediate quantities of the heat-flux, viscous and radiation chains at one time.
struct ChainReport {
  std::array<double, 5> heat{};       ///< A <= B1 <= B2 <= B3 <= B4
  std::array<double, 4> viscous{};    ///< V0 <= V1 <= V2 <= V3
  std::array<double, 2> radiation{};  ///< a int theta^3 |u| <= a |theta^3|_{4/3} |u|_4
  double identity_lhs = 0.0;          ///< |theta^3|^2_{4/3} |theta^{(1-alpha)/2}|^2_{8/(1-alpha)}
  double identity_rhs = 0.0;          ///< (int theta^4)^{(7-alpha)/4}
  double korn_ratio = 0.0;
};

ChainReport consistency_chains(const TransportModel& transport, const Snapshot& s, double mu, double kappa, double a,
                               double epsilon);

/// Throws BoundViolation naming the first chain link that fails.
void verify_chains(const ChainReport& c, int run_index, double rel_tol = 1e-12);

/// Pointwise integrals of the relative energy inequality at one time level.
struct GapIntegrands {
  double rel_energy = 0.0;        ///< int E_a
  double lhs_dissipation = 0.0;   ///< int (Theta/theta)(mu S:grad u + kappa kappa |grad theta|^2/theta)
  std::array<double, 8> rhs{};    ///< the eight right-hand integrals
};

GapIntegrands gap_integrands(const GasModel& gas, const TransportModel& transport, const Snapshot& s,
                             const TestTrio& trio, double mu, double kappa, double a);

struct GapSample {
  double time = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap() const { return rhs - lhs; }
};

/// Running evaluation of both sides of the relative energy inequality.
class RelativeEnergyInequality {
 public:
  RelativeEnergyInequality(const GasModel& gas, const TransportModel& transport, TestTrio trio, double mu,
                           double kappa, double a);

  void start(const Snapshot& s0);
  void add(const Snapshot& before, const Snapshot& after, double dt);
  GapSample current() const;
  const std::vector<GapSample>& series() const { return series_; }
  double rel_energy_now() const { return last_.rel_energy; }

 private:
  GapIntegrands eval(const Snapshot& s);

  GasModel gas_;
  TransportModel transport_;
  TestTrio trio_;
  double mu_, kappa_, a_;
  GapIntegrands last_;
  double e0_ = 0.0;
  double diss_int_ = 0.0;
  double rhs_int_ = 0.0;
  double time_ = 0.0;
  std::vector<GapSample> series_;
  std::vector<TrioJet> cache_;
};

/// int E_a(rho, theta, u | trio) over one snapshot.
double integrated_relative_energy(const GasModel& gas, double a, const Snapshot& s, const TestTrio& trio);

/// Empirical constant C with rho^gamma + rho theta <= C rho e and rho s <= C rho (1 + |log rho| + [log theta]^+).
struct BasicEstimateReport {
  double c_energy = 0.0;
  double c_entropy = 0.0;
};

BasicEstimateReport basic_estimates(const GasModel& gas, std::span<const ThermoState> samples);

}  // namespace nsfl
