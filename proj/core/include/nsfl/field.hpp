#pragma once

#include <array>
#include <functional>

#include "nsfl/grid.hpp"
#include "nsfl/linalg.hpp"
#include "nsfl/thermodynamics.hpp"

namespace nsfl {

/// Conservative cell state (rho, rho u, rho v, E) with
/// E = rho |u|^2 / 2 + rho e + a theta^4.
using Conserved = std::array<double, 4>;

struct Primitive {
  double rho = 1.0;
  double u = 0.0;
  double v = 0.0;
  double theta = 1.0;
  double p = 1.0;  ///< total pressure p + a theta^4 / 3
  double c = 1.0;  ///< sound speed
};

struct FluidField {
  Grid grid;
  CellArray<Conserved> q;
  double time = 0.0;

  FluidField() = default;
  explicit FluidField(const Grid& g) : grid(g), q(g) {}
};

/// Primitive snapshot with ghost layers filled according to the wall condition.
struct Snapshot {
  Grid grid;
  double time = 0.0;
  CellArray<Primitive> w;
};

struct PointState {
  double rho;
  double u;
  double v;
  double theta;
};

using InitialData = std::function<PointState(double x, double y)>;

/// Admissible box for initial data; a zero bound disables the check.
struct DataBounds {
  double rho_lo = 0.0, rho_hi = 0.0;
  double theta_lo = 0.0, theta_hi = 0.0;
  double speed_hi = 0.0;
};

Conserved conservative_from_primitive(const GasModel& gas, double a, const PointState& s);

/// Throws NonPhysicalState if the internal-energy share is not admissible.
Primitive primitive_from_conservative(const GasModel& gas, double a, const Conserved& q);

/// Point values of the data at cell centers.
FluidField initialize(const GasModel& gas, const Grid& grid, double a, const InitialData& data,
                      const DataBounds& bounds = {});

struct CellGradients {
  Mat2 grad_u;  ///< (i, j) = d u_i / d x_j
  Vec2 grad_theta;
};

/// Central differences using the ghost layers of the snapshot.
CellGradients cell_gradients(const Snapshot& s, int i, int j);

}  // namespace nsfl
