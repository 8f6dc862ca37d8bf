#pragma once

#include <functional>

#include "nsfl/field.hpp"
#include "nsfl/grid.hpp"

namespace testing_util {

// Snapshot whose interior and ghost cells are point values of f at the cell
// centres, so central differences are exact for linear fields.
inline nsfl::Snapshot analytic_snapshot(const nsfl::Grid& g, const std::function<nsfl::Primitive(double, double)>& f,
                                        double time = 0.0) {
  nsfl::Snapshot s{g, time, nsfl::CellArray<nsfl::Primitive>(g)};
  for (int j = -nsfl::Grid::ghost; j < g.ny + nsfl::Grid::ghost; ++j)
    for (int i = -nsfl::Grid::ghost; i < g.nx + nsfl::Grid::ghost; ++i) s.w(i, j) = f(g.xc(i), g.yc(j));
  return s;
}

inline nsfl::Primitive prim(double rho, double u, double v, double theta) {
  nsfl::Primitive w;
  w.rho = rho;
  w.u = u;
  w.v = v;
  w.theta = theta;
  w.p = rho * theta;
  return w;
}

}  // namespace testing_util
