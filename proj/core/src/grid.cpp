#include "nsfl/grid.hpp"

#include <string>

#include "nsfl/error.hpp"

namespace nsfl {

Grid::Grid(int nx_, int ny_, double ly_) : nx(nx_), ny(ny_), h(0.0), lx(0.0), ly(ly_) {
  if (nx < 4 || ny < 4)
    throw InvalidParameter("grid needs at least 4 cells per direction, got " + std::to_string(nx) + "x" +
                           std::to_string(ny));
  if (!(ly > 0.0)) throw InvalidParameter("channel height must be positive");
  h = ly / ny;
  lx = nx * h;
}

Grid Grid::coarsened() const {
  if (nx % 2 != 0 || ny % 2 != 0) throw InvalidParameter("grid cannot be coarsened: odd cell count");
  return Grid(nx / 2, ny / 2, ly);
}

}  // namespace nsfl
