#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace nsfl {

/// Uniform square-cell grid on the channel [0, Lx] x [0, Ly], periodic in x,
/// walls at y = 0 and y = Ly. h = Ly / ny and Lx = nx * h.
struct Grid {
  static constexpr int ghost = 2;

  int nx = 0;
  int ny = 0;
  double h = 0.0;
  double lx = 0.0;
  double ly = 0.0;

  Grid() = default;
  Grid(int nx_, int ny_, double ly_ = 1.0);

  double xc(int i) const noexcept { return (i + 0.5) * h; }
  double yc(int j) const noexcept { return (j + 0.5) * h; }
  double cell_area() const noexcept { return h * h; }
  double area() const noexcept { return lx * ly; }
  std::size_t cells() const noexcept { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }

  Grid refined() const { return Grid(2 * nx, 2 * ny, ly); }
  Grid coarsened() const;

  bool operator==(const Grid&) const = default;
};

/// Cell array with ghost layers; (i, j) runs over [-ghost, n + ghost).
template <class T>
class CellArray {
 public:
  CellArray() = default;
  explicit CellArray(const Grid& g, T init = T{})
      : nx_(g.nx), ny_(g.ny), sx_(g.nx + 2 * Grid::ghost),
        data_(static_cast<std::size_t>(sx_) * static_cast<std::size_t>(g.ny + 2 * Grid::ghost), init) {}

  T& operator()(int i, int j) noexcept { return data_[index(i, j)]; }
  const T& operator()(int i, int j) const noexcept { return data_[index(i, j)]; }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }

  std::vector<T>& raw() noexcept { return data_; }
  const std::vector<T>& raw() const noexcept { return data_; }

  bool operator==(const CellArray&) const = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + Grid::ghost) * static_cast<std::size_t>(sx_) +
           static_cast<std::size_t>(i + Grid::ghost);
  }

  int nx_ = 0;
  int ny_ = 0;
  int sx_ = 0;
  std::vector<T> data_;
};

/// Sum of f(i, j) over interior cells in fixed row-major order, times the cell area.
template <class F>
double integrate(const Grid& g, F&& f) {
  double s = 0.0;
  for (int j = 0; j < g.ny; ++j) {
    double row = 0.0;
    for (int i = 0; i < g.nx; ++i) row += f(i, j);
    s += row;
  }
  return s * g.cell_area();
}

}  // namespace nsfl
