#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace nsfl {

template <std::size_t D>
using Vec = std::array<double, D>;

/// Row-major; for velocity gradients entry (i, j) is d u_i / d x_j.
template <std::size_t D>
using Mat = std::array<std::array<double, D>, D>;

using Vec2 = Vec<2>;
using Mat2 = Mat<2>;

template <std::size_t D>
constexpr double dot(const Vec<D>& a, const Vec<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += a[i] * b[i];
  return s;
}

template <std::size_t D>
constexpr double norm_sq(const Vec<D>& a) {
  return dot(a, a);
}

template <std::size_t D>
inline double norm(const Vec<D>& a) {
  return std::sqrt(norm_sq(a));
}

template <std::size_t D>
constexpr Vec<D> operator+(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r{};
  for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + b[i];
  return r;
}

template <std::size_t D>
constexpr Vec<D> operator-(const Vec<D>& a, const Vec<D>& b) {
  Vec<D> r{};
  for (std::size_t i = 0; i < D; ++i) r[i] = a[i] - b[i];
  return r;
}

template <std::size_t D>
constexpr Vec<D> operator*(double s, const Vec<D>& a) {
  Vec<D> r{};
  for (std::size_t i = 0; i < D; ++i) r[i] = s * a[i];
  return r;
}

template <std::size_t D>
constexpr double trace(const Mat<D>& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i) s += m[i][i];
  return s;
}

template <std::size_t D>
constexpr Mat<D> transpose(const Mat<D>& m) {
  Mat<D> r{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) r[i][j] = m[j][i];
  return r;
}

/// Frobenius inner product A : B.
template <std::size_t D>
constexpr double contract(const Mat<D>& a, const Mat<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) s += a[i][j] * b[i][j];
  return s;
}

template <std::size_t D>
inline double frobenius(const Mat<D>& a) {
  return std::sqrt(contract(a, a));
}

template <std::size_t D>
constexpr Vec<D> apply(const Mat<D>& m, const Vec<D>& v) {
  Vec<D> r{};
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) r[i] += m[i][j] * v[j];
  return r;
}

/// a . M . b  with M(i, j) = d U_j / d x_i convention handled by the caller.
template <std::size_t D>
constexpr double bilinear(const Vec<D>& a, const Mat<D>& m, const Vec<D>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < D; ++i)
    for (std::size_t j = 0; j < D; ++j) s += a[i] * m[i][j] * b[j];
  return s;
}

}  // namespace nsfl
