#pragma once

// Fixed-size vectors and matrices over any jet type, with just enough linear
// algebra for cotangent lifts and Newton corrections.

#include <array>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

#include "jhi/jets.hpp"

namespace jhi {

template <class T, std::size_t N>
using Vec = std::array<T, N>;

template <class T, std::size_t N>
using Mat = std::array<std::array<T, N>, N>;

template <class T, std::size_t N>
Mat<T, N> zero_matrix() {
  Mat<T, N> m;
  for (auto& row : m) row.fill(T(0.0));
  return m;
}

template <class T, std::size_t N>
Vec<T, N> zero_vector() {
  Vec<T, N> v;
  v.fill(T(0.0));
  return v;
}

template <class T, std::size_t N>
Vec<T, N> add(Vec<T, N> a, const Vec<T, N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] += b[i];
  return a;
}

template <class T, std::size_t N>
Vec<T, N> sub(Vec<T, N> a, const Vec<T, N>& b) {
  for (std::size_t i = 0; i < N; ++i) a[i] -= b[i];
  return a;
}

template <class T, std::size_t N>
Vec<T, N> negated(Vec<T, N> a) {
  for (auto& ai : a) ai = -ai;
  return a;
}

template <class T, std::size_t N>
Vec<T, N> scaled(double c, Vec<T, N> a) {
  for (auto& ai : a) ai = ai * c;
  return a;
}

template <class T, std::size_t N>
Vec<T, N> mat_vec(const Mat<T, N>& m, const Vec<T, N>& v) {
  Vec<T, N> r;
  for (std::size_t i = 0; i < N; ++i) {
    T acc(0.0);
    for (std::size_t j = 0; j < N; ++j) acc += m[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

template <class T, std::size_t N>
Mat<T, N> transpose(const Mat<T, N>& m) {
  Mat<T, N> r;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) r[i][j] = m[j][i];
  return r;
}

template <std::size_t N>
double norm_inf(const Vec<double, N>& v) {
  double r = 0.0;
  for (double vi : v) r = std::max(r, std::abs(vi));
  return r;
}

template <std::size_t N>
double norm_inf(const Mat<double, N>& m) {
  double r = 0.0;
  for (const auto& row : m) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    r = std::max(r, s);
  }
  return r;
}

// Gaussian elimination with partial pivoting on the primal part. Returns
// nullopt when a pivot falls below rel_tol times the largest matrix entry,
// or when the matrix has a non-finite entry.
template <class T, std::size_t N>
std::optional<Vec<T, N>> solve(Mat<T, N> a, Vec<T, N> b, double rel_tol = 1e-14) {
  double scale = 0.0;
  for (const auto& row : a)
    for (const auto& v : row) {
      if (!std::isfinite(primal(v))) return std::nullopt;
      scale = std::max(scale, std::abs(primal(v)));
    }
  if (scale == 0.0) return std::nullopt;
  for (std::size_t col = 0; col < N; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < N; ++r)
      if (std::abs(primal(a[r][col])) > std::abs(primal(a[piv][col]))) piv = r;
    if (std::abs(primal(a[piv][col])) <= rel_tol * scale) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < N; ++r) {
      const T f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < N; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  Vec<T, N> x;
  for (std::size_t i = N; i-- > 0;) {
    T acc = b[i];
    for (std::size_t j = i + 1; j < N; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

}  // namespace jhi
