#pragma once

// Jacobi structures (Lambda, E), their Poissonization on the extended space
// (x, t), the homogeneity action of the scale group, and the vector fields of
// a Hamiltonian and of its lift tH.
//
// Extended coordinates always put t last: s = (x_1, ..., x_n, t).

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <string>
#include <vector>

#include "jhi/errors.hpp"
#include "jhi/jets.hpp"
#include "jhi/linalg.hpp"

namespace jhi {

template <class S>
concept JacobiStructure = requires(const S& s, const Vec<double, S::dim>& x) {
  { S::dim } -> std::convertible_to<std::size_t>;
  { s.lambda(x) } -> std::same_as<Mat<double, S::dim>>;
  { s.e(x) } -> std::same_as<Vec<double, S::dim>>;
};

template <class H, std::size_t N>
concept HamiltonianField = requires(const H& h, const Vec<double, N>& x) {
  { h(x) } -> std::convertible_to<double>;
};

// Runtime representation of a point of the extended manifold.
struct ExtendedState {
  std::vector<double> x;
  double t = 1.0;

  ExtendedState() = default;
  ExtendedState(std::vector<double> x_, double t_) : x(std::move(x_)), t(t_) {
    if (t == 0.0) throw SingularScaleError("extended state with t = 0");
  }

  std::size_t dim() const { return x.size(); }

  template <std::size_t M>
  Vec<double, M> packed() const {
    if (x.size() + 1 != M) throw ConfigurationError("extended state has wrong dimension");
    Vec<double, M> s{};
    std::copy(x.begin(), x.end(), s.begin());
    s[M - 1] = t;
    return s;
  }

  template <std::size_t M>
  static ExtendedState unpacked(const Vec<double, M>& s) {
    return ExtendedState(std::vector<double>(s.begin(), s.end() - 1), s[M - 1]);
  }
};

struct CotangentData {
  ExtendedState base;
  std::vector<double> xi_x;
  double xi_t = 0.0;

  CotangentData(ExtendedState b, std::vector<double> xx, double xt)
      : base(std::move(b)), xi_x(std::move(xx)), xi_t(xt) {
    if (xi_x.size() != base.x.size()) {
      throw ConfigurationError("covector dimension does not match the base point");
    }
  }
};

template <class T, std::size_t M>
Vec<T, M - 1> jacobi_part(const Vec<T, M>& s) {
  Vec<T, M - 1> x;
  std::copy(s.begin(), s.end() - 1, x.begin());
  return x;
}

// X_H^i = sum_j Lambda^{ij} d_j H - H E^i
template <JacobiStructure S, class H>
Vec<double, S::dim> jacobi_vector_field(const S& structure, const H& hamiltonian,
                                        const Vec<double, S::dim>& x) {
  constexpr std::size_t n = S::dim;
  const auto [h, dh] = evaluate_with_gradient<n>(hamiltonian, x);
  const auto lam = structure.lambda(x);
  const auto e = structure.e(x);
  Vec<double, n> r;
  for (std::size_t i = 0; i < n; ++i) {
    double acc = -h * e[i];
    for (std::size_t j = 0; j < n; ++j) acc += lam[i][j] * dh[j];
    r[i] = acc;
  }
  return r;
}

// E(H) = sum_i E^i d_i H
template <JacobiStructure S, class H>
double reeb_derivative(const S& structure, const H& hamiltonian, const Vec<double, S::dim>& x) {
  const auto [h, dh] = evaluate_with_gradient<S::dim>(hamiltonian, x);
  const auto e = structure.e(x);
  double acc = 0.0;
  for (std::size_t i = 0; i < S::dim; ++i) acc += e[i] * dh[i];
  return acc;
}

// Pi = Lambda / t + d_t ^ E. Works on any jet type so realizations built from
// it can be pushed through the series/dual machinery.
template <class S, class T, std::size_t M>
Mat<T, M> poisson_matrix(const S& structure, const Vec<T, M>& s) {
  static_assert(M == S::dim + 1);
  constexpr std::size_t n = S::dim;
  const T& t = s[n];
  if (primal(t) == 0.0) throw SingularScaleError("Poisson matrix requested at t = 0");
  const auto x = jacobi_part(s);
  const auto lam = structure.lambda(x);
  const auto e = structure.e(x);
  Mat<T, M> pi = zero_matrix<T, M>();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) pi[i][j] = lam[i][j] / t;
    pi[n][i] = e[i];
    pi[i][n] = -e[i];
  }
  return pi;
}

template <class H, class T, std::size_t M>
T lifted_hamiltonian(const H& hamiltonian, const Vec<T, M>& s) {
  return s[M - 1] * hamiltonian(jacobi_part(s));
}

// X_Hhat = X_H + t E(H) d_t
template <JacobiStructure S, class H>
Vec<double, S::dim + 1> lifted_vector_field(const S& structure, const H& hamiltonian,
                                            const Vec<double, S::dim + 1>& s) {
  constexpr std::size_t n = S::dim;
  const double t = s[n];
  if (t == 0.0) throw SingularScaleError("lifted vector field requested at t = 0");
  const auto x = jacobi_part(s);
  const auto xh = jacobi_vector_field(structure, hamiltonian, x);
  Vec<double, n + 1> r;
  std::copy(xh.begin(), xh.end(), r.begin());
  r[n] = t * reeb_derivative(structure, hamiltonian, x);
  return r;
}

// h_z(x, t) = (x, z t)
template <class T, std::size_t M>
Vec<T, M> homogeneity_action(Vec<T, M> s, double z) {
  if (z == 0.0) throw InvalidScaleError("homogeneity action with z = 0");
  if (primal(s[M - 1]) == 0.0) throw SingularScaleError("homogeneity action at t = 0");
  s[M - 1] = s[M - 1] * z;
  return s;
}

// T*h_z(x, t, xi_x, xi_t) = (x, z t, z xi_x, xi_t)
template <class T, std::size_t M>
std::pair<Vec<T, M>, Vec<T, M>> cotangent_homogeneity(const Vec<T, M>& s, Vec<T, M> xi,
                                                     double z) {
  Vec<T, M> base = homogeneity_action(s, z);
  for (std::size_t i = 0; i + 1 < M; ++i) xi[i] = xi[i] * z;
  return {base, xi};
}

inline ExtendedState homogeneity_action(const ExtendedState& s, double z) {
  if (z == 0.0) throw InvalidScaleError("homogeneity action with z = 0");
  return ExtendedState(s.x, z * s.t);
}

inline CotangentData cotangent_homogeneity(const CotangentData& c, double z) {
  std::vector<double> xi = c.xi_x;
  for (double& v : xi) v *= z;
  return CotangentData(homogeneity_action(c.base, z), std::move(xi), c.xi_t);
}

struct JacobiReport {
  double schouten_residual = 0.0;  // max |[L,L] - 2 E^L|
  double lie_residual = 0.0;       // max |[E,L]|
  double antisymmetry_residual = 0.0;
  std::size_t points = 0;
  bool passed = true;

  double max_residual() const {
    return std::max({schouten_residual, lie_residual, antisymmetry_residual});
  }
};

// Checks [L,L] = 2 E^L and [E,L] = 0 through their coordinate expansions,
// with first derivatives of L and E from dual numbers.
template <JacobiStructure S>
JacobiReport verify_jacobi_conditions(const S& structure,
                                      const std::vector<Vec<double, S::dim>>& points,
                                      double tol) {
  constexpr std::size_t n = S::dim;
  using D = Dual<double, n>;
  JacobiReport rep;
  for (const auto& x : points) {
    const auto xd = seed(x);
    const Mat<D, n> lam = structure.lambda(xd);
    const Vec<D, n> e = structure.e(xd);
    auto L = [&](std::size_t i, std::size_t j) { return lam[i][j].v; };
    auto dL = [&](std::size_t l, std::size_t i, std::size_t j) { return lam[i][j].d[l]; };
    auto dE = [&](std::size_t l, std::size_t i) { return e[i].d[l]; };
    double scale = 1.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(L(i, j)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        rep.antisymmetry_residual =
            std::max(rep.antisymmetry_residual, std::abs(L(i, j) + L(j, i)) / scale);

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
          double ll = 0.0;
          for (std::size_t l = 0; l < n; ++l)
            ll += L(l, i) * dL(l, j, k) + L(l, j) * dL(l, k, i) + L(l, k) * dL(l, i, j);
          ll *= 2.0;
          const double el = e[i].v * L(j, k) + e[j].v * L(k, i) + e[k].v * L(i, j);
          rep.schouten_residual = std::max(rep.schouten_residual, std::abs(ll - 2.0 * el));
        }
        double lie = 0.0;
        for (std::size_t l = 0; l < n; ++l)
          lie += e[l].v * dL(l, i, j) - L(l, j) * dE(l, i) - L(i, l) * dE(l, j);
        rep.lie_residual = std::max(rep.lie_residual, std::abs(lie));
      }
    }
    ++rep.points;
  }
  rep.passed = rep.max_residual() <= tol;
  return rep;
}

}  // namespace jhi
