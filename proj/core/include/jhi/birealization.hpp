#pragma once

// Homogeneous symplectic bi-realizations (alpha, beta). Every realization here
// follows one orientation: to first order in the covector,
//   alpha(s, xi) = s - 1/2 Pi(s) xi,   beta(s, xi) = alpha(s, -xi),
// so that beta o alpha^{-1} applied to d(ds * Hhat) advances along +X_Hhat.

#include <cmath>
#include <concepts>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "jhi/errors.hpp"
#include "jhi/jacobi.hpp"
#include "jhi/jets.hpp"
#include "jhi/linalg.hpp"

namespace jhi {

enum class RealizationKind { exact, transported, first_order_approximate };

inline std::string to_string(RealizationKind k) {
  switch (k) {
    case RealizationKind::exact:
      return "exact";
    case RealizationKind::transported:
      return "transported";
    case RealizationKind::first_order_approximate:
      return "first_order_approximate";
  }
  return "unknown";
}

template <class R, std::size_t M>
concept BiRealization = requires(const R& r, const Vec<double, M>& s) {
  { r.alpha(s, s) } -> std::same_as<Vec<double, M>>;
  { r.beta(s, s) } -> std::same_as<Vec<double, M>>;
  { r.domain_ok(s, s) } -> std::convertible_to<bool>;
  { R::kind } -> std::convertible_to<RealizationKind>;
};

// Shared beta for realizations that only define alpha.
template <class Derived>
struct ReflectedBeta {
  template <class T, std::size_t M>
  Vec<T, M> beta(const Vec<T, M>& s, const Vec<T, M>& xi) const {
    return static_cast<const Derived&>(*this).alpha(s, negated(xi));
  }
};

namespace detail {

inline bool well_separated(double denom, double scale) {
  return std::abs(denom) > 1e-8 * std::abs(scale);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Canonical midpoint realization on conjugate pairs
// ---------------------------------------------------------------------------

// For each pair (q, p) with {q, p} = 1: q' = q - eta_p / 2, p' = p + eta_q / 2.
// Coordinates not in any pair are Casimir slots and pass through.
template <std::size_t M>
class CanonicalPair : public ReflectedBeta<CanonicalPair<M>> {
 public:
  struct Pair {
    std::size_t q;
    std::size_t p;
  };
  static constexpr RealizationKind kind = RealizationKind::exact;

  CanonicalPair(std::initializer_list<Pair> pairs) : pairs_(pairs) {
    std::array<int, M> used{};
    for (const auto& pr : pairs_) {
      if (pr.q >= M || pr.p >= M || pr.q == pr.p) {
        throw ConfigurationError("malformed conjugate pair");
      }
      if (used[pr.q]++ || used[pr.p]++) {
        throw ConfigurationError("coordinate appears in more than one conjugate pair");
      }
    }
  }

  template <class T>
  Vec<T, M> alpha(const Vec<T, M>& X, const Vec<T, M>& eta) const {
    Vec<T, M> r = X;
    for (const auto& pr : pairs_) {
      r[pr.q] = X[pr.q] - 0.5 * eta[pr.p];
      r[pr.p] = X[pr.p] + 0.5 * eta[pr.q];
    }
    return r;
  }

  bool domain_ok(const Vec<double, M>&, const Vec<double, M>&) const { return true; }

  const std::vector<Pair>& pairs() const { return pairs_; }

 private:
  std::vector<Pair> pairs_;
};

// ---------------------------------------------------------------------------
// Transport through a coordinate change
// ---------------------------------------------------------------------------

// A change F must provide forward, inverse and jacobian (DF of the forward map
// at the base point), templated on the scalar type, plus double-valued domain
// predicates for the base point and for canonical images.
template <class C>
concept CoordinateChange = requires(const C& c, const Vec<double, C::M>& s) {
  { c.forward(s) } -> std::same_as<Vec<double, C::M>>;
  { c.inverse(s) } -> std::same_as<Vec<double, C::M>>;
  { c.jacobian(s) } -> std::same_as<Mat<double, C::M>>;
  { c.domain_ok(s) } -> std::convertible_to<bool>;
  { c.image_ok(s, s) } -> std::convertible_to<bool>;
};

// (s, xi) -> (F(s), eta) with DF(s)^T eta = xi.
template <class C, class T, std::size_t M>
std::pair<Vec<T, M>, Vec<T, M>> cotangent_lift(const C& change, const Vec<T, M>& s,
                                               const Vec<T, M>& xi) {
  auto eta = solve(transpose(change.jacobian(s)), xi);
  if (!eta) throw LiftError("coordinate-change Jacobian is singular at the base point");
  return {change.forward(s), *eta};
}

template <class C>
CotangentData cotangent_lift(const C& change, const CotangentData& c) {
  constexpr std::size_t M = C::M;
  const auto s = c.base.packed<M>();
  Vec<double, M> xi{};
  std::copy(c.xi_x.begin(), c.xi_x.end(), xi.begin());
  xi[M - 1] = c.xi_t;
  const auto [X, eta] = cotangent_lift(change, s, xi);
  return CotangentData(ExtendedState::unpacked(X), std::vector<double>(eta.begin(), eta.end() - 1),
                       eta[M - 1]);
}

// alpha = F^{-1} o alpha_can o (F^{-1})^*
template <class C, class Can>
class Transported : public ReflectedBeta<Transported<C, Can>> {
 public:
  static constexpr std::size_t M = C::M;
  static constexpr RealizationKind kind = RealizationKind::transported;

  Transported(C change, Can canonical) : change_(std::move(change)), canonical_(std::move(canonical)) {}

  template <class T>
  Vec<T, M> alpha(const Vec<T, M>& s, const Vec<T, M>& xi) const {
    const auto [X, eta] = cotangent_lift(change_, s, xi);
    return change_.inverse(canonical_.alpha(X, eta));
  }

  bool domain_ok(const Vec<double, M>& s, const Vec<double, M>& xi) const {
    if (!change_.domain_ok(s)) return false;
    auto eta = solve(transpose(change_.jacobian(s)), xi);
    if (!eta) return false;
    return change_.image_ok(canonical_.alpha(change_.forward(s), *eta), s);
  }

  const C& change() const { return change_; }

 private:
  C change_;
  Can canonical_;
};

// ---------------------------------------------------------------------------
// Coordinate changes used by the catalog
// ---------------------------------------------------------------------------

// Contact: F(q, p, z, t) = (q, p t, -z, t); F_* Pi = d_P ^ d_Q + d_T ^ d_Z.
struct ContactChange {
  static constexpr std::size_t M = 4;

  template <class T>
  Vec<T, 4> forward(const Vec<T, 4>& s) const {
    return {s[0], s[1] * s[3], -s[2], s[3]};
  }
  template <class T>
  Vec<T, 4> inverse(const Vec<T, 4>& X) const {
    if (primal(X[3]) == 0.0) throw SingularScaleError("contact inverse change at T = 0");
    return {X[0], X[1] / X[3], -X[2], X[3]};
  }
  template <class T>
  Mat<T, 4> jacobian(const Vec<T, 4>& s) const {
    Mat<T, 4> j = zero_matrix<T, 4>();
    j[0][0] = T(1.0);
    j[1][1] = s[3];
    j[1][3] = s[1];
    j[2][2] = T(-1.0);
    j[3][3] = T(1.0);
    return j;
  }
  bool domain_ok(const Vec<double, 4>& s) const { return s[3] != 0.0; }
  bool image_ok(const Vec<double, 4>& X, const Vec<double, 4>& s) const {
    return detail::well_separated(X[3], s[3]);
  }
  static CanonicalPair<4> canonical() { return {{1, 0}, {3, 2}}; }
};

// 3D: F(x1, x2, x3, t) = (x1, t^2 x2, t^2 x3, t); F_* Pi = d_X4 ^ d_X1.
struct ScaledCasimirChange {
  static constexpr std::size_t M = 4;

  template <class T>
  Vec<T, 4> forward(const Vec<T, 4>& s) const {
    const T t2 = s[3] * s[3];
    return {s[0], t2 * s[1], t2 * s[2], s[3]};
  }
  template <class T>
  Vec<T, 4> inverse(const Vec<T, 4>& X) const {
    if (primal(X[3]) == 0.0) throw SingularScaleError("scaled-Casimir inverse change at X4 = 0");
    const T t2 = X[3] * X[3];
    return {X[0], X[1] / t2, X[2] / t2, X[3]};
  }
  template <class T>
  Mat<T, 4> jacobian(const Vec<T, 4>& s) const {
    Mat<T, 4> j = zero_matrix<T, 4>();
    const T t2 = s[3] * s[3];
    j[0][0] = T(1.0);
    j[1][1] = t2;
    j[1][3] = 2.0 * s[3] * s[1];
    j[2][2] = t2;
    j[2][3] = 2.0 * s[3] * s[2];
    j[3][3] = T(1.0);
    return j;
  }
  bool domain_ok(const Vec<double, 4>& s) const { return s[3] != 0.0; }
  bool image_ok(const Vec<double, 4>& X, const Vec<double, 4>& s) const {
    return detail::well_separated(X[3], s[3]);
  }
  static CanonicalPair<4> canonical() { return {{3, 0}}; }
};

// 2D: F(x, y, t) = (theta, -t/2, r^2/t) with c = r^2/t a Casimir. The inverse
// rebuilds (x, y) from cos/sin of the angle, so the atan2 branch never leaks.
struct PolarChange {
  static constexpr std::size_t M = 3;

  template <class T>
  Vec<T, 3> forward(const Vec<T, 3>& s) const {
    using std::atan2;
    return {atan2(s[1], s[0]), -0.5 * s[2], (s[0] * s[0] + s[1] * s[1]) / s[2]};
  }
  template <class T>
  Vec<T, 3> inverse(const Vec<T, 3>& X) const {
    using std::cos;
    using std::sin;
    using std::sqrt;
    const T t = -2.0 * X[1];
    if (primal(t) == 0.0) throw SingularScaleError("polar inverse change at t = 0");
    const T r = sqrt(X[2] * t);
    return {r * cos(X[0]), r * sin(X[0]), t};
  }
  template <class T>
  Mat<T, 3> jacobian(const Vec<T, 3>& s) const {
    const T r2 = s[0] * s[0] + s[1] * s[1];
    const T& t = s[2];
    Mat<T, 3> j = zero_matrix<T, 3>();
    j[0][0] = -s[1] / r2;
    j[0][1] = s[0] / r2;
    j[1][2] = T(-0.5);
    j[2][0] = 2.0 * s[0] / t;
    j[2][1] = 2.0 * s[1] / t;
    j[2][2] = -r2 / (t * t);
    return j;
  }
  bool domain_ok(const Vec<double, 3>& s) const {
    return std::hypot(s[0], s[1]) > 1e-8 && s[2] != 0.0;
  }
  bool image_ok(const Vec<double, 3>& X, const Vec<double, 3>& s) const {
    const double t = -2.0 * X[1];
    return detail::well_separated(t, s[2]) && X[2] * t > 0.0;
  }
  static CanonicalPair<3> canonical() { return {{0, 1}}; }
};

// Lotka-Volterra with c = 0, d = f: U = log x, V = t (y^-g - 1)/(a g),
// Z = log t - g log y, and {U, V} = 1 with Z a Casimir.
struct LotkaVolterraChange {
  static constexpr std::size_t M = 3;
  double a = 1.0;
  double gamma = 2.0;

  template <class T>
  Vec<T, 3> forward(const Vec<T, 3>& s) const {
    using std::log;
    using std::pow;
    return {log(s[0]), s[2] * (pow(s[1], -gamma) - 1.0) / (a * gamma),
            log(s[2]) - gamma * log(s[1])};
  }
  template <class T>
  Vec<T, 3> inverse(const Vec<T, 3>& X) const {
    using std::exp;
    using std::pow;
    const T ez = exp(X[2]);
    const T one_minus_c = 1.0 - a * gamma * X[1] / ez;
    if (!(primal(one_minus_c) > 0.0)) throw DomainError("Lotka-Volterra inverse change: C >= 1");
    return {exp(X[0]), pow(one_minus_c, 1.0 / gamma), ez * one_minus_c};
  }
  template <class T>
  Mat<T, 3> jacobian(const Vec<T, 3>& s) const {
    using std::pow;
    const T& x = s[0];
    const T& y = s[1];
    const T& t = s[2];
    Mat<T, 3> j = zero_matrix<T, 3>();
    j[0][0] = 1.0 / x;
    j[1][1] = -(t / a) * pow(y, -gamma - 1.0);
    j[1][2] = (pow(y, -gamma) - 1.0) / (a * gamma);
    j[2][1] = -gamma / y;
    j[2][2] = 1.0 / t;
    return j;
  }
  bool domain_ok(const Vec<double, 3>& s) const { return s[0] > 0 && s[1] > 0 && s[2] > 0; }
  bool image_ok(const Vec<double, 3>& X, const Vec<double, 3>&) const {
    return a * gamma * X[1] * std::exp(-X[2]) < 1.0 - 1e-10;
  }
  static CanonicalPair<3> canonical() { return {{0, 1}}; }
};

// ---------------------------------------------------------------------------
// Closed-form realizations
// ---------------------------------------------------------------------------

// Contact structure, coordinates (q, p, z, t).
struct ContactRealization : ReflectedBeta<ContactRealization> {
  static constexpr RealizationKind kind = RealizationKind::exact;

  template <class T>
  Vec<T, 4> alpha(const Vec<T, 4>& s, const Vec<T, 4>& xi) const {
    const T& q = s[0];
    const T& p = s[1];
    const T& z = s[2];
    const T& t = s[3];
    const T tn = t + 0.5 * xi[2];
    if (primal(tn) == 0.0) throw DomainError("contact realization: t + xi_z/2 = 0");
    return {q + xi[1] / (2.0 * t), (t * p - 0.5 * xi[0]) / tn, z - 0.5 * xi[3] + p * xi[1] / (2.0 * t),
            tn};
  }

  bool domain_ok(const Vec<double, 4>& s, const Vec<double, 4>& xi) const {
    return detail::well_separated(s[3] + 0.5 * xi[2], s[3]);
  }
};

// 3D linear structure, coordinates (x1, x2, x3, t).
struct ScaledCasimirRealization : ReflectedBeta<ScaledCasimirRealization> {
  static constexpr RealizationKind kind = RealizationKind::exact;

  template <class T>
  Vec<T, 4> alpha(const Vec<T, 4>& s, const Vec<T, 4>& xi) const {
    const T& t = s[3];
    const T tn = t - 0.5 * xi[0];
    if (primal(tn) == 0.0) throw DomainError("3D realization: t - xi_1/2 = 0");
    const T ratio = t / tn;
    const T r2 = ratio * ratio;
    return {s[0] + 0.5 * xi[3] - (s[1] * xi[1] + s[2] * xi[2]) / t, r2 * s[1], r2 * s[2], tn};
  }

  bool domain_ok(const Vec<double, 4>& s, const Vec<double, 4>& xi) const {
    return detail::well_separated(s[3] - 0.5 * xi[0], s[3]);
  }
};

// Lotka-Volterra (c = 0, d = f), coordinates (x, y, t).
struct LotkaVolterraRealization : ReflectedBeta<LotkaVolterraRealization> {
  static constexpr RealizationKind kind = RealizationKind::exact;
  double a = 1.0;
  double gamma = 2.0;

  template <class T>
  Vec<T, 3> alpha(const Vec<T, 3>& s, const Vec<T, 3>& xi) const {
    using std::exp;
    using std::log;
    using std::pow;
    const T& x = s[0];
    const T& y = s[1];
    const T& t = s[2];
    if (!(primal(x) > 0 && primal(y) > 0 && primal(t) > 0)) {
      throw DomainError("Lotka-Volterra realization needs x, y, t > 0");
    }
    const T xn = x * exp(0.5 * (a * gamma * xi[2] + a * y / t * xi[1]));
    const T v = t * (pow(y, -gamma) - 1.0) / (a * gamma) + 0.5 * x * xi[0];
    const T z = log(t) - gamma * log(y);
    const T ez = exp(z);
    const T c = a * gamma * v / ez;
    if (!(primal(c) < 1.0)) throw DomainError("Lotka-Volterra realization: C >= 1");
    const T one_minus_c = 1.0 - c;
    return {xn, pow(one_minus_c, 1.0 / gamma), ez * one_minus_c};
  }

  double c_value(const Vec<double, 3>& s, const Vec<double, 3>& xi) const {
    const double v = s[2] * (std::pow(s[1], -gamma) - 1.0) / (a * gamma) + 0.5 * s[0] * xi[0];
    const double z = std::log(s[2]) - gamma * std::log(s[1]);
    return a * gamma * v * std::exp(-z);
  }

  bool domain_ok(const Vec<double, 3>& s, const Vec<double, 3>& xi) const {
    if (!(s[0] > 0 && s[1] > 0 && s[2] > 0)) return false;
    return c_value(s, xi) < 1.0 - 1e-10;
  }
};

// Approximate realization linear in the covector, Pi taken at the base point.
template <class S>
struct FirstOrderRealization : ReflectedBeta<FirstOrderRealization<S>> {
  static constexpr RealizationKind kind = RealizationKind::first_order_approximate;
  static constexpr std::size_t M = S::dim + 1;
  S structure;

  template <class T>
  Vec<T, M> alpha(const Vec<T, M>& s, const Vec<T, M>& xi) const {
    const auto pi = poisson_matrix(structure, s);
    const auto shift = mat_vec(pi, xi);
    Vec<T, M> r;
    for (std::size_t i = 0; i < M; ++i) r[i] = s[i] - 0.5 * shift[i];
    return r;
  }

  bool domain_ok(const Vec<double, M>& s, const Vec<double, M>& xi) const {
    return detail::well_separated(alpha(s, xi)[M - 1], s[M - 1]);
  }
};

}  // namespace jhi
