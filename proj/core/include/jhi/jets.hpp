#pragma once

// Truncated univariate Taylor series in a formal parameter s, and first-order
// forward-mode dual numbers. Both are generic over their coefficient type, so
// they nest: Series<Dual<double, N>> carries s-expansions of spatial
// gradients, Dual<Dual<double, N>, N> carries Hessians, and so on.

#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>

#include "jhi/errors.hpp"

namespace jhi {

template <class S>
concept Arithmetic = std::is_arithmetic_v<S>;

template <class T, std::size_t N>
struct Dual;

template <class T>
class Series;

// Innermost double value of a (possibly nested) jet.
inline double primal(double x) { return x; }

template <class T, std::size_t N>
double primal(const Dual<T, N>& x);

template <class T>
double primal(const Series<T>& x);

// Number of Dual layers wrapped around double.
template <class T>
struct DualDepth : std::integral_constant<int, 0> {};
template <class T, std::size_t N>
struct DualDepth<Dual<T, N>> : std::integral_constant<int, 1 + DualDepth<T>::value> {};
template <class T>
struct DualDepth<Series<T>> : DualDepth<T> {};
template <class T>
inline constexpr int kDualDepth = DualDepth<T>::value;

namespace detail {

inline void require_finite(double v, const char* op) {
  if (!std::isfinite(v)) {
    throw EvaluationError(std::string("non-finite value produced by ") + op);
  }
}

inline void require_positive(double v, const char* op) {
  if (!(v > 0.0)) {
    throw DomainError(std::string(op) + ": argument " + std::to_string(v) +
                      " outside domain (constant term must be > 0)");
  }
}

inline bool is_integer(double r) { return std::floor(r) == r; }

}  // namespace detail

// ---------------------------------------------------------------------------
// Dual
// ---------------------------------------------------------------------------

template <class T, std::size_t N>
struct Dual {
  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  Dual(const T& value) : v(value) {}  // NOLINT: implicit on purpose
  template <Arithmetic S>
    requires(!std::is_same_v<S, T>)
  Dual(S c) : v(static_cast<T>(c)) {}  // NOLINT

  static Dual variable(const T& value, std::size_t index) {
    Dual r(value);
    r.d[index] = T(1.0);
    return r;
  }

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) { return *this = *this * o; }
  Dual& operator/=(const Dual& o) { return *this = *this / o; }
};

template <class T, std::size_t N>
double primal(const Dual<T, N>& x) {
  return primal(x.v);
}

template <class T, std::size_t N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = -a.v;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N>& b) {
  return a += b;
}

template <class T, std::size_t N>
Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N>& b) {
  return a -= b;
}

template <class T, std::size_t N>
Dual<T, N> operator*(const Dual<T, N>& a, const Dual<T, N>& b) {
  Dual<T, N> r;
  r.v = a.v * b.v;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = a.v * b.d[i] + a.d[i] * b.v;
  return r;
}

template <class T, std::size_t N>
Dual<T, N> operator/(const Dual<T, N>& a, const Dual<T, N>& b) {
  if (primal(b) == 0.0) throw EvaluationError("division by zero");
  Dual<T, N> r;
  const T inv = T(1.0) / b.v;
  r.v = a.v * inv;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
  detail::require_finite(primal(r), "division");
  return r;
}

template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator+(Dual<T, N> a, S b) {
  a.v += b;
  return a;
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator+(S a, Dual<T, N> b) {
  b.v += a;
  return b;
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator-(Dual<T, N> a, S b) {
  a.v -= b;
  return a;
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator-(S a, const Dual<T, N>& b) {
  Dual<T, N> r = -b;
  r.v += a;
  return r;
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator*(Dual<T, N> a, S b) {
  a.v *= b;
  for (auto& di : a.d) di *= b;
  return a;
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator*(S a, Dual<T, N> b) {
  return b * a;
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator/(Dual<T, N> a, S b) {
  if (b == 0) throw EvaluationError("division by zero");
  return a * (1.0 / static_cast<double>(b));
}
template <class T, std::size_t N, Arithmetic S>
Dual<T, N> operator/(S a, const Dual<T, N>& b) {
  return Dual<T, N>(T(static_cast<double>(a))) / b;
}

namespace detail {

// f(a) given f(a.v) and f'(a.v).
template <class T, std::size_t N>
Dual<T, N> chain(const Dual<T, N>& a, const T& fv, const T& dfv) {
  Dual<T, N> r;
  r.v = fv;
  for (std::size_t i = 0; i < N; ++i) r.d[i] = dfv * a.d[i];
  return r;
}

}  // namespace detail

template <class T, std::size_t N>
Dual<T, N> exp(const Dual<T, N>& a) {
  using std::exp;
  const T e = exp(a.v);
  detail::require_finite(primal(e), "exp");
  return detail::chain(a, e, e);
}

template <class T, std::size_t N>
Dual<T, N> log(const Dual<T, N>& a) {
  using std::log;
  detail::require_positive(primal(a), "log");
  return detail::chain(a, T(log(a.v)), T(1.0 / a.v));
}

template <class T, std::size_t N>
Dual<T, N> sqrt(const Dual<T, N>& a) {
  using std::sqrt;
  detail::require_positive(primal(a), "sqrt");
  const T r = sqrt(a.v);
  return detail::chain(a, r, T(0.5 / r));
}

template <class T, std::size_t N>
Dual<T, N> sin(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return detail::chain(a, T(sin(a.v)), T(cos(a.v)));
}

template <class T, std::size_t N>
Dual<T, N> cos(const Dual<T, N>& a) {
  using std::cos;
  using std::sin;
  return detail::chain(a, T(cos(a.v)), T(-sin(a.v)));
}

template <class T, std::size_t N>
Dual<T, N> pow(const Dual<T, N>& a, double r) {
  using std::pow;
  if (!detail::is_integer(r)) detail::require_positive(primal(a), "pow");
  const T p = pow(a.v, r);
  const T dp = r * pow(a.v, r - 1.0);
  detail::require_finite(primal(p), "pow");
  return detail::chain(a, p, dp);
}

template <class T, std::size_t N>
Dual<T, N> atan2(const Dual<T, N>& y, const Dual<T, N>& x) {
  using std::atan2;
  const T r2 = x.v * x.v + y.v * y.v;
  if (primal(r2) == 0.0) throw DomainError("atan2: both arguments zero");
  Dual<T, N> r;
  r.v = atan2(y.v, x.v);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / r2;
  return r;
}

// ---------------------------------------------------------------------------
// Series
// ---------------------------------------------------------------------------

// Truncated power series c_0 + c_1 s + ... + c_K s^K. A series built from a
// bare scalar (or default-constructed) is a broadcast constant: it adopts the
// truncation order of whatever it is combined with.
template <class T>
class Series {
 public:
  static constexpr int kMaxOrder = 4;

  Series() = default;
  Series(const T& constant) { c_[0] = constant; }  // NOLINT
  template <Arithmetic S>
    requires(!std::is_same_v<S, T>)
  Series(S constant) {  // NOLINT
    c_[0] = T(static_cast<double>(constant));
  }

  static Series zero(int order) {
    Series r;
    r.set_order(order);
    return r;
  }
  static Series constant(int order, const T& value) {
    Series r = zero(order);
    r.c_[0] = value;
    return r;
  }
  // value + s, the expansion parameter anchored at value.
  static Series variable(int order, const T& value) {
    Series r = constant(order, value);
    if (order >= 1) r.c_[1] = T(1.0);
    return r;
  }
  template <class... Cs>
  static Series of(const Cs&... cs) {
    Series r = zero(static_cast<int>(sizeof...(Cs)) - 1);
    int j = 0;
    ((r.c_[j++] = T(cs)), ...);
    return r;
  }

  int order() const { return broadcast_ ? 0 : order_; }
  bool is_broadcast() const { return broadcast_; }
  const T& operator[](int j) const { return c_[j]; }
  T& operator[](int j) { return c_[j]; }

  Series& operator+=(const Series& o) {
    adopt(o);
    const int k = o.broadcast_ ? 0 : order_;
    for (int j = 0; j <= k; ++j) c_[j] += o.c_[j];
    return *this;
  }
  Series& operator-=(const Series& o) {
    adopt(o);
    const int k = o.broadcast_ ? 0 : order_;
    for (int j = 0; j <= k; ++j) c_[j] -= o.c_[j];
    return *this;
  }
  Series& operator*=(const Series& o) { return *this = *this * o; }
  Series& operator/=(const Series& o) { return *this = *this / o; }

  // Order the result of combining a and b must carry.
  static int common_order(const Series& a, const Series& b) {
    if (a.broadcast_) return b.broadcast_ ? 0 : b.order_;
    if (b.broadcast_) return a.order_;
    if (a.order_ != b.order_) {
      throw TruncationOrderError("series truncation orders differ: " + std::to_string(a.order_) +
                                 " vs " + std::to_string(b.order_));
    }
    return a.order_;
  }
  static bool both_broadcast(const Series& a, const Series& b) {
    return a.broadcast_ && b.broadcast_;
  }
  Series with_order_of(const Series& a, const Series& b) const {
    Series r = *this;
    if (!both_broadcast(a, b)) r.set_order(common_order(a, b));
    return r;
  }
  Series like(int order, bool broadcast) const {
    Series r;
    if (!broadcast) r.set_order(order);
    return r;
  }

 private:
  void set_order(int order) {
    if (order < 0 || order > kMaxOrder) {
      throw TruncationOrderError("series order " + std::to_string(order) + " outside [0, " +
                                 std::to_string(kMaxOrder) + "]");
    }
    order_ = order;
    broadcast_ = false;
  }
  void adopt(const Series& o) {
    const int k = common_order(*this, o);
    if (broadcast_ && !o.broadcast_) set_order(k);
  }

  std::array<T, kMaxOrder + 1> c_{};
  int order_ = 0;
  bool broadcast_ = true;
};

template <class T>
double primal(const Series<T>& x) {
  return primal(x[0]);
}

namespace detail {

template <class T>
Series<T> empty_like(const Series<T>& a) {
  return a.like(a.order(), a.is_broadcast());
}

template <class T>
Series<T> empty_like(const Series<T>& a, const Series<T>& b) {
  const bool bc = Series<T>::both_broadcast(a, b);
  return a.like(bc ? 0 : Series<T>::common_order(a, b), bc);
}

}  // namespace detail

template <class T>
Series<T> operator-(const Series<T>& a) {
  Series<T> r = detail::empty_like(a);
  for (int j = 0; j <= a.order(); ++j) r[j] = -a[j];
  return r;
}

template <class T>
Series<T> operator+(Series<T> a, const Series<T>& b) {
  return a += b;
}

template <class T>
Series<T> operator-(Series<T> a, const Series<T>& b) {
  return a -= b;
}

template <class T>
Series<T> operator*(const Series<T>& a, const Series<T>& b) {
  Series<T> r = detail::empty_like(a, b);
  const int k = r.order();
  const int ka = a.order();
  const int kb = b.order();
  for (int n = 0; n <= k; ++n) {
    T acc{};
    for (int j = std::max(0, n - kb); j <= std::min(n, ka); ++j) acc += a[j] * b[n - j];
    r[n] = acc;
  }
  return r;
}

template <class T>
Series<T> operator/(const Series<T>& a, const Series<T>& b) {
  if (primal(b) == 0.0) {
    throw SingularSeriesError("series division by a series with zero constant term");
  }
  Series<T> r = detail::empty_like(a, b);
  const int k = r.order();
  const int ka = a.order();
  const int kb = b.order();
  const T inv = T(1.0) / b[0];
  for (int n = 0; n <= k; ++n) {
    T acc = n <= ka ? a[n] : T{};
    for (int j = std::max(0, n - kb); j < n; ++j) acc -= r[j] * b[n - j];
    r[n] = acc * inv;
  }
  detail::require_finite(primal(r), "series division");
  return r;
}

template <class T, Arithmetic S>
Series<T> operator+(Series<T> a, S b) {
  a[0] += b;
  return a;
}
template <class T, Arithmetic S>
Series<T> operator+(S a, Series<T> b) {
  b[0] += a;
  return b;
}
template <class T, Arithmetic S>
Series<T> operator-(Series<T> a, S b) {
  a[0] -= b;
  return a;
}
template <class T, Arithmetic S>
Series<T> operator-(S a, const Series<T>& b) {
  Series<T> r = -b;
  r[0] += a;
  return r;
}
template <class T, Arithmetic S>
Series<T> operator*(Series<T> a, S b) {
  for (int j = 0; j <= a.order(); ++j) a[j] *= b;
  return a;
}
template <class T, Arithmetic S>
Series<T> operator*(S a, Series<T> b) {
  return b * a;
}
template <class T, Arithmetic S>
Series<T> operator/(Series<T> a, S b) {
  if (b == 0) throw EvaluationError("division by zero");
  return a * (1.0 / static_cast<double>(b));
}
template <class T, Arithmetic S>
Series<T> operator/(S a, const Series<T>& b) {
  return Series<T>(static_cast<double>(a)) / b;
}

template <class T>
Series<T> exp(const Series<T>& a) {
  using std::exp;
  Series<T> r = detail::empty_like(a);
  r[0] = exp(a[0]);
  detail::require_finite(primal(r[0]), "exp");
  for (int k = 1; k <= a.order(); ++k) {
    T acc{};
    for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * a[j] * r[k - j];
    r[k] = acc / static_cast<double>(k);
  }
  return r;
}

template <class T>
Series<T> log(const Series<T>& a) {
  using std::log;
  detail::require_positive(primal(a), "log");
  Series<T> r = detail::empty_like(a);
  r[0] = log(a[0]);
  const T inv = T(1.0) / a[0];
  for (int k = 1; k <= a.order(); ++k) {
    T acc = a[k];
    for (int j = 1; j < k; ++j) acc -= (static_cast<double>(j) / k) * r[j] * a[k - j];
    r[k] = acc * inv;
  }
  return r;
}

namespace detail {

template <class T>
std::pair<Series<T>, Series<T>> sin_cos(const Series<T>& a) {
  using std::cos;
  using std::sin;
  Series<T> s = empty_like(a);
  Series<T> c = empty_like(a);
  s[0] = sin(a[0]);
  c[0] = cos(a[0]);
  for (int k = 1; k <= a.order(); ++k) {
    T as{};
    T ac{};
    for (int j = 1; j <= k; ++j) {
      as += static_cast<double>(j) * a[j] * c[k - j];
      ac += static_cast<double>(j) * a[j] * s[k - j];
    }
    s[k] = as / static_cast<double>(k);
    c[k] = -ac / static_cast<double>(k);
  }
  return {s, c};
}

}  // namespace detail

template <class T>
Series<T> sin(const Series<T>& a) {
  return detail::sin_cos(a).first;
}

template <class T>
Series<T> cos(const Series<T>& a) {
  return detail::sin_cos(a).second;
}

template <class T>
Series<T> sqrt(const Series<T>& a) {
  using std::sqrt;
  detail::require_positive(primal(a), "sqrt");
  Series<T> r = detail::empty_like(a);
  r[0] = sqrt(a[0]);
  const T inv = T(0.5) / r[0];
  for (int k = 1; k <= a.order(); ++k) {
    T acc = a[k];
    for (int j = 1; j < k; ++j) acc -= r[j] * r[k - j];
    r[k] = acc * inv;
  }
  return r;
}

// a^p via p' a = r a' p.
template <class T>
Series<T> pow(const Series<T>& a, double r) {
  using std::pow;
  if (!detail::is_integer(r) || r < 0) detail::require_positive(primal(a), "pow");
  Series<T> p = detail::empty_like(a);
  p[0] = pow(a[0], r);
  detail::require_finite(primal(p[0]), "pow");
  if (a.order() == 0) return p;
  if (primal(a) == 0.0) {
    // Integer power at a zero constant term: fall back to repeated products.
    Series<T> acc = Series<T>::constant(a.order(), T(1.0));
    for (int i = 0; i < static_cast<int>(r); ++i) acc = acc * a;
    return acc;
  }
  const T inv = T(1.0) / a[0];
  for (int k = 1; k <= a.order(); ++k) {
    T acc{};
    for (int j = 1; j <= k; ++j) acc += (r * j - (k - j)) * a[j] * p[k - j];
    p[k] = acc * inv / static_cast<double>(k);
  }
  return p;
}

// atan2 via theta' = (x y' - y x') / (x^2 + y^2), integrated term by term.
template <class T>
Series<T> atan2(const Series<T>& y, const Series<T>& x) {
  using std::atan2;
  Series<T> r = detail::empty_like(y, x);
  const int k = r.order();
  const T r2 = x[0] * x[0] + y[0] * y[0];
  if (primal(r2) == 0.0) throw DomainError("atan2: both arguments zero");
  r[0] = atan2(y[0], x[0]);
  if (k == 0) return r;
  Series<T> dx = Series<T>::zero(k);
  Series<T> dy = Series<T>::zero(k);
  for (int j = 0; j < k; ++j) {
    dx[j] = static_cast<double>(j + 1) * x[j + 1];
    dy[j] = static_cast<double>(j + 1) * y[j + 1];
  }
  const Series<T> w = (x * dy - y * dx) / (x * x + y * y);
  for (int j = 1; j <= k; ++j) r[j] = w[j - 1] / static_cast<double>(j);
  return r;
}

// i! * c_i, the i-th derivative in s at s = 0.
template <class T>
T extract_derivative(const Series<T>& a, int i) {
  if (i < 0 || i > a.order()) {
    throw TruncationOrderError("derivative order " + std::to_string(i) +
                               " exceeds truncation order " + std::to_string(a.order()));
  }
  double factorial = 1.0;
  for (int j = 2; j <= i; ++j) factorial *= j;
  return a[i] * factorial;
}

using TruncatedSeries = Series<double>;
template <std::size_t N>
using DualOverSeries = Dual<Series<double>, N>;

// ---------------------------------------------------------------------------
// Gradients
// ---------------------------------------------------------------------------

template <class T, std::size_t N>
std::array<Dual<T, N>, N> seed(const std::array<T, N>& x) {
  std::array<Dual<T, N>, N> r;
  for (std::size_t i = 0; i < N; ++i) r[i] = Dual<T, N>::variable(x[i], i);
  return r;
}

template <class T>
struct ValueAndGradient;

// Value and gradient of f at x by one forward pass; f must accept a
// std::array of Dual<T, N>.
template <class T, std::size_t N, class F>
std::pair<T, std::array<T, N>> value_and_gradient(F&& f, const std::array<T, N>& x) {
  const Dual<T, N> r = std::forward<F>(f)(seed(x));
  detail::require_finite(primal(r), "function evaluation");
  for (const auto& di : r.d) detail::require_finite(primal(di), "gradient evaluation");
  return {r.v, r.d};
}

template <std::size_t N, class F>
std::pair<double, std::array<double, N>> evaluate_with_gradient(F&& f,
                                                                const std::array<double, N>& x) {
  return value_and_gradient<double, N>(std::forward<F>(f), x);
}

}  // namespace jhi
