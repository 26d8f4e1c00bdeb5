#pragma once

// The seven example systems. Each model bundles a Jacobi structure, a
// Hamiltonian, a bi-realization, Casimirs of the Poissonized structure, the
// dissipation rate E(H) in closed form, optional closed-form generating
// coefficients, parameters and a default initial condition.

#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "jhi/birealization.hpp"
#include "jhi/errors.hpp"
#include "jhi/jacobi.hpp"
#include "jhi/jets.hpp"
#include "jhi/linalg.hpp"

namespace jhi {

using ParamMap = std::map<std::string, double>;

namespace detail {

inline void apply_params(ParamMap& params, const ParamMap& overrides, const char* model) {
  for (const auto& [key, value] : overrides) {
    auto it = params.find(key);
    if (it == params.end()) {
      throw ConfigurationError(std::string("unknown parameter '") + key + "' for model " + model);
    }
    it->second = value;
  }
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace detail

// Models without closed-form generating coefficients inherit this.
struct NoClosedForms {
  bool has_closed_form(int) const { return false; }
  template <class T, std::size_t M>
  T closed_form(int i, const Vec<T, M>&) const {
    throw CapabilityError("no closed-form S_" + std::to_string(i) + " for this model");
  }
};

// ---------------------------------------------------------------------------
// Structures
// ---------------------------------------------------------------------------

// Lambda = d_p ^ d_q + p d_p ^ d_z, E = -d_z on (q, p, z).
struct ContactStructure {
  static constexpr std::size_t dim = 3;
  template <class T>
  Mat<T, 3> lambda(const Vec<T, 3>& x) const {
    Mat<T, 3> l = zero_matrix<T, 3>();
    l[1][0] = T(1.0);
    l[0][1] = T(-1.0);
    l[1][2] = x[1];
    l[2][1] = -x[1];
    return l;
  }
  template <class T>
  Vec<T, 3> e(const Vec<T, 3>&) const {
    return {T(0.0), T(0.0), T(-1.0)};
  }
};

// Lambda = (x^2 + y^2) d_x ^ d_y, E = 2x d_y - 2y d_x.
struct Planar2DStructure {
  static constexpr std::size_t dim = 2;
  template <class T>
  Mat<T, 2> lambda(const Vec<T, 2>& x) const {
    const T r2 = x[0] * x[0] + x[1] * x[1];
    Mat<T, 2> l = zero_matrix<T, 2>();
    l[0][1] = r2;
    l[1][0] = -r2;
    return l;
  }
  template <class T>
  Vec<T, 2> e(const Vec<T, 2>& x) const {
    return {-2.0 * x[1], 2.0 * x[0]};
  }
};

// Lambda = 2 x2 d_1 ^ d_2 + 2 x3 d_1 ^ d_3, E = d_1.
struct Linear3DStructure {
  static constexpr std::size_t dim = 3;
  template <class T>
  Mat<T, 3> lambda(const Vec<T, 3>& x) const {
    Mat<T, 3> l = zero_matrix<T, 3>();
    l[0][1] = 2.0 * x[1];
    l[1][0] = -2.0 * x[1];
    l[0][2] = 2.0 * x[2];
    l[2][0] = -2.0 * x[2];
    return l;
  }
  template <class T>
  Vec<T, 3> e(const Vec<T, 3>&) const {
    return {T(1.0), T(0.0), T(0.0)};
  }
};

// Lambda = cos(x2) d_x1 ^ d_y1, E = e^{y2} (y1 d_x1 + x1 d_y1) on (x1, y1, x2, y2).
struct Trig4DStructure {
  static constexpr std::size_t dim = 4;
  template <class T>
  Mat<T, 4> lambda(const Vec<T, 4>& x) const {
    using std::cos;
    const T c = cos(x[2]);
    Mat<T, 4> l = zero_matrix<T, 4>();
    l[0][1] = c;
    l[1][0] = -c;
    return l;
  }
  template <class T>
  Vec<T, 4> e(const Vec<T, 4>& x) const {
    using std::exp;
    const T ey = exp(x[3]);
    return {ey * x[1], ey * x[0], T(0.0), T(0.0)};
  }
};

// Lambda = -a x y d_x ^ d_y, E = (c x y + (d + f) x) d_x + (c x y + (d - f) y) d_y.
struct LotkaVolterraStructure {
  static constexpr std::size_t dim = 2;
  double a = 1.0, c = 0.0, d = 1.0, f = 1.0;
  template <class T>
  Mat<T, 2> lambda(const Vec<T, 2>& x) const {
    const T v = -a * x[0] * x[1];
    Mat<T, 2> l = zero_matrix<T, 2>();
    l[0][1] = v;
    l[1][0] = -v;
    return l;
  }
  template <class T>
  Vec<T, 2> e(const Vec<T, 2>& x) const {
    const T cxy = c * x[0] * x[1];
    return {cxy + (d + f) * x[0], cxy + (d - f) * x[1]};
  }
};

// Lambda = x3 d_2 ^ d_1 + x2 d_1 ^ d_3 + x1 d_3 ^ d_2 with the quadratic E family.
struct RigidBodyStructure {
  static constexpr std::size_t dim = 3;
  std::array<double, 3> a{0.2, 0.2, -0.4};
  std::array<double, 3> d{0.1, 0.1, 0.1};
  template <class T>
  Mat<T, 3> lambda(const Vec<T, 3>& x) const {
    Mat<T, 3> l = zero_matrix<T, 3>();
    l[1][0] = x[2];
    l[0][1] = -x[2];
    l[0][2] = x[1];
    l[2][0] = -x[1];
    l[2][1] = x[0];
    l[1][2] = -x[0];
    return l;
  }
  template <class T>
  Vec<T, 3> e(const Vec<T, 3>& x) const {
    return {a[0] * x[1] * x[2] + d[2] * x[1] + d[0] * x[2],
            a[1] * x[0] * x[2] - d[2] * x[0] + d[1] * x[2],
            a[2] * x[0] * x[1] - d[0] * x[0] - d[1] * x[1]};
  }
};

// ---------------------------------------------------------------------------
// Models
// ---------------------------------------------------------------------------

struct ContactModel : NoClosedForms {
  static constexpr const char* kName = "contact";
  static constexpr std::size_t n = 3;
  static constexpr std::size_t M = 4;
  static constexpr std::size_t kCasimirs = 0;
  static constexpr bool kContactSlice = true;

  struct Hamiltonian {
    template <class T>
    T operator()(const Vec<T, 3>& x) const {
      return x[0] + x[2];
    }
  };

  ContactStructure structure;
  Hamiltonian hamiltonian;
  ContactRealization realization;
  ParamMap params;

  explicit ContactModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
  }

  static std::vector<std::string> coordinates() { return {"q", "p", "z"}; }
  static std::vector<std::string> casimir_names() { return {}; }
  template <class T>
  std::array<T, 0> casimirs(const Vec<T, M>&) const {
    return {};
  }
  double e_of_h(const Vec<double, n>&) const { return -1.0; }
  Vec<double, n> default_x0() const { return {0.1, -1.1, 0.09}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    return {detail::uniform(rng, -1, 1), detail::uniform(rng, -1.5, 1.5),
            detail::uniform(rng, -1, 1), detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "all of R^3 x (R \\ {0})"; }
};

struct DampedModel {
  static constexpr const char* kName = "damped";
  static constexpr std::size_t n = 3;
  static constexpr std::size_t M = 4;
  static constexpr std::size_t kCasimirs = 0;
  static constexpr bool kContactSlice = true;

  struct Hamiltonian {
    double gamma = 0.01;
    template <class T>
    T operator()(const Vec<T, 3>& x) const {
      return 0.5 * x[1] * x[1] + 0.5 * x[0] * x[0] + gamma * x[2];
    }
  };

  ContactStructure structure;
  Hamiltonian hamiltonian;
  ContactRealization realization;
  ParamMap params{{"gamma", 0.01}};

  explicit DampedModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
    hamiltonian.gamma = params.at("gamma");
  }

  bool has_closed_form(int i) const { return i == 3; }
  template <class T>
  T closed_form(int i, const Vec<T, M>& s) const {
    if (i != 3) throw CapabilityError("damped oscillator has a closed form only for S_3");
    const double g = hamiltonian.gamma;
    const T& q = s[0];
    const T& p = s[1];
    const T& z = s[2];
    const T& t = s[3];
    return (q * q * t * (0.25 * (1.0 - g * g)) - (0.5 * g * g * g) * t * z +
            p * p * t * (0.5 * g * g + 0.25) + g * q * p * t) /
           6.0;
  }

  static std::vector<std::string> coordinates() { return {"q", "p", "z"}; }
  static std::vector<std::string> casimir_names() { return {}; }
  template <class T>
  std::array<T, 0> casimirs(const Vec<T, M>&) const {
    return {};
  }
  double e_of_h(const Vec<double, n>&) const { return -hamiltonian.gamma; }
  Vec<double, n> default_x0() const { return {1.0, 0.0, 0.0}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    return {detail::uniform(rng, -1.5, 1.5), detail::uniform(rng, -1.5, 1.5),
            detail::uniform(rng, -1, 1), detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "all of R^3 x (R \\ {0})"; }
};

struct Jacobi2DModel : NoClosedForms {
  static constexpr const char* kName = "jacobi2d";
  static constexpr std::size_t n = 2;
  static constexpr std::size_t M = 3;
  static constexpr std::size_t kCasimirs = 1;
  static constexpr bool kContactSlice = false;

  enum class Variant { quadratic = 0, cos_sin = 1 };

  struct Hamiltonian {
    Variant variant = Variant::quadratic;
    template <class T>
    T operator()(const Vec<T, 2>& x) const {
      using std::cos;
      using std::sin;
      if (variant == Variant::quadratic) return x[0] * x[0] + x[1] * x[1];
      return cos(x[0]) * sin(x[1]);
    }
  };

  Planar2DStructure structure;
  Hamiltonian hamiltonian;
  Transported<PolarChange, CanonicalPair<3>> realization{PolarChange{}, PolarChange::canonical()};
  ParamMap params{{"variant", 0.0}};

  explicit Jacobi2DModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
    const double v = params.at("variant");
    if (v == 0.0) {
      hamiltonian.variant = Variant::quadratic;
    } else if (v == 1.0) {
      hamiltonian.variant = Variant::cos_sin;
    } else {
      throw ConfigurationError("jacobi2d variant must be 0 (x^2+y^2) or 1 (cos(x)sin(y))");
    }
  }

  static std::vector<std::string> variants() { return {"x^2+y^2", "cos(x)*sin(y)"}; }
  static std::vector<std::string> coordinates() { return {"x", "y"}; }
  static std::vector<std::string> casimir_names() { return {"r^2/t"}; }
  template <class T>
  std::array<T, 1> casimirs(const Vec<T, M>& s) const {
    return {(s[0] * s[0] + s[1] * s[1]) / s[2]};
  }
  double e_of_h(const Vec<double, n>& x) const {
    if (hamiltonian.variant == Variant::quadratic) return 0.0;
    return 2.0 * x[0] * std::cos(x[0]) * std::cos(x[1]) +
           2.0 * x[1] * std::sin(x[0]) * std::sin(x[1]);
  }
  Vec<double, n> default_x0() const { return {1.0, 1.0}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    const double r = detail::uniform(rng, 0.3, 2.0);
    const double th = detail::uniform(rng, -std::numbers::pi, std::numbers::pi);
    return {r * std::cos(th), r * std::sin(th), detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "polar chart: excludes the origin (r > 1e-8)"; }

  // H = x^2 + y^2 rotates (x, y) clockwise at angular speed 4 r^2; t is constant.
  Vec<double, n> exact_flow(const Vec<double, n>& x0, double time) const {
    if (hamiltonian.variant != Variant::quadratic) {
      throw CapabilityError("exact flow is available only for H = x^2 + y^2");
    }
    const double w = -4.0 * (x0[0] * x0[0] + x0[1] * x0[1]) * time;
    return {x0[0] * std::cos(w) - x0[1] * std::sin(w), x0[0] * std::sin(w) + x0[1] * std::cos(w)};
  }
};

struct Jacobi3DModel {
  static constexpr const char* kName = "jacobi3d";
  static constexpr std::size_t n = 3;
  static constexpr std::size_t M = 4;
  static constexpr std::size_t kCasimirs = 2;
  static constexpr bool kContactSlice = false;

  struct Hamiltonian {
    template <class T>
    T operator()(const Vec<T, 3>& x) const {
      return x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    }
  };

  Linear3DStructure structure;
  Hamiltonian hamiltonian;
  ScaledCasimirRealization realization;
  ParamMap params;

  explicit Jacobi3DModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
  }

  bool has_closed_form(int i) const { return i == 3; }
  template <class T>
  T closed_form(int i, const Vec<T, M>& s) const {
    if (i != 3) throw CapabilityError("jacobi3d has a closed form only for S_3");
    const T x1 = s[0] * s[0];
    const T x2 = s[1] * s[1];
    const T x3 = s[2] * s[2];
    return s[3] *
           (3.0 * x3 * x3 - x1 * x1 + 10.0 * x1 * x2 + 10.0 * x1 * x3 + 3.0 * x2 * x2 +
            6.0 * x2 * x3) /
           4.0;
  }

  static std::vector<std::string> coordinates() { return {"x1", "x2", "x3"}; }
  static std::vector<std::string> casimir_names() { return {"t^2*x2", "t^2*x3"}; }
  template <class T>
  std::array<T, 2> casimirs(const Vec<T, M>& s) const {
    const T t2 = s[3] * s[3];
    return {t2 * s[1], t2 * s[2]};
  }
  double e_of_h(const Vec<double, n>& x) const { return 2.0 * x[0]; }
  Vec<double, n> default_x0() const { return {-1.0, 1.0, 1.0}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    return {detail::uniform(rng, -1.5, 1.5), detail::uniform(rng, -1.5, 1.5),
            detail::uniform(rng, -1.5, 1.5), detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "all of R^3 x (R \\ {0})"; }
};

struct Jacobi4DModel : NoClosedForms {
  static constexpr const char* kName = "jacobi4d";
  static constexpr std::size_t n = 4;
  static constexpr std::size_t M = 5;
  static constexpr std::size_t kCasimirs = 1;
  static constexpr bool kContactSlice = false;

  struct Hamiltonian {
    template <class T>
    T operator()(const Vec<T, 4>& x) const {
      using std::cos;
      using std::sin;
      return cos(x[0]) + sin(x[1]) + x[2] + x[3];
    }
  };

  Trig4DStructure structure;
  Hamiltonian hamiltonian;
  FirstOrderRealization<Trig4DStructure> realization;
  ParamMap params;

  explicit Jacobi4DModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
  }

  static std::vector<std::string> coordinates() { return {"x1", "y1", "x2", "y2"}; }
  static std::vector<std::string> casimir_names() { return {"cos(x2)log(t)-e^y2(x1^2-y1^2)/2"}; }
  template <class T>
  std::array<T, 1> casimirs(const Vec<T, M>& s) const {
    using std::cos;
    using std::exp;
    using std::log;
    return {cos(s[2]) * log(s[4]) - 0.5 * exp(s[3]) * (s[0] * s[0] - s[1] * s[1])};
  }
  double e_of_h(const Vec<double, n>& x) const {
    const double ey = std::exp(x[3]);
    return x[0] * ey * std::cos(x[1]) - x[1] * ey * std::sin(x[0]);
  }
  Vec<double, n> default_x0() const { return {1.0, 1.0, std::numbers::pi / 4, -0.2}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    return {detail::uniform(rng, -1.5, 1.5), detail::uniform(rng, -1.5, 1.5),
            detail::uniform(rng, -1.0, 1.0), detail::uniform(rng, -1.0, 0.5),
            detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "Casimir needs t > 0"; }
};

struct LotkaVolterraModel : NoClosedForms {
  static constexpr const char* kName = "lotka_volterra";
  static constexpr std::size_t n = 2;
  static constexpr std::size_t M = 3;
  static constexpr std::size_t kCasimirs = 1;
  static constexpr bool kContactSlice = false;

  struct Hamiltonian {
    double lambda1 = 3.0, lambda2 = 4.0;
    template <class T>
    T operator()(const Vec<T, 2>& x) const {
      using std::log;
      return x[0] - lambda1 * log(x[0]) + x[1] - lambda2 * log(x[1]);
    }
  };

  LotkaVolterraStructure structure;
  Hamiltonian hamiltonian;
  LotkaVolterraRealization realization;
  ParamMap params{{"lambda1", 3.0}, {"lambda2", 4.0}, {"a", 1.0},
                  {"c", 0.0},       {"d", 1.0},       {"f", 1.0}};

  explicit LotkaVolterraModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
    hamiltonian.lambda1 = params.at("lambda1");
    hamiltonian.lambda2 = params.at("lambda2");
    structure.a = params.at("a");
    structure.c = params.at("c");
    structure.d = params.at("d");
    structure.f = params.at("f");
    if (structure.a == 0.0) throw ConfigurationError("lotka_volterra needs a != 0");
    if (structure.c != 0.0 || structure.d != structure.f) {
      throw ConfigurationError("lotka_volterra realization is available only for c = 0, d = f");
    }
    realization.a = structure.a;
    realization.gamma = gamma();
    if (realization.gamma == 0.0) throw ConfigurationError("lotka_volterra needs d + f != 0");
  }

  double beta() const { return (structure.d - structure.f) / structure.a; }
  double gamma() const { return (structure.d + structure.f) / structure.a; }

  static std::vector<std::string> coordinates() { return {"x", "y"}; }
  static std::vector<std::string> casimir_names() { return {"Z"}; }
  template <class T>
  std::array<T, 1> casimirs(const Vec<T, M>& s) const {
    using std::log;
    return {log(s[2]) + (structure.c / structure.a) * (s[0] - s[1]) + beta() * log(s[0]) -
            gamma() * log(s[1])};
  }
  double e_of_h(const Vec<double, n>& x) const {
    const double c = structure.c, d = structure.d, f = structure.f;
    return 2.0 * c * x[0] * x[1] + d * (x[0] + x[1]) + f * (x[0] - x[1]) -
           hamiltonian.lambda1 * (c * x[1] + d + f) - hamiltonian.lambda2 * (c * x[0] + d - f);
  }
  Vec<double, n> default_x0() const { return {4.0, 2.0}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    return {detail::uniform(rng, 1.0, 6.0), detail::uniform(rng, 1.0, 6.0),
            detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "positive orthant x, y, t > 0"; }
};

struct RigidBodyModel : NoClosedForms {
  static constexpr const char* kName = "rigid_body";
  static constexpr std::size_t n = 3;
  static constexpr std::size_t M = 4;
  static constexpr std::size_t kCasimirs = 1;
  static constexpr bool kContactSlice = false;

  struct Hamiltonian {
    std::array<double, 3> inertia{5.0, 10.0, 10.0};
    template <class T>
    T operator()(const Vec<T, 3>& x) const {
      const auto& I = inertia;
      return 0.5 * (I[1] + I[2]) * x[0] * x[0] + 0.5 * (I[0] + I[2]) * x[1] * x[1] +
             0.5 * (I[0] + I[1]) * x[2] * x[2];
    }
  };

  RigidBodyStructure structure;
  Hamiltonian hamiltonian;
  FirstOrderRealization<RigidBodyStructure> realization;
  // inertia_set 1: I = (5, 10, 10); 2: I = (1, pi, 10). Explicit I1..I3 win.
  ParamMap params{{"inertia_set", 1.0}, {"I1", NAN}, {"I2", NAN}, {"I3", NAN},
                  {"a1", 0.2},          {"a2", 0.2}, {"a3", -0.4}, {"d1", 0.1},
                  {"d2", 0.1},          {"d3", 0.1}};

  explicit RigidBodyModel(const ParamMap& overrides = {}) {
    detail::apply_params(params, overrides, kName);
    const double set = params.at("inertia_set");
    std::array<double, 3> inertia;
    if (set == 1.0) {
      inertia = {5.0, 10.0, 10.0};
    } else if (set == 2.0) {
      inertia = {1.0, std::numbers::pi, 10.0};
    } else {
      throw ConfigurationError("rigid_body inertia_set must be 1 or 2");
    }
    const char* keys[] = {"I1", "I2", "I3"};
    for (int i = 0; i < 3; ++i) {
      if (!std::isnan(params.at(keys[i]))) inertia[i] = params.at(keys[i]);
      params[keys[i]] = inertia[i];
    }
    hamiltonian.inertia = inertia;
    structure.a = {params.at("a1"), params.at("a2"), params.at("a3")};
    structure.d = {params.at("d1"), params.at("d2"), params.at("d3")};
    if (std::abs(structure.a[0] + structure.a[1] + structure.a[2]) > 1e-12) {
      throw ConfigurationError("rigid_body needs a1 + a2 + a3 = 0");
    }
    realization.structure = structure;
  }

  static std::vector<std::string> coordinates() { return {"x1", "x2", "x3"}; }
  static std::vector<std::string> casimir_names() { return {"x1^2+x2^2+x3^2"}; }
  template <class T>
  std::array<T, 1> casimirs(const Vec<T, M>& s) const {
    return {s[0] * s[0] + s[1] * s[1] + s[2] * s[2]};
  }
  double e_of_h(const Vec<double, n>& x) const {
    const auto& I = hamiltonian.inertia;
    const auto& a = structure.a;
    const auto& d = structure.d;
    return x[0] * x[1] * x[2] * (a[0] * (I[1] + I[2]) + a[1] * (I[0] + I[2]) + a[2] * (I[0] + I[1])) +
           d[2] * x[0] * x[1] * (I[1] - I[0]) + d[0] * x[0] * x[2] * (I[2] - I[0]) +
           d[1] * x[1] * x[2] * (I[2] - I[1]);
  }
  Vec<double, n> default_x0() const { return {1.0, 1.0, 1.0}; }
  Vec<double, M> sample_state(std::mt19937_64& rng) const {
    return {detail::uniform(rng, -1.5, 1.5), detail::uniform(rng, -1.5, 1.5),
            detail::uniform(rng, -1.5, 1.5), detail::uniform(rng, 0.5, 2.0)};
  }
  std::string domain_note() const { return "all of R^3 x (R \\ {0})"; }
};

}  // namespace jhi
