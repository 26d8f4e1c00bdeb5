#pragma once

// Generating-function coefficients S_1..S_k of the approximate Lagrangian
// bisection:
//   S_1 = Hhat,
//   S_{i+1}(y) = 1/(i+1)! d^i/ds^i|_0 Hhat(alpha(y, sum_{j<=i} s^j grad S_j(y))).
// The s-expansion is carried by Series<T>; every grad S_j is one more Dual
// layer over the same expression. Nesting depth is bounded by kMaxDualDepth.

#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>

#include "jhi/errors.hpp"
#include "jhi/jacobi.hpp"
#include "jhi/jets.hpp"
#include "jhi/linalg.hpp"

namespace jhi {

inline constexpr int kMaxGeneratingOrder = 4;
inline constexpr int kMaxDualDepth = 4;

enum class CoefficientSource { recursion, closed_form, zero };

inline std::string to_string(CoefficientSource s) {
  switch (s) {
    case CoefficientSource::recursion:
      return "recursion";
    case CoefficientSource::closed_form:
      return "closed_form";
    case CoefficientSource::zero:
      return "zero";
  }
  return "unknown";
}

struct GeneratingOptions {
  bool use_closed_forms = true;
  bool detect_zeros = true;
  int zero_samples = 100;
  double zero_tol = 1e-12;
  unsigned seed = 20240611u;
};

template <class Model>
class GeneratingCoefficients {
 public:
  static constexpr std::size_t M = Model::M;

  GeneratingCoefficients(Model model, int order, GeneratingOptions opts = {})
      : model_(std::move(model)), order_(order), opts_(opts) {
    if (order < 1 || order > kMaxGeneratingOrder) {
      throw ConfigurationError("generating order must lie in [1, " +
                               std::to_string(kMaxGeneratingOrder) + "]");
    }
    sources_.fill(CoefficientSource::recursion);
    for (int i = 2; i <= order_; ++i) {
      if (opts_.use_closed_forms && model_.has_closed_form(i)) {
        sources_[i] = CoefficientSource::closed_form;
      } else if (opts_.detect_zeros && vanishes(i)) {
        sources_[i] = CoefficientSource::zero;
      }
    }
  }

  int order() const { return order_; }
  const Model& model() const { return model_; }
  CoefficientSource source(int i) const { return sources_.at(i); }
  bool is_zero(int i) const { return source(i) == CoefficientSource::zero; }

  // Whether a Newton Jacobian by one more dual layer stays within the depth budget.
  bool dual_jacobian_supported() const {
    for (int i = 2; i <= order_; ++i)
      if (sources_[i] == CoefficientSource::recursion && 1 + i > kMaxDualDepth) return false;
    return true;
  }

  template <class T>
  T value(int i, const Vec<T, M>& s) const {
    switch (i) {
      case 1:
        return coefficient<1>(s);
      case 2:
        return coefficient<2>(s);
      case 3:
        return coefficient<3>(s);
      case 4:
        return coefficient<4>(s);
      default:
        throw ConfigurationError("coefficient index out of range");
    }
  }

  template <class T>
  Vec<T, M> gradient(int i, const Vec<T, M>& s) const {
    switch (i) {
      case 1:
        return gradient_of<1>(s);
      case 2:
        return gradient_of<2>(s);
      case 3:
        return gradient_of<3>(s);
      case 4:
        return gradient_of<4>(s);
      default:
        throw ConfigurationError("coefficient index out of range");
    }
  }

  // sum_i ds^i grad S_i(y), skipping coefficients flagged as identically zero.
  template <class T>
  Vec<T, M> combined_covector(double ds, const Vec<T, M>& y) const {
    Vec<T, M> xi = zero_vector<T, M>();
    double w = 1.0;
    for (int i = 1; i <= order_; ++i) {
      w *= ds;
      if (is_zero(i) || w == 0.0) continue;
      const auto g = gradient(i, y);
      for (std::size_t c = 0; c < M; ++c) xi[c] += w * g[c];
    }
    return xi;
  }

  // Largest relative violation over i <= k of
  //   S_i(x, zt) = z S_i(x, t),  d_x S_i(x, zt) = z d_x S_i(x, t),
  //   d_t S_i(x, zt) = d_t S_i(x, t).
  double homogeneity_defect(const Vec<double, M>& s, double z) const {
    const auto sz = homogeneity_action(s, z);
    double defect = 0.0;
    auto rel = [](double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); };
    for (int i = 1; i <= order_; ++i) {
      defect = std::max(defect, rel(value(i, sz), z * value(i, s)));
      const auto g = gradient(i, s);
      const auto gz = gradient(i, sz);
      for (std::size_t c = 0; c + 1 < M; ++c) defect = std::max(defect, rel(gz[c], z * g[c]));
      defect = std::max(defect, rel(gz[M - 1], g[M - 1]));
    }
    return defect;
  }

  template <int I, class T>
  T coefficient(const Vec<T, M>& s) const {
    static_assert(I >= 1 && I <= kMaxGeneratingOrder);
    if constexpr (I == 1) {
      return lifted_hamiltonian(model_.hamiltonian, s);
    } else {
      if (opts_.use_closed_forms && model_.has_closed_form(I)) return model_.closed_form(I, s);
      if constexpr (kDualDepth<T> + I - 1 > kMaxDualDepth) {
        throw CapabilityError("S_" + std::to_string(I) +
                              " exceeds the nested-dual depth budget at this point");
      } else {
        constexpr int K = I - 1;
        using S = Series<T>;
        Vec<S, M> base;
        Vec<S, M> xi;
        for (std::size_t c = 0; c < M; ++c) {
          base[c] = S::constant(K, s[c]);
          xi[c] = S::zero(K);
        }
        fill_covector(s, xi, std::make_integer_sequence<int, K>{});
        const S h = lifted_hamiltonian(model_.hamiltonian, model_.realization.alpha(base, xi));
        return h[K] / static_cast<double>(I);
      }
    }
  }

  template <int I, class T>
  Vec<T, M> gradient_of(const Vec<T, M>& s) const {
    using D = Dual<T, M>;
    const D r = coefficient<I>(seed(s));
    for (const auto& di : r.d) detail::require_finite(primal(di), "generating gradient");
    return r.d;
  }

 private:
  template <class T, int... J>
  void fill_covector(const Vec<T, M>& s, Vec<Series<T>, M>& xi,
                     std::integer_sequence<int, J...>) const {
    (add_term<J + 1>(s, xi), ...);
  }

  template <int J, class T>
  void add_term(const Vec<T, M>& s, Vec<Series<T>, M>& xi) const {
    const auto g = gradient_of<J>(s);
    for (std::size_t c = 0; c < M; ++c) xi[c][J] = g[c];
  }

  bool vanishes(int i) const {
    std::mt19937_64 rng(opts_.seed + static_cast<unsigned>(i));
    for (int k = 0; k < opts_.zero_samples; ++k) {
      const auto s = model_.sample_state(rng);
      const double hh = lifted_hamiltonian(model_.hamiltonian, s);
      if (std::abs(value(i, s)) > opts_.zero_tol * (1.0 + std::abs(hh))) return false;
    }
    return true;
  }

  Model model_;
  int order_;
  GeneratingOptions opts_;
  std::array<CoefficientSource, kMaxGeneratingOrder + 1> sources_{};
};

}  // namespace jhi
