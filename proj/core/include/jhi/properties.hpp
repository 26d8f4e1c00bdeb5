#pragma once

// Randomized self-checks of the geometric identities a model must satisfy.
// Each check draws `cases` random states from the model's sampler and reports
// how many violate the identity beyond a relative tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>

#include "jhi/generating.hpp"
#include "jhi/integrator.hpp"
#include "jhi/jacobi.hpp"
#include "jhi/jets.hpp"
#include "jhi/linalg.hpp"

namespace jhi {

struct PropertyResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;  // largest relative residual seen
  double tol = 0.0;

  bool passed() const { return cases > 0 && failures == 0; }

  void record(double residual) {
    ++cases;
    if (!(residual <= tol)) ++failures;  // NaN counts as a failure
    if (std::isnan(residual) || residual > worst) worst = residual;
  }
};

namespace detail {

template <std::size_t M>
double rel_diff(const Vec<double, M>& a, const Vec<double, M>& b) {
  return norm_inf(sub(a, b)) / (1.0 + norm_inf(b));
}

// Covector small enough to stay inside every realization domain.
template <class Model>
Vec<double, Model::M> random_covector(const Model& model, const Vec<double, Model::M>& s,
                                      std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  for (int attempt = 0; attempt < 64; ++attempt) {
    Vec<double, Model::M> xi;
    for (auto& v : xi) v = u(rng);
    if (model.realization.domain_ok(s, xi) && model.realization.domain_ok(s, negated(xi))) return xi;
    scale *= 0.5;
    u = std::uniform_real_distribution<double>(-scale, scale);
  }
  return zero_vector<double, Model::M>();
}

}  // namespace detail

// alpha(s, 0) = beta(s, 0) = s and beta(s, xi) = alpha(s, -xi).
template <class Model>
PropertyResult check_unit_and_reflection(const Model& model, std::size_t cases, unsigned seed,
                                         double tol = 1e-12) {
  PropertyResult r{"unit_and_reflection", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  const auto zero = zero_vector<double, Model::M>();
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = model.sample_state(rng);
    const auto xi = detail::random_covector(model, s, rng, 0.1);
    double res = detail::rel_diff(model.realization.alpha(s, zero), s);
    res = std::max(res, detail::rel_diff(model.realization.beta(s, zero), s));
    res = std::max(res, detail::rel_diff(model.realization.beta(s, xi),
                                         model.realization.alpha(s, negated(xi))));
    r.record(res);
  }
  return r;
}

// alpha(h_z s, T*h_z xi) = h_z alpha(s, xi), same for beta.
template <class Model>
PropertyResult check_realization_homogeneity(const Model& model, std::size_t cases, unsigned seed,
                                             double tol = 1e-10) {
  PropertyResult r{"realization_homogeneity", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> zdist(0.5, 2.0);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = model.sample_state(rng);
    const auto xi = detail::random_covector(model, s, rng, 0.1);
    const double z = zdist(rng);
    const auto [sz, xiz] = cotangent_homogeneity(s, xi, z);
    const double a = detail::rel_diff(model.realization.alpha(sz, xiz),
                                      homogeneity_action(model.realization.alpha(s, xi), z));
    const double b = detail::rel_diff(model.realization.beta(sz, xiz),
                                      homogeneity_action(model.realization.beta(s, xi), z));
    r.record(std::max(a, b));
  }
  return r;
}

// d/de alpha(s, e xi) at e = 0 equals -Pi(s) xi / 2 (alpha is a Poisson map
// to first order; beta gets the opposite sign by reflection).
template <class Model>
PropertyResult check_realization_linearization(const Model& model, std::size_t cases,
                                               unsigned seed, double tol = 1e-10) {
  PropertyResult r{"realization_linearization", 0, 0, 0.0, tol};
  constexpr std::size_t M = Model::M;
  using D = Dual<double, 1>;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = model.sample_state(rng);
    const auto xi = detail::random_covector(model, s, rng, 1.0);
    Vec<D, M> sd;
    Vec<D, M> xid;
    for (std::size_t i = 0; i < M; ++i) {
      sd[i] = D(s[i]);
      xid[i] = D(0.0);
      xid[i].d[0] = xi[i];
    }
    const auto a = model.realization.alpha(sd, xid);
    const auto expect = scaled(-0.5, mat_vec(poisson_matrix(model.structure, s), xi));
    Vec<double, M> got;
    for (std::size_t i = 0; i < M; ++i) got[i] = a[i].d[0];
    r.record(detail::rel_diff(got, expect));
  }
  return r;
}

// S_i(x, z t) = z S_i(x, t) with the matching gradient scalings, i <= order.
template <class Model>
PropertyResult check_generating_homogeneity(const GeneratingCoefficients<Model>& coeffs,
                                            std::size_t cases, unsigned seed, double tol = 1e-9) {
  PropertyResult r{"generating_homogeneity", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> zdist(0.5, 2.0);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = coeffs.model().sample_state(rng);
    r.record(coeffs.homogeneity_defect(s, zdist(rng)));
  }
  return r;
}

// Pi dHhat matches X_H + t E(H) d_t, and dHhat . Pi dHhat = 0.
template <class Model>
PropertyResult check_lifted_field_identity(const Model& model, std::size_t cases, unsigned seed,
                                           double tol = 1e-12) {
  PropertyResult r{"lifted_field_identity", 0, 0, 0.0, tol};
  constexpr std::size_t M = Model::M;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = model.sample_state(rng);
    const auto [h, dh] = evaluate_with_gradient<M>(
        [&](const auto& v) { return lifted_hamiltonian(model.hamiltonian, v); }, s);
    const auto pidh = mat_vec(poisson_matrix(model.structure, s), dh);
    const auto field = lifted_vector_field(model.structure, model.hamiltonian, s);
    double dot = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
      dot += dh[i] * pidh[i];
      scale += std::abs(dh[i] * pidh[i]);
    }
    r.record(std::max(std::abs(dot) / (1.0 + scale), detail::rel_diff(pidh, field)));
  }
  return r;
}

// One JHI step forward then one with -ds lands back on the start. Holds
// exactly when only odd S_i contribute, which is the case for every model here.
template <class Model>
PropertyResult check_step_reversal(const GeneratingCoefficients<Model>& coeffs, double ds,
                                   std::size_t cases, unsigned seed, double tol = 1e-9) {
  PropertyResult r{"step_reversal", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  StepConfig cfg;
  cfg.ds = ds;
  cfg.order = coeffs.order();
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = coeffs.model().sample_state(rng);
    try {
      const auto fwd = jhi_step(coeffs, cfg, ds, s);
      const auto back = jhi_step(coeffs, cfg, -ds, fwd);
      r.record(detail::rel_diff(back, s));
    } catch (const NumericalError&) {
      r.record(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return r;
}

// step(h_z s) = h_z step(s): the discrete map commutes with rescaling t.
template <class Model>
PropertyResult check_step_homogeneity(const GeneratingCoefficients<Model>& coeffs, double ds,
                                      std::size_t cases, unsigned seed, double tol = 1e-9) {
  PropertyResult r{"step_homogeneity", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> zdist(0.5, 2.0);
  StepConfig cfg;
  cfg.ds = ds;
  cfg.order = coeffs.order();
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = coeffs.model().sample_state(rng);
    const double z = zdist(rng);
    try {
      const auto a = jhi_step(coeffs, cfg, ds, homogeneity_action(s, z));
      const auto b = homogeneity_action(jhi_step(coeffs, cfg, ds, s), z);
      r.record(detail::rel_diff(a, b));
    } catch (const NumericalError&) {
      r.record(std::numeric_limits<double>::quiet_NaN());
    }
  }
  return r;
}

// Jacobi identities of the structure at `cases` sampled points.
template <class Model>
PropertyResult check_jacobi_structure(const Model& model, std::size_t cases, unsigned seed,
                                      double tol = 1e-10) {
  PropertyResult r{"jacobi_conditions", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto x = jacobi_part(model.sample_state(rng));
    r.record(verify_jacobi_conditions(model.structure, {x}, tol).max_residual());
  }
  return r;
}

// dC . Pi = 0 for every listed Casimir.
template <class Model>
PropertyResult check_casimirs(const Model& model, std::size_t cases, unsigned seed,
                              double tol = 1e-9) {
  PropertyResult r{"casimir_kernel", 0, 0, 0.0, tol};
  constexpr std::size_t M = Model::M;
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto s = model.sample_state(rng);
    const auto pi = poisson_matrix(model.structure, s);
    double res = 0.0;
    for (std::size_t c = 0; c < Model::kCasimirs; ++c) {
      const auto [v, dc] =
          evaluate_with_gradient<M>([&](const auto& u) { return model.casimirs(u)[c]; }, s);
      const auto row = mat_vec(transpose(pi), dc);
      res = std::max(res, norm_inf(row) / (1.0 + norm_inf(dc)));
    }
    r.record(res);
  }
  return r;
}

// Closed-form E(H) against sum_i E^i d_i H.
template <class Model>
PropertyResult check_dissipation_rate(const Model& model, std::size_t cases, unsigned seed,
                                      double tol = 1e-9) {
  PropertyResult r{"dissipation_rate", 0, 0, 0.0, tol};
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < cases; ++k) {
    const auto x = jacobi_part(model.sample_state(rng));
    const double expect = reeb_derivative(model.structure, model.hamiltonian, x);
    r.record(std::abs(model.e_of_h(x) - expect) / (1.0 + std::abs(expect)));
  }
  return r;
}

}  // namespace jhi
