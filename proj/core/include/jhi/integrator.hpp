#pragma once

// One-step maps: the JHI step (implicit solve for y_n, then beta), plus
// explicit RK2/RK4 on the lifted field and a semi-implicit symplectic Euler on
// the contact slice. integrate() drives any of them over a span.

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "jhi/errors.hpp"
#include "jhi/generating.hpp"
#include "jhi/jacobi.hpp"
#include "jhi/jets.hpp"
#include "jhi/linalg.hpp"

namespace jhi {

enum class JacobianMode { dual, finite_difference };

enum class Method { jhi, rk2, rk2_heun, rk4, symplectic_euler };

struct MethodSpec {
  Method method = Method::jhi;
  int order = 1;  // JHI only

  std::string label() const {
    switch (method) {
      case Method::jhi:
        return "jhi" + std::to_string(order);
      case Method::rk2:
        return "rk2";
      case Method::rk2_heun:
        return "rk2_heun";
      case Method::rk4:
        return "rk4";
      case Method::symplectic_euler:
        return "symplectic_euler";
    }
    return "unknown";
  }

  static MethodSpec parse(const std::string& s) {
    if (s.size() == 4 && s.rfind("jhi", 0) == 0 && s[3] >= '1' && s[3] <= '4') {
      return {Method::jhi, s[3] - '0'};
    }
    if (s == "rk2") return {Method::rk2, 0};
    if (s == "rk2_heun") return {Method::rk2_heun, 0};
    if (s == "rk4") return {Method::rk4, 0};
    if (s == "symplectic_euler") return {Method::symplectic_euler, 0};
    throw ConfigurationError("unknown method '" + s +
                             "' (expected jhi1..jhi4, rk2, rk2_heun, rk4, symplectic_euler)");
  }
};

struct StepConfig {
  double ds = 0.1;
  int order = 1;
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  JacobianMode jacobian_mode = JacobianMode::dual;

  void validate() const {
    if (!(ds > 0.0) || !std::isfinite(ds)) throw ConfigurationError("step size must be > 0");
    if (order < 1 || order > kMaxGeneratingOrder) {
      throw ConfigurationError("method order must lie in [1, 4]");
    }
    if (!(newton_tol > 0.0)) throw ConfigurationError("newton_tol must be > 0");
    if (newton_max_iter < 1) throw ConfigurationError("newton_max_iter must be >= 1");
  }
};

struct StepDiagnostics {
  int newton_iterations = 0;
  double residual = 0.0;
  bool partial_step = false;
  bool finite_difference_jacobian = false;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<ExtendedState> states;
  std::string method_label;
  std::vector<StepDiagnostics> diagnostics;  // one per step, states.size() - 1 entries

  std::size_t size() const { return states.size(); }
};

// A run stopped early; the trajectory up to the last good state rides along.
class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, Trajectory partial, std::size_t failure_index)
      : NumericalError(what), partial_(std::move(partial)), failure_index_(failure_index) {}
  const Trajectory& partial() const { return partial_; }
  std::size_t failure_index() const { return failure_index_; }

 private:
  Trajectory partial_;
  std::size_t failure_index_;
};

template <std::size_t M>
struct SolveResult {
  Vec<double, M> y;
  int iterations = 0;
  double residual = 0.0;
  bool finite_difference_jacobian = false;
};

namespace detail {

template <std::size_t M>
void require_finite_state(const Vec<double, M>& s, const char* where) {
  for (double v : s) require_finite(v, where);
  if (s[M - 1] == 0.0) throw SingularScaleError(std::string(where) + ": t reached 0");
}

template <class Model>
void require_domain(const Model& model, const Vec<double, Model::M>& y,
                    const Vec<double, Model::M>& xi) {
  if (!model.realization.domain_ok(y, xi)) {
    throw DomainError("step leaves the bi-realization domain; reduce the step size");
  }
}

}  // namespace detail

// Find y with alpha(y, sum ds^i grad S_i(y)) = target by Newton from y = target.
template <class Model>
SolveResult<Model::M> solve_implicit(const GeneratingCoefficients<Model>& coeffs,
                                     const StepConfig& cfg, double ds,
                                     const Vec<double, Model::M>& target) {
  constexpr std::size_t M = Model::M;
  const Model& model = coeffs.model();
  const bool use_dual =
      cfg.jacobian_mode == JacobianMode::dual && coeffs.dual_jacobian_supported();

  auto residual_double = [&](const Vec<double, M>& y) {
    const auto xi = coeffs.combined_covector(ds, y);
    detail::require_domain(model, y, xi);
    return sub(model.realization.alpha(y, xi), target);
  };

  const double tol = cfg.newton_tol * (1.0 + norm_inf(target));
  SolveResult<M> res;
  res.y = target;
  res.finite_difference_jacobian = !use_dual;
  // Once within tol, one more Newton update is nearly free and brings the
  // residual to rounding level; it is kept only if it does not make things worse.
  std::optional<SolveResult<M>> accepted;
  for (int it = 0;; ++it) {
    try {
      Vec<double, M> f;
      Mat<double, M> jac;
      if (use_dual) {
        const auto yd = seed(res.y);
        const auto xid = coeffs.combined_covector(ds, yd);
        Vec<double, M> xi;
        for (std::size_t c = 0; c < M; ++c) xi[c] = xid[c].v;
        detail::require_domain(model, res.y, xi);
        const auto a = model.realization.alpha(yd, xid);
        for (std::size_t i = 0; i < M; ++i) {
          f[i] = a[i].v - target[i];
          jac[i] = a[i].d;
        }
      } else {
        f = residual_double(res.y);
      }
      for (double v : f) detail::require_finite(v, "implicit residual");
      res.residual = norm_inf(f);
      res.iterations = it;
      if (accepted) return res.residual <= accepted->residual ? res : *accepted;
      if (res.residual <= tol) {
        if (res.residual == 0.0) return res;
        accepted = res;
      } else if (it >= cfg.newton_max_iter) {
        throw NonConvergenceError("Newton iteration did not converge in " +
                                      std::to_string(cfg.newton_max_iter) + " iterations (residual " +
                                      std::to_string(res.residual) + ")",
                                  res.residual);
      }
      if (!use_dual) {
        const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
        for (std::size_t j = 0; j < M; ++j) {
          const double h = h0 * std::max(1.0, std::abs(res.y[j]));
          auto yp = res.y;
          auto ym = res.y;
          yp[j] += h;
          ym[j] -= h;
          const auto fp = residual_double(yp);
          const auto fm = residual_double(ym);
          for (std::size_t i = 0; i < M; ++i) jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
      }
      const auto delta = solve(jac, negated(f));
      if (!delta) throw DegenerateStepError("singular Newton matrix in the implicit step");
      res.y = add(res.y, *delta);
    } catch (const NumericalError&) {
      if (accepted) return *accepted;
      throw;
    }
  }
}

// x_{n+1} = beta(y_n, sum ds^i grad S_i(y_n)) with y_n from solve_implicit.
template <class Model>
Vec<double, Model::M> jhi_step(const GeneratingCoefficients<Model>& coeffs, const StepConfig& cfg,
                               double ds, const Vec<double, Model::M>& s_n,
                               StepDiagnostics* diag = nullptr) {
  const Model& model = coeffs.model();
  const auto sol = solve_implicit(coeffs, cfg, ds, s_n);
  const auto xi = coeffs.combined_covector(ds, sol.y);
  detail::require_domain(model, sol.y, negated(xi));
  const auto next = model.realization.beta(sol.y, xi);
  detail::require_finite_state(next, "JHI step");
  if (diag) {
    diag->newton_iterations = sol.iterations;
    diag->residual = sol.residual;
    diag->finite_difference_jacobian = sol.finite_difference_jacobian;
  }
  return next;
}

template <class Model>
Vec<double, Model::M> lifted_field(const Model& model, const Vec<double, Model::M>& s) {
  return lifted_vector_field(model.structure, model.hamiltonian, s);
}

// Explicit midpoint (default) or Heun.
template <class Model>
Vec<double, Model::M> rk2_step(const Model& model, double ds, const Vec<double, Model::M>& s,
                               bool heun = false) {
  const auto k1 = lifted_field(model, s);
  Vec<double, Model::M> next;
  if (heun) {
    const auto k2 = lifted_field(model, add(s, scaled(ds, k1)));
    next = add(s, scaled(0.5 * ds, add(k1, k2)));
  } else {
    const auto k2 = lifted_field(model, add(s, scaled(0.5 * ds, k1)));
    next = add(s, scaled(ds, k2));
  }
  detail::require_finite_state(next, "RK2 step");
  return next;
}

template <class Model>
Vec<double, Model::M> rk4_step(const Model& model, double ds, const Vec<double, Model::M>& s) {
  const auto k1 = lifted_field(model, s);
  const auto k2 = lifted_field(model, add(s, scaled(0.5 * ds, k1)));
  const auto k3 = lifted_field(model, add(s, scaled(0.5 * ds, k2)));
  const auto k4 = lifted_field(model, add(s, scaled(ds, k3)));
  auto next = s;
  for (std::size_t i = 0; i < Model::M; ++i)
    next[i] += ds / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  detail::require_finite_state(next, "RK4 step");
  return next;
}

// Contact slice (q, p, z): p implicit, then q with the new p, then z; the
// scale t takes an explicit Euler step of t E(H).
template <class Model>
Vec<double, Model::M> symplectic_euler_step(const Model& model, double ds,
                                            const Vec<double, Model::M>& s) {
  if constexpr (!Model::kContactSlice) {
    throw CapabilityError("symplectic Euler is defined only on the contact slice");
  } else {
    const auto& h = model.hamiltonian;
    auto grad = [&](double q, double p, double z) {
      return evaluate_with_gradient<3>(h, Vec<double, 3>{q, p, z});
    };
    const double q = s[0], p = s[1], z = s[2], t = s[3];
    auto g = [&](double P) {
      const auto [hv, dh] = grad(q, P, z);
      return P - p - ds * (dh[0] + P * dh[2]);
    };
    double P = p;
    for (int it = 0; it < 50; ++it) {
      const double gv = g(P);
      if (std::abs(gv) <= 1e-15 * (1.0 + std::abs(P))) break;
      const double hstep = 1e-7 * std::max(1.0, std::abs(P));
      const double dg = (g(P + hstep) - g(P - hstep)) / (2.0 * hstep);
      if (dg == 0.0) throw DegenerateStepError("symplectic Euler: zero derivative in p solve");
      P -= gv / dg;
      if (it == 49) throw NonConvergenceError("symplectic Euler p solve did not converge", gv);
    }
    const double qn = q - ds * grad(q, P, z).second[1];
    const auto [hn, dhn] = grad(qn, P, z);
    const double zn = z + ds * (hn - P * dhn[1]);
    const double tn = t + ds * t * reeb_derivative(model.structure, h, Vec<double, 3>{q, p, z});
    Vec<double, Model::M> next{qn, P, zn, tn};
    detail::require_finite_state(next, "symplectic Euler step");
    return next;
  }
}

struct TimeGrid {
  std::vector<double> times;
  bool partial_last = false;
};

// Uniform grid t_a + i ds, with a shortened final step when ds does not divide
// the span.
inline TimeGrid make_time_grid(double t_a, double t_b, double ds) {
  if (!(ds > 0.0)) throw ConfigurationError("step size must be > 0");
  if (!(t_b >= t_a)) throw ConfigurationError("span end must not precede span start");
  const double span = t_b - t_a;
  const double ratio = span / ds;
  const double nearest = std::round(ratio);
  std::size_t n_full;
  bool partial = false;
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) {
    n_full = static_cast<std::size_t>(nearest);
  } else {
    n_full = static_cast<std::size_t>(std::floor(ratio));
    partial = true;
  }
  TimeGrid g;
  g.times.reserve(n_full + 2);
  for (std::size_t i = 0; i <= n_full; ++i) g.times.push_back(t_a + static_cast<double>(i) * ds);
  if (partial) {
    g.times.push_back(t_b);
  } else if (n_full > 0) {
    g.times.back() = t_b;
  }
  g.partial_last = partial;
  return g;
}

template <class Model>
Trajectory integrate(const Model& model, const MethodSpec& method, double t_a, double t_b,
                     double ds, const Vec<double, Model::M>& s0, StepConfig cfg = {}) {
  cfg.ds = ds;
  if (method.method == Method::jhi) cfg.order = method.order;
  cfg.validate();
  if (s0[Model::M - 1] == 0.0) throw SingularScaleError("initial state has t = 0");
  const TimeGrid grid = make_time_grid(t_a, t_b, ds);

  std::optional<GeneratingCoefficients<Model>> coeffs;
  if (method.method == Method::jhi) coeffs.emplace(model, method.order);

  Trajectory traj;
  traj.method_label = method.label();
  traj.times.push_back(grid.times.front());
  traj.states.push_back(ExtendedState::unpacked(s0));
  Vec<double, Model::M> s = s0;
  for (std::size_t i = 1; i < grid.times.size(); ++i) {
    const double h = grid.times[i] - grid.times[i - 1];
    StepDiagnostics diag;
    diag.partial_step = grid.partial_last && i + 1 == grid.times.size();
    try {
      switch (method.method) {
        case Method::jhi:
          s = jhi_step(*coeffs, cfg, h, s, &diag);
          break;
        case Method::rk2:
          s = rk2_step(model, h, s);
          break;
        case Method::rk2_heun:
          s = rk2_step(model, h, s, true);
          break;
        case Method::rk4:
          s = rk4_step(model, h, s);
          break;
        case Method::symplectic_euler:
          s = symplectic_euler_step(model, h, s);
          break;
      }
    } catch (const CapabilityError&) {
      throw;
    } catch (const NumericalError& e) {
      throw IntegrationError(std::string("step ") + std::to_string(i) + " failed: " + e.what(),
                             std::move(traj), i);
    }
    traj.times.push_back(grid.times[i]);
    traj.states.push_back(ExtendedState::unpacked(s));
    traj.diagnostics.push_back(diag);
  }
  return traj;
}

// RK4 on the lifted field with n_points equally spaced grid points.
template <class Model>
Trajectory reference_solution(const Model& model, double t_a, double t_b, std::size_t n_points,
                              const Vec<double, Model::M>& s0) {
  if (n_points < 2) throw ConfigurationError("reference solution needs at least 2 grid points");
  const double h = (t_b - t_a) / static_cast<double>(n_points - 1);
  Trajectory traj;
  traj.method_label = "reference_rk4";
  traj.times.reserve(n_points);
  traj.states.reserve(n_points);
  traj.times.push_back(t_a);
  traj.states.push_back(ExtendedState::unpacked(s0));
  Vec<double, Model::M> s = s0;
  for (std::size_t i = 1; i < n_points; ++i) {
    s = rk4_step(model, h, s);
    traj.times.push_back(i + 1 == n_points ? t_b : t_a + static_cast<double>(i) * h);
    traj.states.push_back(ExtendedState::unpacked(s));
    traj.diagnostics.push_back({});
  }
  return traj;
}

}  // namespace jhi
