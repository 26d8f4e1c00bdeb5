#pragma once

// Convergence-order studies against a refined reference, and drift series of
// the lifted Hamiltonian and of Casimirs along a trajectory.

#include <cstddef>
#include <functional>
#include <future>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "jhi/errors.hpp"
#include "jhi/integrator.hpp"
#include "jhi/jacobi.hpp"

namespace jhi {

// How pointwise Jacobi-coordinate errors e_i are reduced to one number.
//   span_rms: sqrt(sum |e_i|^2 / (N * span))  (L2-in-time norm over the span, scaled by 1/span)
//   rms:      sqrt(sum |e_i|^2 / N)
//   l2:       sqrt(sum |e_i|^2)
//   max:      max |e_i|
//   final:    |e_last|
enum class ErrorNorm { span_rms, rms, l2, max, final };

ErrorNorm parse_error_norm(const std::string& s);
std::string to_string(ErrorNorm n);

struct ErrorOptions {
  ErrorNorm norm = ErrorNorm::span_rms;
  bool include_t = false;
};

// Compares traj(i) with reference(stride * i).
double trajectory_error(const Trajectory& traj, const Trajectory& reference, std::size_t stride,
                        const ErrorOptions& opts = {});

struct OrderStudyRow {
  double ds = 0.0;
  double error_l2 = 0.0;
  std::optional<double> observed_order;
  bool generalized = false;  // step ratio was not exactly 2
  std::string failure;       // non-empty when the run stopped early; error is NaN
};

// log(e_prev / e) / log(ds_prev / ds) between consecutive rows.
void fill_observed_orders(std::vector<OrderStudyRow>& rows);

struct DriftSeries {
  std::vector<double> times;
  std::vector<double> values;
  double max_abs() const;
};

using StateFunction = std::function<double(const ExtendedState&)>;

// (Hhat(s_0) - Hhat(s_n)) / t_n
DriftSeries hamiltonian_drift(const Trajectory& traj, const StateFunction& lifted_hamiltonian);

// C(s_n) - C(s_0)
DriftSeries casimir_drift(const Trajectory& traj, const StateFunction& casimir);

template <class Model>
DriftSeries hamiltonian_drift(const Trajectory& traj, const Model& model) {
  const StateFunction f = [&](const ExtendedState& s) {
    return lifted_hamiltonian(model.hamiltonian, s.packed<Model::M>());
  };
  return hamiltonian_drift(traj, f);
}

template <class Model>
DriftSeries casimir_drift(const Trajectory& traj, const Model& model, std::size_t index) {
  if (index >= Model::kCasimirs) throw ConfigurationError("casimir index out of range");
  const StateFunction f = [&](const ExtendedState& s) {
    return model.casimirs(s.packed<Model::M>())[index];
  };
  return casimir_drift(traj, f);
}

// Runs the method on each grid (given as step counts) and compares with the
// reference, whose step count must be a multiple of every grid's.
template <class Model>
std::vector<OrderStudyRow> estimate_order(const Model& model, const MethodSpec& method,
                                          double t_a, double t_b,
                                          const std::vector<std::size_t>& grids,
                                          const Trajectory& reference,
                                          const Vec<double, Model::M>& s0,
                                          const ErrorOptions& opts = {}, StepConfig cfg = {}) {
  const std::size_t ref_steps = reference.size() - 1;
  for (std::size_t n : grids) {
    if (n == 0 || ref_steps % n != 0) {
      throw ConfigurationError("reference grid of " + std::to_string(ref_steps) +
                               " steps does not refine a grid of " + std::to_string(n));
    }
  }
  auto run_row = [&](std::size_t n) {
    OrderStudyRow row;
    row.ds = (t_b - t_a) / static_cast<double>(n);
    try {
      const Trajectory traj = integrate(model, method, t_a, t_b, row.ds, s0, cfg);
      row.error_l2 = trajectory_error(traj, reference, ref_steps / n, opts);
    } catch (const IntegrationError& e) {
      row.error_l2 = std::numeric_limits<double>::quiet_NaN();
      row.failure = e.what();
    }
    return row;
  };
  // rows are independent; fan out when there is more than one core
  std::vector<OrderStudyRow> rows;
  rows.reserve(grids.size());
  if (std::thread::hardware_concurrency() > 1 && grids.size() > 1) {
    std::vector<std::future<OrderStudyRow>> pending;
    for (std::size_t n : grids) pending.push_back(std::async(std::launch::async, run_row, n));
    for (auto& f : pending) rows.push_back(f.get());
  } else {
    for (std::size_t n : grids) rows.push_back(run_row(n));
  }
  fill_observed_orders(rows);
  return rows;
}

}  // namespace jhi
