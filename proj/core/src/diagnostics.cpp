#include "jhi/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace jhi {

ErrorNorm parse_error_norm(const std::string& s) {
  if (s == "span_rms") return ErrorNorm::span_rms;
  if (s == "rms") return ErrorNorm::rms;
  if (s == "l2") return ErrorNorm::l2;
  if (s == "max") return ErrorNorm::max;
  if (s == "final") return ErrorNorm::final;
  throw ConfigurationError("unknown error norm '" + s + "' (span_rms, rms, l2, max, final)");
}

std::string to_string(ErrorNorm n) {
  switch (n) {
    case ErrorNorm::span_rms:
      return "span_rms";
    case ErrorNorm::rms:
      return "rms";
    case ErrorNorm::l2:
      return "l2";
    case ErrorNorm::max:
      return "max";
    case ErrorNorm::final:
      return "final";
  }
  return "unknown";
}

double trajectory_error(const Trajectory& traj, const Trajectory& reference, std::size_t stride,
                        const ErrorOptions& opts) {
  if (traj.size() == 0) throw ConfigurationError("empty trajectory");
  if (stride == 0 || (traj.size() - 1) * stride != reference.size() - 1) {
    throw ConfigurationError("trajectory and reference grids do not match for stride " +
                             std::to_string(stride));
  }
  double sum = 0.0;
  double worst = 0.0;
  double last = 0.0;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& a = traj.states[i];
    const auto& b = reference.states[i * stride];
    if (a.x.size() != b.x.size()) throw ConfigurationError("state dimensions differ");
    if (std::abs(traj.times[i] - reference.times[i * stride]) >
        1e-9 * std::max(1.0, std::abs(reference.times[i * stride]))) {
      throw ConfigurationError("trajectory and reference times are not aligned");
    }
    double e2 = 0.0;
    for (std::size_t j = 0; j < a.x.size(); ++j) e2 += (a.x[j] - b.x[j]) * (a.x[j] - b.x[j]);
    if (opts.include_t) e2 += (a.t - b.t) * (a.t - b.t);
    sum += e2;
    worst = std::max(worst, std::sqrt(e2));
    last = std::sqrt(e2);
  }
  const double count = static_cast<double>(traj.size());
  switch (opts.norm) {
    case ErrorNorm::span_rms: {
      double span = reference.times.back() - reference.times.front();
      if (span <= 0.0) span = 1.0;
      return std::sqrt(sum / (count * span));
    }
    case ErrorNorm::rms:
      return std::sqrt(sum / count);
    case ErrorNorm::l2:
      return std::sqrt(sum);
    case ErrorNorm::max:
      return worst;
    case ErrorNorm::final:
      return last;
  }
  return std::sqrt(sum);
}

void fill_observed_orders(std::vector<OrderStudyRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].observed_order.reset();
    rows[i].generalized = false;
    if (i == 0) continue;
    const auto& prev = rows[i - 1];
    auto& cur = rows[i];
    if (!(prev.error_l2 > 0.0) || !(cur.error_l2 > 0.0) || prev.ds == cur.ds) continue;
    const double ratio = prev.ds / cur.ds;
    cur.observed_order = std::log(prev.error_l2 / cur.error_l2) / std::log(ratio);
    cur.generalized = std::abs(ratio - 2.0) > 1e-9;
  }
}

double DriftSeries::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

DriftSeries hamiltonian_drift(const Trajectory& traj, const StateFunction& lifted_hamiltonian) {
  if (traj.size() == 0) throw ConfigurationError("empty trajectory");
  DriftSeries d;
  const double h0 = lifted_hamiltonian(traj.states.front());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const auto& s = traj.states[i];
    if (s.t == 0.0) throw SingularScaleError("drift sample with t = 0");
    d.times.push_back(traj.times[i]);
    d.values.push_back(i == 0 ? 0.0 : (h0 - lifted_hamiltonian(s)) / s.t);
  }
  return d;
}

DriftSeries casimir_drift(const Trajectory& traj, const StateFunction& casimir) {
  if (traj.size() == 0) throw ConfigurationError("empty trajectory");
  DriftSeries d;
  const double c0 = casimir(traj.states.front());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    d.times.push_back(traj.times[i]);
    d.values.push_back(i == 0 ? 0.0 : casimir(traj.states[i]) - c0);
  }
  return d;
}

}  // namespace jhi
