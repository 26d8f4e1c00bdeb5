#pragma once

// Runtime view of the model catalog. The compile-time models in models.hpp
// are wrapped behind ModelHandle so tools can pick one by name.

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "jhi/diagnostics.hpp"
#include "jhi/integrator.hpp"
#include "jhi/jacobi.hpp"
#include "jhi/models.hpp"

namespace jhi {

struct ModelInfo {
  std::string name;
  std::size_t dim = 0;
  ParamMap params;
  RealizationKind realization = RealizationKind::exact;
  std::vector<std::string> coordinates;
  std::vector<std::string> casimir_names;
  std::vector<std::string> variants;  // Hamiltonian variants, empty if only one
  std::vector<double> default_x0;
  double default_t0 = 1.0;
  std::string domain_note;
  bool has_exact_flow = false;
};

class ModelHandle {
 public:
  virtual ~ModelHandle() = default;

  virtual const ModelInfo& info() const = 0;

  virtual Trajectory integrate(const MethodSpec& method, double t_a, double t_b, double ds,
                               const ExtendedState& s0, const StepConfig& cfg = {}) const = 0;
  virtual Trajectory reference(double t_a, double t_b, std::size_t n_points,
                               const ExtendedState& s0) const = 0;
  virtual std::vector<OrderStudyRow> order_study(const MethodSpec& method, double t_a,
                                                 double t_b,
                                                 const std::vector<std::size_t>& grids,
                                                 const Trajectory& reference,
                                                 const ExtendedState& s0,
                                                 const ErrorOptions& opts = {},
                                                 const StepConfig& cfg = {}) const = 0;

  virtual double lifted_hamiltonian(const ExtendedState& s) const = 0;
  virtual std::vector<double> casimirs(const ExtendedState& s) const = 0;
  virtual double e_of_h(const std::vector<double>& x) const = 0;
  virtual DriftSeries hamiltonian_drift(const Trajectory& traj) const = 0;
  virtual DriftSeries casimir_drift(const Trajectory& traj, std::size_t index) const = 0;

  // Jacobi identities at `points` random domain points.
  virtual JacobiReport verify_jacobi(std::size_t points, double tol, unsigned seed) const = 0;

  // Throws CapabilityError unless info().has_exact_flow.
  virtual std::vector<double> exact_flow(const std::vector<double>& x0, double time) const = 0;

  // Default initial state (x0, t0) with optional replacements.
  ExtendedState initial_state(const std::vector<double>& x0 = {}, double t0 = 1.0) const;
};

std::vector<std::string> model_names();

// Throws ConfigurationError on an unknown name or parameter.
std::unique_ptr<ModelHandle> build_model(const std::string& name, const ParamMap& overrides = {});

}  // namespace jhi
