#include "jhi/catalog.hpp"

#include <random>
#include <type_traits>

namespace jhi {

namespace {

template <class Model, class = void>
struct HasExactFlow : std::false_type {};
template <class Model>
struct HasExactFlow<Model, std::void_t<decltype(std::declval<const Model&>().exact_flow(
                               std::declval<const Vec<double, Model::n>&>(), 0.0))>>
    : std::true_type {};

template <class Model, class = void>
struct HasVariants : std::false_type {};
template <class Model>
struct HasVariants<Model, std::void_t<decltype(Model::variants())>> : std::true_type {};

template <class Model>
Vec<double, Model::n> to_vec(const std::vector<double>& x) {
  if (x.size() != Model::n) {
    throw ConfigurationError(std::string(Model::kName) + " expects " + std::to_string(Model::n) +
                             " coordinates, got " + std::to_string(x.size()));
  }
  Vec<double, Model::n> v{};
  std::copy(x.begin(), x.end(), v.begin());
  return v;
}

template <class Model>
class Adapter final : public ModelHandle {
 public:
  static constexpr std::size_t M = Model::M;

  explicit Adapter(Model m) : model_(std::move(m)) {
    info_.name = Model::kName;
    info_.dim = Model::n;
    info_.params = model_.params;
    info_.realization = decltype(model_.realization)::kind;
    info_.coordinates = Model::coordinates();
    info_.casimir_names = Model::casimir_names();
    if constexpr (HasVariants<Model>::value) info_.variants = Model::variants();
    const auto x0 = model_.default_x0();
    info_.default_x0.assign(x0.begin(), x0.end());
    info_.domain_note = model_.domain_note();
    if constexpr (HasExactFlow<Model>::value) {
      // jacobi2d only has it for the quadratic variant
      try {
        model_.exact_flow(x0, 0.0);
        info_.has_exact_flow = true;
      } catch (const CapabilityError&) {
      }
    }
  }

  const ModelInfo& info() const override { return info_; }

  Trajectory integrate(const MethodSpec& method, double t_a, double t_b, double ds,
                       const ExtendedState& s0, const StepConfig& cfg) const override {
    return jhi::integrate(model_, method, t_a, t_b, ds, s0.packed<M>(), cfg);
  }

  Trajectory reference(double t_a, double t_b, std::size_t n_points,
                       const ExtendedState& s0) const override {
    return reference_solution(model_, t_a, t_b, n_points, s0.packed<M>());
  }

  std::vector<OrderStudyRow> order_study(const MethodSpec& method, double t_a, double t_b,
                                         const std::vector<std::size_t>& grids,
                                         const Trajectory& ref, const ExtendedState& s0,
                                         const ErrorOptions& opts,
                                         const StepConfig& cfg) const override {
    return estimate_order(model_, method, t_a, t_b, grids, ref, s0.packed<M>(), opts, cfg);
  }

  double lifted_hamiltonian(const ExtendedState& s) const override {
    return jhi::lifted_hamiltonian(model_.hamiltonian, s.packed<M>());
  }

  std::vector<double> casimirs(const ExtendedState& s) const override {
    const auto c = model_.casimirs(s.packed<M>());
    return {c.begin(), c.end()};
  }

  double e_of_h(const std::vector<double>& x) const override {
    return model_.e_of_h(to_vec<Model>(x));
  }

  DriftSeries hamiltonian_drift(const Trajectory& traj) const override {
    return jhi::hamiltonian_drift(traj, model_);
  }

  DriftSeries casimir_drift(const Trajectory& traj, std::size_t index) const override {
    return jhi::casimir_drift(traj, model_, index);
  }

  JacobiReport verify_jacobi(std::size_t points, double tol, unsigned seed) const override {
    std::mt19937_64 rng(seed);
    std::vector<Vec<double, Model::n>> xs;
    xs.reserve(points);
    for (std::size_t i = 0; i < points; ++i) xs.push_back(jacobi_part(model_.sample_state(rng)));
    return verify_jacobi_conditions(model_.structure, xs, tol);
  }

  std::vector<double> exact_flow(const std::vector<double>& x0, double time) const override {
    if constexpr (HasExactFlow<Model>::value) {
      const auto x = model_.exact_flow(to_vec<Model>(x0), time);
      return {x.begin(), x.end()};
    } else {
      throw CapabilityError(std::string("no exact flow for model ") + Model::kName);
    }
  }

 private:
  Model model_;
  ModelInfo info_;
};

template <class Model>
std::unique_ptr<ModelHandle> make(const ParamMap& overrides) {
  return std::make_unique<Adapter<Model>>(Model(overrides));
}

}  // namespace

ExtendedState ModelHandle::initial_state(const std::vector<double>& x0, double t0) const {
  const auto& x = x0.empty() ? info().default_x0 : x0;
  if (x.size() != info().dim) {
    throw ConfigurationError(info().name + " expects " + std::to_string(info().dim) +
                             " initial coordinates, got " + std::to_string(x.size()));
  }
  return ExtendedState(x, t0);
}

std::vector<std::string> model_names() {
  return {ContactModel::kName,   DampedModel::kName,        Jacobi2DModel::kName,
          Jacobi3DModel::kName,  Jacobi4DModel::kName,      LotkaVolterraModel::kName,
          RigidBodyModel::kName};
}

std::unique_ptr<ModelHandle> build_model(const std::string& name, const ParamMap& overrides) {
  if (name == ContactModel::kName) return make<ContactModel>(overrides);
  if (name == DampedModel::kName) return make<DampedModel>(overrides);
  if (name == Jacobi2DModel::kName) return make<Jacobi2DModel>(overrides);
  if (name == Jacobi3DModel::kName) return make<Jacobi3DModel>(overrides);
  if (name == Jacobi4DModel::kName) return make<Jacobi4DModel>(overrides);
  if (name == LotkaVolterraModel::kName) return make<LotkaVolterraModel>(overrides);
  if (name == RigidBodyModel::kName) return make<RigidBodyModel>(overrides);
  std::string known;
  for (const auto& n : model_names()) known += (known.empty() ? "" : ", ") + n;
  throw ConfigurationError("unknown model '" + name + "' (known: " + known + ")");
}

}  // namespace jhi
