#include <cmath>
#include <limits>
#include <sstream>

#include "jhi/diagnostics.hpp"
#include "jhi/generating.hpp"
#include "jhi/integrator.hpp"
#include "jhi/models.hpp"
#include "jhi/properties.hpp"
#include "reproduce_detail.hpp"

namespace jhi::tools::detail {

namespace {

constexpr double kReversalDs = 0.01;
constexpr double kOrbitRadius = 0.05;
constexpr double kBlowupError = 1.0;
constexpr double kRigidDriftScale = 1e-3;

template <class Model>
void add_model(std::vector<PropertyLine>& out, const Model& model, const std::string& label,
               std::size_t cases) {
  auto push = [&](const PropertyResult& r) {
    out.push_back({label + ": " + r.name, r.cases, r.failures, r.worst});
  };
  unsigned seed = 1000;
  push(check_unit_and_reflection(model, cases, ++seed));
  push(check_realization_homogeneity(model, cases, ++seed));
  push(check_realization_linearization(model, cases, ++seed));
  push(check_lifted_field_identity(model, cases, ++seed));
  push(check_jacobi_structure(model, cases, ++seed));
  push(check_casimirs(model, cases, ++seed));
  push(check_dissipation_rate(model, cases, ++seed));
  for (int k : {1, 3}) {
    const GeneratingCoefficients<Model> coeffs(model, k);
    const std::string suffix = " (k=" + std::to_string(k) + ")";
    auto push_k = [&](PropertyResult r) {
      r.name += suffix;
      push(r);
    };
    push_k(check_generating_homogeneity(coeffs, cases, ++seed));
    push_k(check_step_reversal(coeffs, kReversalDs, cases, ++seed));
    push_k(check_step_homogeneity(coeffs, kReversalDs, cases, ++seed));
  }
}

template <class Model>
Vec<double, Model::M> default_state(const Model& m) {
  Vec<double, Model::M> s{};
  const auto x0 = m.default_x0();
  std::copy(x0.begin(), x0.end(), s.begin());
  s[Model::M - 1] = 1.0;
  return s;
}

std::string sci(double v) {
  std::ostringstream s;
  s.precision(3);
  s << std::scientific << v;
  return s.str();
}

// First time the Jacobi-state error against the exact solution exceeds 1;
// the span end plus one step if it never does.
double contact_blowup_time(const char* method) {
  const ContactModel m;
  const double T = 20.0;
  const double ds = 0.1;
  Trajectory tr;
  try {
    tr = integrate(m, MethodSpec::parse(method), 0.0, T, ds, default_state(m));
  } catch (const IntegrationError& e) {
    tr = e.partial();
  }
  for (std::size_t i = 0; i < tr.size(); ++i) {
    const double s = tr.times[i];
    // H = q + z from (0.1, -1.1, 0.09): q fixed, p and z grow like e^s
    const double exact[3] = {0.1, -1.0 - 0.1 * std::exp(s), -0.1 + 0.19 * std::exp(s)};
    double e2 = 0.0;
    for (int k = 0; k < 3; ++k) e2 += std::pow(tr.states[i].x[k] - exact[k], 2);
    if (!(std::sqrt(e2) <= kBlowupError)) return s;
  }
  return tr.size() == 0 ? 0.0 : tr.times.back() + ds;
}

// Distance to x0 of the closest sample within half a period of the first return.
struct OrbitClosure {
  double period = 0.0;
  double jhi = 0.0;
  double rk2 = 0.0;
};

OrbitClosure lv_orbit_closure() {
  const LotkaVolterraModel m;
  const auto s0 = default_state(m);
  const auto x0 = m.default_x0();
  auto dist = [&](const ExtendedState& s) { return std::hypot(s.x[0] - x0[0], s.x[1] - x0[1]); };

  const auto ref = reference_solution(m, 0.0, 5.0, 50001, s0);
  OrbitClosure out;
  bool left = false;
  for (std::size_t i = 1; i + 1 < ref.size(); ++i) {
    const double d = dist(ref.states[i]);
    if (d > 1.0) left = true;
    if (left && d <= dist(ref.states[i - 1]) && d <= dist(ref.states[i + 1])) {
      out.period = ref.times[i];
      break;
    }
  }
  if (out.period == 0.0) throw NumericalError("no return to x0 found on the reference orbit");
  auto closure = [&](const char* method) {
    const auto tr = integrate(m, MethodSpec::parse(method), 0.0, 5.0, 0.05, s0);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < tr.size(); ++i)
      if (tr.times[i] >= 0.5 * out.period && tr.times[i] <= 1.5 * out.period)
        best = std::min(best, dist(tr.states[i]));
    return best;
  };
  out.jhi = closure("jhi1");
  out.rk2 = closure("rk2");
  return out;
}

}  // namespace

std::vector<PropertyLine> property_suite(std::size_t cases) {
  std::vector<PropertyLine> out;
  add_model(out, ContactModel{}, "contact", cases);
  add_model(out, DampedModel{}, "damped", cases);
  add_model(out, Jacobi2DModel{}, "jacobi2d[x^2+y^2]", cases);
  add_model(out, Jacobi2DModel({{"variant", 1.0}}), "jacobi2d[cos*sin]", cases);
  add_model(out, Jacobi3DModel{}, "jacobi3d", cases);
  add_model(out, Jacobi4DModel{}, "jacobi4d", cases);
  add_model(out, LotkaVolterraModel{}, "lotka_volterra", cases);
  add_model(out, RigidBodyModel{}, "rigid_body", cases);
  return out;
}

std::vector<QualitativeLine> qualitative_checks() {
  std::vector<QualitativeLine> out;

  const double tj = contact_blowup_time("jhi1");
  const double tr = contact_blowup_time("rk2");
  out.push_back({tj > tr, "contact blow-up time JHI-1 " + sci(tj) + " > RK2 " + sci(tr)});

  const auto lv = lv_orbit_closure();
  out.push_back({lv.jhi < kOrbitRadius && lv.rk2 >= kOrbitRadius,
                 "LV return distance over one period (" + sci(lv.period) + ") JHI-1 " +
                     sci(lv.jhi) + " < " + sci(kOrbitRadius) + " <= RK2 " + sci(lv.rk2)});

  for (double set : {1.0, 2.0}) {
    const RigidBodyModel m({{"inertia_set", set}});
    const auto s0 = default_state(m);
    const double h0 = std::abs(lifted_hamiltonian(m.hamiltonian, s0));
    const double bound = kRigidDriftScale * (1.0 + h0);
    const double d =
        hamiltonian_drift(integrate(m, MethodSpec::parse("jhi1"), 0.0, 2.0, 0.005, s0), m).max_abs();
    out.push_back({d <= bound, "rigid body set " + std::to_string(static_cast<int>(set)) +
                                   " JHI drift " + sci(d) + " <= " + sci(bound)});
  }
  return out;
}

}  // namespace jhi::tools::detail
