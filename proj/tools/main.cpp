#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "jhi/errors.hpp"
#include "jhi_tools/output.hpp"
#include "jhi_tools/reproduce.hpp"
#include "jhi_tools/run.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitConfig = 2;

// Flag values; applied on top of --config only when given.
struct Flags {
  std::string config;
  std::string model;
  std::string method;
  double ds = 0.0;
  std::vector<double> span;
  std::vector<double> x0;
  double t0 = 1.0;
  std::vector<std::string> params;
  std::string out;
  std::vector<std::string> emit;
  std::vector<std::size_t> grids;
  std::size_t reference_points = 0;
  std::string norm;
  bool include_t = false;
  double newton_tol = 0.0;
  int newton_max_iter = 0;
  std::string jacobian;
};

struct RunOptions {
  CLI::Option* model;
  CLI::Option* method;
  CLI::Option* ds;
  CLI::Option* span;
  CLI::Option* x0;
  CLI::Option* t0;
  CLI::Option* param;
  CLI::Option* out;
  CLI::Option* emit;
  CLI::Option* grids;
  CLI::Option* reference_points;
  CLI::Option* norm;
  CLI::Option* include_t;
  CLI::Option* newton_tol;
  CLI::Option* newton_max_iter;
  CLI::Option* jacobian;
};

RunOptions add_run_options(CLI::App* cmd, Flags& f) {
  RunOptions o;
  cmd->add_option("--config", f.config, "JSON file with RunConfig keys; flags override it");
  o.model = cmd->add_option("--model", f.model, "catalog model name");
  o.method = cmd->add_option("--method", f.method, "jhi1..jhi4, rk2, rk2_heun, rk4, symplectic_euler");
  o.ds = cmd->add_option("--ds", f.ds, "step size");
  o.span = cmd->add_option("--span", f.span, "t_a t_b")->expected(2)->delimiter(',');
  o.x0 = cmd->add_option("--x0", f.x0, "initial Jacobi state")->delimiter(',');
  o.t0 = cmd->add_option("--t0", f.t0, "initial scale coordinate t (default 1)");
  o.param = cmd->add_option("--param", f.params, "model parameter key=value (repeatable)");
  o.out = cmd->add_option("--out", f.out, "output directory");
  o.emit = cmd->add_option("--emit", f.emit,
                           "trajectory, order_study, hamiltonian_drift, casimir_drift or none")
               ->delimiter(',');
  o.grids = cmd->add_option("--grids", f.grids, "order-study step counts")->delimiter(',');
  o.reference_points =
      cmd->add_option("--reference-points", f.reference_points, "RK4 reference grid points");
  o.norm = cmd->add_option("--norm", f.norm, "span_rms, rms, l2, max or final");
  o.include_t = cmd->add_flag("--include-t", f.include_t, "include t in error norms");
  o.newton_tol = cmd->add_option("--newton-tol", f.newton_tol, "implicit solve tolerance");
  o.newton_max_iter = cmd->add_option("--newton-max-iter", f.newton_max_iter, "Newton iteration cap");
  o.jacobian = cmd->add_option("--jacobian", f.jacobian, "dual or finite_difference");
  return o;
}

jhi::tools::RunConfig resolve(const Flags& f, const RunOptions& o,
                              std::set<jhi::tools::Emit> default_emit) {
  using namespace jhi::tools;
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (o.model->count()) c.model = f.model;
  if (o.method->count()) c.method = f.method;
  if (o.ds->count()) c.ds = f.ds;
  if (o.span->count()) c.span = std::array<double, 2>{f.span.at(0), f.span.at(1)};
  if (o.x0->count()) c.x0 = f.x0;
  if (o.t0->count()) c.t0 = f.t0;
  for (const auto& kv : f.params) {
    const auto [k, v] = parse_param(kv);
    c.params[k] = v;
  }
  if (o.out->count()) c.outputs = f.out;
  if (o.emit->count()) {
    std::set<Emit> e;
    for (const auto& s : f.emit)
      if (s != "none") e.insert(parse_emit(s));
    c.emit = e;
  }
  if (!c.emit) c.emit = default_emit;
  if (o.grids->count()) c.grids = f.grids;
  if (o.reference_points->count()) c.reference_points = f.reference_points;
  if (o.norm->count()) c.norm = f.norm;
  if (o.include_t->count()) c.include_t = f.include_t;
  if (o.newton_tol->count()) c.newton_tol = f.newton_tol;
  if (o.newton_max_iter->count()) c.newton_max_iter = f.newton_max_iter;
  if (o.jacobian->count()) c.jacobian = f.jacobian;
  return c;
}

int do_run(const jhi::tools::RunConfig& config) {
  const auto result = jhi::tools::run(config);
  for (const auto& file : result.files) std::cout << file << '\n';
  for (const auto& f : result.failures) std::cerr << "numerical failure: " << f << '\n';
  return result.ok() ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace jhi::tools;
  CLI::App app{"Jacobi Hamiltonian integrators: simulations, order studies, drift diagnostics"};
  app.require_subcommand(1);

  Flags sim_f, ord_f, drift_f;
  auto* sim = app.add_subcommand("simulate", "integrate one trajectory");
  const auto sim_o = add_run_options(sim, sim_f);
  auto* ord = app.add_subcommand("order-study", "convergence order against an RK4 reference");
  const auto ord_o = add_run_options(ord, ord_f);
  auto* drift = app.add_subcommand("drift", "lifted-Hamiltonian and Casimir drift series");
  const auto drift_o = add_run_options(drift, drift_f);

  bool list_json = false;
  auto* list = app.add_subcommand("list-models", "show the model catalog");
  list->add_flag("--json", list_json, "machine-readable listing");

  std::vector<int> only;
  std::string report_dir;
  auto* repro = app.add_subcommand("reproduce-paper", "rerun every published experiment");
  repro->add_option("--criterion", only, "run only these criteria (repeatable)");
  repro->add_option("--out", report_dir, "write report.json here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*sim) return do_run(resolve(sim_f, sim_o, {Emit::trajectory}));
    if (*ord) return do_run(resolve(ord_f, ord_o, {Emit::order_study}));
    if (*drift) {
      return do_run(resolve(drift_f, drift_o, {Emit::hamiltonian_drift, Emit::casimir_drift}));
    }
    if (*list) {
      if (list_json) {
        std::cout << catalog_json().dump(2) << '\n';
      } else {
        std::cout << catalog_text();
      }
      return kExitOk;
    }
    if (*repro) {
      if (only.empty())
        for (int i = 1; i <= criterion_count(); ++i) only.push_back(i);
      std::vector<CriterionResult> results;
      for (int id : only) {
        if (id < 1 || id > criterion_count()) {
          std::cerr << "no criterion " << id << '\n';
          return kExitConfig;
        }
        results.push_back(evaluate_criterion(id));
        std::cout << report_line(results.back()) << std::endl;
      }
      if (!report_dir.empty()) {
        std::filesystem::create_directories(report_dir);
        write_text((std::filesystem::path(report_dir) / "report.json").string(),
                   report_json(results).dump(2) + "\n");
      }
      bool ok = true;
      for (const auto& r : results) ok = ok && r.passed;
      return ok ? kExitOk : kExitNumerical;
    }
  } catch (const jhi::ConfigurationError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const jhi::CapabilityError& e) {
    std::cerr << "unsupported: " << e.what() << '\n';
    return kExitConfig;
  } catch (const jhi::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}
