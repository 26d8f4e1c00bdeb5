#include "jhi_tools/run.hpp"

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "jhi/catalog.hpp"
#include "jhi/errors.hpp"
#include "jhi_tools/output.hpp"
#include "jhi_tools/protocols.hpp"

namespace jhi::tools {

namespace fs = std::filesystem;

namespace {

StepConfig step_config(const RunConfig& c) {
  StepConfig cfg;
  cfg.newton_tol = c.newton_tol;
  cfg.newton_max_iter = c.newton_max_iter;
  cfg.jacobian_mode =
      c.jacobian == "finite_difference" ? JacobianMode::finite_difference : JacobianMode::dual;
  return cfg;
}

nlohmann::json info_json(const ModelInfo& info) {
  nlohmann::json j;
  j["name"] = info.name;
  j["dim"] = info.dim;
  j["realization"] = to_string(info.realization);
  j["params"] = info.params;
  j["coordinates"] = info.coordinates;
  j["casimirs"] = info.casimir_names;
  j["variants"] = info.variants;
  j["default_x0"] = info.default_x0;
  j["default_t0"] = info.default_t0;
  j["domain"] = info.domain_note;
  j["exact_flow"] = info.has_exact_flow;
  return j;
}

}  // namespace

RunResult run(const RunConfig& config) {
  config.validate();
  const auto model = build_model(config.model, config.params);
  const auto& info = model->info();
  const MethodSpec method = MethodSpec::parse(config.method);
  const StepConfig cfg = step_config(config);
  const ExtendedState s0 = model->initial_state(config.x0, config.t0);
  const PaperRun defaults = paper_run(config.model, config.params);
  const double t_a = config.span ? (*config.span)[0] : defaults.t_a;
  const double t_b = config.span ? (*config.span)[1] : defaults.t_b;
  const double ds = config.ds.value_or(defaults.ds);
  const std::set<Emit> emit = config.emit.value_or(std::set<Emit>{});

  std::error_code ec;
  fs::create_directories(config.outputs, ec);
  if (ec) throw ConfigurationError("cannot create output directory " + config.outputs);
  auto path = [&](const std::string& name) { return (fs::path(config.outputs) / name).string(); };

  RunResult result;
  nlohmann::json manifest;
  manifest["generated"] = timestamp_line().substr(12);
  manifest["model"] = info_json(info);
  manifest["method"] = method.label();

  const bool wants_traj = emit.count(Emit::trajectory) || emit.count(Emit::hamiltonian_drift) ||
                          emit.count(Emit::casimir_drift);
  if (wants_traj) {
    Trajectory traj;
    try {
      traj = model->integrate(method, t_a, t_b, ds, s0, cfg);
    } catch (const IntegrationError& e) {
      traj = e.partial();
      result.failures.push_back(std::string("trajectory: ") + e.what());
    }
    manifest["trajectory"] = {{"span", {t_a, t_b}}, {"ds", ds}, {"states", traj.size()}};
    if (emit.count(Emit::trajectory)) {
      write_trajectory_csv(path("trajectory.csv"), traj, info.coordinates);
      result.files.push_back(path("trajectory.csv"));
    }
    if (emit.count(Emit::hamiltonian_drift)) {
      write_drift_csv(path("hamiltonian_drift.csv"), model->hamiltonian_drift(traj));
      result.files.push_back(path("hamiltonian_drift.csv"));
    }
    if (emit.count(Emit::casimir_drift)) {
      if (info.casimir_names.empty()) manifest["notes"].push_back("model has no Casimir functions");
      for (std::size_t c = 0; c < info.casimir_names.size(); ++c) {
        const std::string name = "casimir_drift_" + std::to_string(c + 1) + ".csv";
        write_drift_csv(path(name), model->casimir_drift(traj, c));
        result.files.push_back(path(name));
      }
    }
  }

  if (emit.count(Emit::order_study)) {
    const auto proto = order_protocol(config.model);
    std::vector<std::size_t> grids = config.grids;
    double oa = t_a;
    double ob = t_b;
    std::size_t ref_points = config.reference_points;
    if (grids.empty()) {
      if (proto) {
        grids = proto->grids;
        if (!config.span) {
          oa = proto->t_a;
          ob = proto->t_b;
        }
        if (ref_points == 0) ref_points = proto->reference_points;
      } else {
        grids = doubling_grids(4, 7);
      }
    }
    if (ref_points == 0) ref_points = 4 * *std::max_element(grids.begin(), grids.end()) + 1;
    const Trajectory reference = model->reference(oa, ob, ref_points, s0);
    ErrorOptions opts;
    opts.norm = parse_error_norm(config.norm);
    opts.include_t = config.include_t;
    const auto rows = model->order_study(method, oa, ob, grids, reference, s0, opts, cfg);
    write_order_study_csv(path("order_study.csv"), rows);
    result.files.push_back(path("order_study.csv"));
    nlohmann::json rows_j = nlohmann::json::array();
    for (const auto& r : rows) {
      rows_j.push_back({{"ds", r.ds}, {"generalized", r.generalized}, {"failure", r.failure}});
      if (!r.failure.empty()) {
        result.failures.push_back("order study ds=" + format_double(r.ds) + ": " + r.failure);
      }
    }
    manifest["order_study"] = {{"span", {oa, ob}},
                               {"grids", grids},
                               {"reference_points", ref_points},
                               {"norm", config.norm},
                               {"include_t", config.include_t},
                               {"rows", rows_j}};
  }

  nlohmann::json resolved = config_to_json(config);
  resolved["span"] = {t_a, t_b};
  resolved["ds"] = ds;
  resolved["x0"] = s0.x;
  std::vector<std::string> emitted;
  for (Emit e : emit) emitted.push_back(to_string(e));
  resolved["emit"] = emitted;
  manifest["config"] = resolved;
  manifest["status"] = result.ok() ? "ok" : "failed";
  manifest["failures"] = result.failures;

  if (!result.ok()) {
    std::ostringstream report;
    for (const auto& f : result.failures) report << f << '\n';
    write_text(path("failure_report.txt"), report.str());
    result.files.push_back(path("failure_report.txt"));
  }
  manifest["files"] = result.files;
  write_text(path("run_manifest.json"), manifest.dump(2) + "\n");
  result.files.push_back(path("run_manifest.json"));
  return result;
}

nlohmann::json catalog_json() {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& name : model_names()) j.push_back(info_json(build_model(name)->info()));
  return j;
}

std::string catalog_text() {
  std::ostringstream out;
  for (const auto& name : model_names()) {
    const auto m = build_model(name);
    const auto& info = m->info();
    out << info.name << "  dim=" << info.dim << "  realization=" << to_string(info.realization)
        << '\n';
    out << "  coordinates:";
    for (const auto& c : info.coordinates) out << ' ' << c;
    out << "\n  params:";
    if (info.params.empty()) out << " (none)";
    for (const auto& [k, v] : info.params) out << ' ' << k << '=' << format_double(v);
    out << "\n  casimirs:";
    if (info.casimir_names.empty()) out << " (none)";
    for (const auto& c : info.casimir_names) out << ' ' << c;
    out << '\n';
    if (!info.variants.empty()) {
      out << "  hamiltonian variants:";
      for (std::size_t i = 0; i < info.variants.size(); ++i)
        out << ' ' << i << '=' << info.variants[i];
      out << '\n';
    }
  }
  return out.str();
}

}  // namespace jhi::tools
