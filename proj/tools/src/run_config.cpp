#include "jhi_tools/run_config.hpp"

#include <fstream>

#include "jhi/catalog.hpp"
#include "jhi/diagnostics.hpp"
#include "jhi/errors.hpp"
#include "jhi/integrator.hpp"

namespace jhi::tools {

std::string to_string(Emit e) {
  switch (e) {
    case Emit::trajectory:
      return "trajectory";
    case Emit::order_study:
      return "order_study";
    case Emit::hamiltonian_drift:
      return "hamiltonian_drift";
    case Emit::casimir_drift:
      return "casimir_drift";
  }
  return "unknown";
}

Emit parse_emit(const std::string& s) {
  for (Emit e : {Emit::trajectory, Emit::order_study, Emit::hamiltonian_drift,
                 Emit::casimir_drift}) {
    if (s == to_string(e)) return e;
  }
  throw ConfigurationError("unknown emit target '" + s +
                           "' (trajectory, order_study, hamiltonian_drift, casimir_drift)");
}

void RunConfig::validate() const {
  const auto names = model_names();
  if (std::find(names.begin(), names.end(), model) == names.end()) {
    throw ConfigurationError("unknown model '" + model + "'");
  }
  MethodSpec::parse(method);
  if (ds && !(*ds > 0.0)) throw ConfigurationError("ds must be > 0");
  if (span && !((*span)[1] >= (*span)[0])) throw ConfigurationError("span must be increasing");
  if (t0 == 0.0) throw ConfigurationError("t0 must be nonzero");
  parse_error_norm(norm);
  if (jacobian != "dual" && jacobian != "finite_difference") {
    throw ConfigurationError("jacobian must be dual or finite_difference");
  }
  if (!(newton_tol > 0.0) || newton_max_iter < 1) {
    throw ConfigurationError("newton_tol must be > 0 and newton_max_iter >= 1");
  }
  for (std::size_t g : grids)
    if (g == 0) throw ConfigurationError("grid step counts must be positive");
}

RunConfig config_from_json(const nlohmann::json& j) {
  static const std::set<std::string> known = {
      "model",      "method",    "span",         "ds",        "x0",         "t0",
      "params",     "outputs",   "emit",         "grids",     "reference_points",
      "norm",       "include_t", "newton_tol",   "newton_max_iter", "jacobian"};
  if (!j.is_object()) throw ConfigurationError("config file must hold a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) throw ConfigurationError("unknown config key '" + key + "'");
  }
  RunConfig c;
  try {
    if (j.contains("model")) c.model = j.at("model").get<std::string>();
    if (j.contains("method")) c.method = j.at("method").get<std::string>();
    if (j.contains("span")) c.span = j.at("span").get<std::array<double, 2>>();
    if (j.contains("ds")) c.ds = j.at("ds").get<double>();
    if (j.contains("x0")) c.x0 = j.at("x0").get<std::vector<double>>();
    if (j.contains("t0")) c.t0 = j.at("t0").get<double>();
    if (j.contains("params")) c.params = j.at("params").get<ParamMap>();
    if (j.contains("outputs")) c.outputs = j.at("outputs").get<std::string>();
    if (j.contains("emit")) {
      std::set<Emit> e;
      for (const auto& s : j.at("emit").get<std::vector<std::string>>()) e.insert(parse_emit(s));
      c.emit = e;
    }
    if (j.contains("grids")) c.grids = j.at("grids").get<std::vector<std::size_t>>();
    if (j.contains("reference_points")) c.reference_points = j.at("reference_points").get<std::size_t>();
    if (j.contains("norm")) c.norm = j.at("norm").get<std::string>();
    if (j.contains("include_t")) c.include_t = j.at("include_t").get<bool>();
    if (j.contains("newton_tol")) c.newton_tol = j.at("newton_tol").get<double>();
    if (j.contains("newton_max_iter")) c.newton_max_iter = j.at("newton_max_iter").get<int>();
    if (j.contains("jacobian")) c.jacobian = j.at("jacobian").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigurationError(std::string("bad config value: ") + e.what());
  }
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["model"] = c.model;
  j["method"] = c.method;
  j["span"] = c.span ? nlohmann::json(*c.span) : nlohmann::json(nullptr);
  j["ds"] = c.ds ? nlohmann::json(*c.ds) : nlohmann::json(nullptr);
  j["x0"] = c.x0;
  j["t0"] = c.t0;
  j["params"] = c.params;
  j["outputs"] = c.outputs;
  if (c.emit) {
    std::vector<std::string> e;
    for (Emit x : *c.emit) e.push_back(to_string(x));
    j["emit"] = e;
  } else {
    j["emit"] = nullptr;
  }
  j["grids"] = c.grids;
  j["reference_points"] = c.reference_points;
  j["norm"] = c.norm;
  j["include_t"] = c.include_t;
  j["newton_tol"] = c.newton_tol;
  j["newton_max_iter"] = c.newton_max_iter;
  j["jacobian"] = c.jacobian;
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigurationError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

std::pair<std::string, double> parse_param(const std::string& kv) {
  const auto eq = kv.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ConfigurationError("parameter '" + kv + "' is not of the form key=value");
  }
  const std::string key = kv.substr(0, eq);
  const std::string val = kv.substr(eq + 1);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(val, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != val.size()) {
    throw ConfigurationError("parameter '" + key + "' needs a numeric value, got '" + val + "'");
  }
  return {key, v};
}

}  // namespace jhi::tools
