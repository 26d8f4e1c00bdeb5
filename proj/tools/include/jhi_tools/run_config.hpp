#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "jhi/models.hpp"

namespace jhi::tools {

enum class Emit { trajectory, order_study, hamiltonian_drift, casimir_drift };

std::string to_string(Emit e);
Emit parse_emit(const std::string& s);

// Keys of the JSON config file are exactly these field names.
struct RunConfig {
  std::string model = "contact";
  std::string method = "jhi1";
  std::optional<std::array<double, 2>> span;  // unset: the model's paper run
  std::optional<double> ds;                   // unset: the model's paper run
  std::vector<double> x0;                     // empty: model default
  double t0 = 1.0;
  ParamMap params;
  std::string outputs = "out";
  std::optional<std::set<Emit>> emit;  // unset: decided by the subcommand

  // order studies
  std::vector<std::size_t> grids;    // step counts; empty: paper protocol
  std::size_t reference_points = 0;  // 0: paper protocol
  std::string norm = "span_rms";
  bool include_t = false;

  // implicit solver
  double newton_tol = 1e-12;
  int newton_max_iter = 50;
  std::string jacobian = "dual";

  void validate() const;
};

RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

// "key=value" -> (key, value); throws ConfigurationError on malformed input.
std::pair<std::string, double> parse_param(const std::string& kv);

}  // namespace jhi::tools
