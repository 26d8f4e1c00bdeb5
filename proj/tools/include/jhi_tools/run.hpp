#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "jhi_tools/run_config.hpp"

namespace jhi::tools {

struct RunResult {
  std::vector<std::string> files;  // everything written, manifest included
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

// Writes the requested outputs plus run_manifest.json into config.outputs.
// Numerical failures do not throw: partial outputs are kept, the reasons go to
// failure_report.txt and RunResult::failures. Configuration problems throw.
RunResult run(const RunConfig& config);

nlohmann::json catalog_json();
std::string catalog_text();

}  // namespace jhi::tools
