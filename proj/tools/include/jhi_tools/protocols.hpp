#pragma once

// Default experiment settings per model: the trajectory run shown for each
// system and, where one exists, its convergence-order protocol.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jhi/models.hpp"

namespace jhi::tools {

struct PaperRun {
  double t_a = 0.0;
  double t_b = 1.0;
  double ds = 0.1;
};

struct OrderProtocol {
  ParamMap params;  // parameters the protocol assumes
  double t_a = 0.0;
  double t_b = 1.0;
  std::vector<std::size_t> grids;  // step counts, coarse to fine
  std::size_t reference_points = 2049;
  std::vector<std::string> methods;
};

// Throws ConfigurationError for unknown models.
PaperRun paper_run(const std::string& model, const ParamMap& params = {});

std::optional<OrderProtocol> order_protocol(const std::string& model);

// n, 2n, 4n, ... (count entries)
std::vector<std::size_t> doubling_grids(std::size_t first, std::size_t count);

}  // namespace jhi::tools
