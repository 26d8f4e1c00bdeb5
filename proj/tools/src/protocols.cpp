#include "jhi_tools/protocols.hpp"

#include <numbers>

#include "jhi/errors.hpp"

namespace jhi::tools {

std::vector<std::size_t> doubling_grids(std::size_t first, std::size_t count) {
  std::vector<std::size_t> g;
  for (std::size_t i = 0; i < count; ++i) g.push_back(first << i);
  return g;
}

PaperRun paper_run(const std::string& model, const ParamMap& params) {
  constexpr double pi = std::numbers::pi;
  if (model == "contact") return {0.0, 20.0, 0.1};
  if (model == "damped") return {0.0, 10.0, 0.5};
  if (model == "jacobi2d") {
    const auto it = params.find("variant");
    const bool cos_sin = it != params.end() && it->second == 1.0;
    return {0.0, pi, cos_sin ? 0.1 : 0.03};
  }
  if (model == "jacobi3d") return {0.0, 2.0, 0.1};
  if (model == "jacobi4d") return {0.0, 4.0 * pi, 0.001};
  if (model == "lotka_volterra") return {0.0, 5.0, 0.05};
  if (model == "rigid_body") return {0.0, 2.0, 0.005};
  throw ConfigurationError("unknown model '" + model + "'");
}

std::optional<OrderProtocol> order_protocol(const std::string& model) {
  if (model == "jacobi2d") {
    return OrderProtocol{{{"variant", 1.0}}, 0.0, 1.0, doubling_grids(4, 9), 2049, {"jhi1"}};
  }
  if (model == "jacobi3d") {
    return OrderProtocol{{}, 0.0, 0.9, doubling_grids(4, 8), 2049, {"jhi1", "jhi3"}};
  }
  if (model == "jacobi4d") {
    // finest grid is 2048 steps, so the RK4 reference gets four times that
    return OrderProtocol{{}, 0.0, std::numbers::pi, doubling_grids(16, 8), 8193, {"jhi1"}};
  }
  if (model == "damped") {
    return OrderProtocol{{}, 0.0, 10.0, doubling_grids(20, 7), 20481, {"jhi1", "jhi3"}};
  }
  if (model == "lotka_volterra") {
    return OrderProtocol{{}, 0.0, 1.0, doubling_grids(4, 8), 2049, {"jhi1"}};
  }
  return std::nullopt;
}

}  // namespace jhi::tools
