#pragma once

// The acceptance checks: every table and figure experiment rerun with its
// published settings and compared against pinned values and tolerances.

#include <string>
#include <vector>

#include "json.hpp"

namespace jhi::tools {

// Published reference values. Tests perturb these to make sure a wrong
// expectation is reported as a failure.
struct PublishedValues {
  double order2d_jhi1 = 1.30e-6;   // jacobi2d cos*sin, ds = 2^-9
  double order3d_jhi1 = 1.60e-5;   // jacobi3d, ds = 0.0018
  double order3d_jhi3 = 6.60e-10;  // jacobi3d, ds = 0.0018
  double order4d_jhi1 = 9.30e-7;   // jacobi4d, ds = 0.0015
  double damped_jhi1 = 1.00e-5;   // damped, ds = 2^-7
  double damped_jhi3 = 7.00e-11;  // damped, ds = 2^-7
  double lv_jhi1 = 3.70e-5;   // lotka_volterra, ds = 2^-9
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

int criterion_count();
std::string criterion_title(int id);

// Throws std::out_of_range for ids outside 1..criterion_count().
CriterionResult evaluate_criterion(int id, const PublishedValues& values = {});

std::vector<CriterionResult> reproduce_paper(const PublishedValues& values = {});

nlohmann::json report_json(const std::vector<CriterionResult>& results);
std::string report_line(const CriterionResult& r);

}  // namespace jhi::tools
