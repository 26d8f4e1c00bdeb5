#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace jhi::tools::detail {

struct PropertyLine {
  std::string label;  // "<model>: <property>"
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;
};

struct QualitativeLine {
  bool passed = false;
  std::string detail;
};

// Every randomized property over every catalog model, `cases` draws each.
std::vector<PropertyLine> property_suite(std::size_t cases);

// Blow-up delay (contact), LV orbit closure, bounded rigid-body drift.
std::vector<QualitativeLine> qualitative_checks();

}  // namespace jhi::tools::detail
