#pragma once

#include <string>
#include <vector>

#include "jhi/diagnostics.hpp"
#include "jhi/integrator.hpp"

namespace jhi::tools {

// Every CSV starts with one "# generated ..." line; everything after it is a
// pure function of the inputs. Values use 17 significant digits.
std::string format_double(double v);
std::string timestamp_line();

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<std::string>& coordinates);
void write_order_study_csv(const std::string& path, const std::vector<OrderStudyRow>& rows);
void write_drift_csv(const std::string& path, const DriftSeries& drift);
void write_text(const std::string& path, const std::string& text);

}  // namespace jhi::tools
