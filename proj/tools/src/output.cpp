#include "jhi_tools/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>

#include "jhi/errors.hpp"

namespace jhi::tools {

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigurationError("cannot write " + path);
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string timestamp_line() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj,
                          const std::vector<std::string>& coordinates) {
  auto out = open_out(path);
  out << timestamp_line() << '\n' << "time";
  for (const auto& c : coordinates) out << ',' << c;
  out << ",t\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    out << format_double(traj.times[i]);
    for (double v : traj.states[i].x) out << ',' << format_double(v);
    out << ',' << format_double(traj.states[i].t) << '\n';
  }
}

void write_order_study_csv(const std::string& path, const std::vector<OrderStudyRow>& rows) {
  auto out = open_out(path);
  out << timestamp_line() << '\n' << "ds,error_l2,observed_order\n";
  for (const auto& r : rows) {
    out << format_double(r.ds) << ',' << format_double(r.error_l2) << ',';
    if (r.observed_order) out << format_double(*r.observed_order);
    out << '\n';
  }
}

void write_drift_csv(const std::string& path, const DriftSeries& drift) {
  auto out = open_out(path);
  out << timestamp_line() << '\n' << "time,value\n";
  for (std::size_t i = 0; i < drift.times.size(); ++i)
    out << format_double(drift.times[i]) << ',' << format_double(drift.values[i]) << '\n';
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

}  // namespace jhi::tools
