#pragma once

#include <json.hpp>

#include <string>

namespace rtf::harness {

// Reports carry a schema version and are bitwise deterministic for a given
// config: timings are kept out of the JSON unless explicitly requested.
inline constexpr int kReportVersion = 1;

nlohmann::json report_skeleton(const std::string& command);
void finalize_summary(nlohmann::json& report, double tol);
void write_report(const nlohmann::json& report, const std::string& path);

} // namespace rtf::harness
