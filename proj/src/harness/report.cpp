#include "harness/report.hpp"

#include <fstream>
#include <stdexcept>

namespace rtf::harness {

nlohmann::json report_skeleton(const std::string& command) {
  nlohmann::json j;
  j["version"] = kReportVersion;
  j["command"] = command;
  j["cases"] = nlohmann::json::array();
  return j;
}

void finalize_summary(nlohmann::json& report, double tol) {
  int pass = 0, fail = 0;
  double worst = 0.0;
  for (const auto& c : report["cases"]) {
    const bool ok = c.value("pass", true);
    ok ? ++pass : ++fail;
    if (c.contains("residual_rel")) worst = std::max(worst, c["residual_rel"].get<double>());
  }
  report["summary"] = {{"pass", pass}, {"fail", fail}, {"worst_residual", worst},
                       {"tolerance", tol}, {"all_pass", fail == 0}};
}

void write_report(const nlohmann::json& report, const std::string& path) {
  if (path.empty()) return;
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw std::runtime_error("report: cannot open " + path);
  os << report.dump(2) << "\n";
}

} // namespace rtf::harness
