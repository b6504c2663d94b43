#pragma once

#include <map>
#include <string>
#include <vector>

namespace rtf::harness {

struct RunConfig {
  std::string command;
  std::string field_spec = "Q";
  std::vector<int> weights = {12, 16, 20};
  std::vector<long long> levels = {1};
  std::vector<long long> hecke = {1, 2, 3, 4};
  double xi = 10.0;
  double xi_exponent = 0.25;
  double tol = 1e-4;
  std::string cache_dir;
  std::string report_path;
  int threads = 1;
  std::string ingest_path;
  std::string regimes = "all";
  bool report_timings = false;

  void validate() const;
};

// Parse "key=value" lines (# comments allowed), then apply overrides.
RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs);
std::map<std::string, std::string> read_config_file(const std::string& path);

} // namespace rtf::harness
