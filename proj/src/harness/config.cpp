#include "harness/config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace rtf::harness {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

} // namespace

void RunConfig::validate() const {
  if (tol <= 0.0 || tol > 1e-2) throw std::invalid_argument("config: tol must lie in (0, 1e-2]");
  if (threads < 1) throw std::invalid_argument("config: threads must be >= 1");
  for (int k : weights)
    if (k < 4 || k % 2) throw std::invalid_argument("config: weights must be even and >= 4");
  for (long long q : levels)
    if (q < 1) throw std::invalid_argument("config: levels must be positive");
  for (long long n : hecke)
    if (n < 1) throw std::invalid_argument("config: hecke indices must be positive");
  if (xi <= 1.0) throw std::invalid_argument("config: xi must exceed 1");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::map<std::string, std::string> pairs;
  std::ifstream is(path);
  if (!is) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  while (std::getline(is, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const size_t eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (!key.empty()) pairs[key] = val;
  }
  return pairs;
}

RunConfig config_from_pairs(const std::map<std::string, std::string>& pairs) {
  RunConfig cfg;
  if (const char* env = std::getenv("RTFVERIFY_CACHE_DIR")) cfg.cache_dir = env;
  for (const auto& [key, val] : pairs) {
    if (key == "command") cfg.command = val;
    else if (key == "field") cfg.field_spec = val;
    else if (key == "weights") {
      cfg.weights.clear();
      for (const auto& w : split(val, ',')) cfg.weights.push_back(std::stoi(w));
    } else if (key == "levels") {
      cfg.levels.clear();
      for (const auto& w : split(val, ',')) cfg.levels.push_back(std::stoll(w));
    } else if (key == "hecke") {
      cfg.hecke.clear();
      for (const auto& w : split(val, ',')) cfg.hecke.push_back(std::stoll(w));
    } else if (key == "xi") cfg.xi = std::stod(val);
    else if (key == "xi-exponent") cfg.xi_exponent = std::stod(val);
    else if (key == "tol") cfg.tol = std::stod(val);
    else if (key == "cache-dir") cfg.cache_dir = val;
    else if (key == "report") cfg.report_path = val;
    else if (key == "threads") cfg.threads = std::stoi(val);
    else if (key == "ingest") cfg.ingest_path = val;
    else if (key == "regimes") cfg.regimes = val;
    else if (key == "report-timings") cfg.report_timings = (val == "1" || val == "true");
    else throw std::invalid_argument("config: unknown key " + key);
  }
  cfg.validate();
  return cfg;
}

} // namespace rtf::harness
