#include <doctest.h>

#include "harness/commands.hpp"

#include <filesystem>
#include <fstream>

using namespace rtf::harness;

TEST_CASE("config parsing and validation") {
  const std::string path = std::filesystem::temp_directory_path().string() + "/rtfv_cfg.txt";
  {
    std::ofstream os(path, std::ios::trunc);
    os << "# comment\n";
    os << "weights = 12,16\n";
    os << "tol = 1e-5\n";
    os << "threads = 2\n";
  }
  auto pairs = read_config_file(path);
  pairs["hecke"] = "1,2";
  const RunConfig cfg = config_from_pairs(pairs);
  CHECK(cfg.weights == std::vector<int>{12, 16});
  CHECK(cfg.tol == doctest::Approx(1e-5));
  CHECK(cfg.threads == 2);
  CHECK(cfg.hecke == std::vector<long long>{1, 2});
  std::filesystem::remove(path);

  CHECK_THROWS(config_from_pairs({{"tol", "0.5"}}));       // out of (0, 1e-2]
  CHECK_THROWS(config_from_pairs({{"threads", "0"}}));
  CHECK_THROWS(config_from_pairs({{"weights", "13"}}));
  CHECK_THROWS(config_from_pairs({{"nonsense", "1"}}));
}

TEST_CASE("verify-second report: pass grid, schema round-trip, determinism") {
  RunConfig cfg;
  cfg.command = "verify-second";
  cfg.weights = {12};
  cfg.levels = {1};
  cfg.hecke = {1, 2};
  cfg.tol = 1e-4;
  cfg.threads = 1;
  const auto res1 = run_command(cfg);
  CHECK(res1.ok);
  CHECK(res1.report["version"] == kReportVersion);
  CHECK(res1.report["summary"]["all_pass"].get<bool>());
  CHECK(res1.report["cases"].size() == 2);

  // JSON round-trip without loss
  const auto round = nlohmann::json::parse(res1.report.dump());
  CHECK(round == res1.report);

  // bitwise determinism across thread counts
  cfg.threads = 4;
  const auto res4 = run_command(cfg);
  CHECK(res1.report.dump() == res4.report.dump());
}

TEST_CASE("verify-first on a vanishing weight") {
  RunConfig cfg;
  cfg.command = "verify-first";
  cfg.weights = {14};
  cfg.levels = {1};
  cfg.hecke = {1};
  const auto res = run_command(cfg);
  CHECK(res.ok);
  const auto& c = res.report["cases"][0];
  CHECK(std::fabs(c["spectral"].get<double>()) < 1e-12);
  CHECK(std::fabs(c["geometric"]["main_term"].get<double>() +
                  c["geometric"]["tail_value"].get<double>()) < 1e-6);
}

TEST_CASE("old-part-only rows at prime level") {
  RunConfig cfg;
  cfg.command = "verify-second";
  cfg.weights = {12};
  cfg.levels = {5};
  cfg.hecke = {1};
  const auto res = run_command(cfg);
  CHECK(res.ok);
  const auto& c = res.report["cases"][0];
  CHECK(c["spectral_status"] == "old-part-only");
  CHECK(c["predicted_new_part"].get<double>() > 0.0);
}

TEST_CASE("proportion command") {
  RunConfig cfg;
  cfg.command = "proportion";
  const auto res = run_command(cfg);
  CHECK(res.ok);
  bool have_level = false, have_weight = false, have_double = false;
  for (const auto& c : res.report["cases"]) {
    if (c["regime"] == "level-aspect") {
      have_level = true;
      CHECK(c["limit_num"] == 1);
      CHECK(c["limit_den"] == 4);
    }
    if (c["regime"] == "weight-aspect") {
      have_weight = true;
      CHECK(c["limit_den"] == 5);
    }
    if (c["regime"] == "double-limit") {
      have_double = true;
      CHECK(c["limit_den"] == 10);
    }
  }
  CHECK(have_level);
  CHECK(have_weight);
  CHECK(have_double);
  CHECK(res.console.find("1/4") != std::string::npos);
}

TEST_CASE("report file writing and exit status") {
  const std::string path = std::filesystem::temp_directory_path().string() + "/rtfv_report.json";
  RunConfig cfg;
  cfg.command = "verify-first";
  cfg.weights = {12};
  cfg.hecke = {1};
  cfg.report_path = path;
  const auto res = run_command(cfg);
  CHECK(res.ok);
  std::ifstream is(path);
  REQUIRE(is.good());
  nlohmann::json from_disk;
  is >> from_disk;
  CHECK(from_disk == res.report);
  std::filesystem::remove(path);
}
