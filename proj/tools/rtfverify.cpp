// Command-line front end. Links only the public C API.

#include <rtfverify.h>

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <string>
#include <vector>

namespace {

struct Options {
  std::string config;
  std::map<std::string, std::string> overrides;
};

void add_common(CLI::App* app, Options& opt) {
  app->add_option("--config", opt.config, "key=value config file");
  auto bind = [&opt, app](const std::string& flag, const std::string& key, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [&opt, key](const std::string& v) { opt.overrides[key] = v; }, help);
  };
  bind("--field", "field", "field descriptor: Q or Q(sqrtD)");
  bind("--weights", "weights", "comma-separated even weights");
  bind("--levels", "levels", "comma-separated levels (1 or primes)");
  bind("--hecke", "hecke", "comma-separated Hecke indices n");
  bind("--xi", "xi", "mollifier length");
  bind("--xi-exponent", "xi-exponent", "xi = ||k||^e in the mollified sweep");
  bind("--tol", "tol", "acceptance tolerance for residuals");
  bind("--cache-dir", "cache-dir", "eigenform cache directory");
  bind("--report", "report", "path for the JSON report");
  bind("--threads", "threads", "worker threads for independent cases");
  bind("--ingest", "ingest", "prime-level eigenvalue CSV to ingest");
  bind("--regimes", "regimes", "proportion regimes: all or a name");
  bind("--report-timings", "report-timings", "include wall times in the JSON report (breaks bitwise determinism)");
}

int run(const Options& opt, const std::string& command) {
  rtfv_session* session = nullptr;
  if (rtfv_session_create(&session) != RTFV_OK) {
    std::fprintf(stderr, "error: cannot create session\n");
    return 2;
  }
  int rc = 0;
  do {
    if (!opt.config.empty() && rtfv_session_load_config(session, opt.config.c_str()) != RTFV_OK) {
      std::fprintf(stderr, "error: %s\n", rtfv_last_error(session));
      rc = 2;
      break;
    }
    bool bad = false;
    for (const auto& [k, v] : opt.overrides) {
      if (rtfv_session_set(session, k.c_str(), v.c_str()) != RTFV_OK) {
        std::fprintf(stderr, "error: %s\n", rtfv_last_error(session));
        bad = true;
        break;
      }
    }
    if (bad) {
      rc = 2;
      break;
    }
    char* json = nullptr;
    int all_pass = 0;
    const rtfv_status st = rtfv_run(session, command.c_str(), &json, &all_pass);
    if (st != RTFV_OK) {
      std::fprintf(stderr, "error: %s\n", rtfv_last_error(session));
      rc = 2;
      break;
    }
    std::fputs(rtfv_last_console(session), stdout);
    rtfv_string_free(json);
    rc = all_pass ? 0 : 1;
  } while (false);
  rtfv_session_destroy(session);
  return rc;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"rtfverify: numerical verification of trace-formula moment identities"};
  app.require_subcommand(1);
  Options opt;

  auto* verify = app.add_subcommand("verify", "check a moment identity on a parameter grid");
  verify->require_subcommand(1);
  auto* second = verify->add_subcommand("second-moment", "second-moment identity");
  auto* first = verify->add_subcommand("first-moment", "first-moment identity");
  add_common(second, opt);
  add_common(first, opt);

  auto* proportion = app.add_subcommand("proportion", "non-vanishing proportion table");
  add_common(proportion, opt);
  auto* specfun = app.add_subcommand("specfun-check", "special-function property suites");
  add_common(specfun, opt);
  auto* mollified = app.add_subcommand("mollified", "mollified moments vs main terms");
  add_common(mollified, opt);

  CLI11_PARSE(app, argc, argv);

  if (second->parsed()) return run(opt, "verify-second");
  if (first->parsed()) return run(opt, "verify-first");
  if (proportion->parsed()) return run(opt, "proportion");
  if (specfun->parsed()) return run(opt, "specfun-check");
  if (mollified->parsed()) return run(opt, "mollified");
  return 2;
}
