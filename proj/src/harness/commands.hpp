#pragma once

#include "harness/config.hpp"
#include "harness/report.hpp"

namespace rtf::harness {

struct CommandResult {
  nlohmann::json report;
  std::string console;
  bool ok = false;
};

CommandResult cmd_verify_second(const RunConfig& cfg);
CommandResult cmd_verify_first(const RunConfig& cfg);
CommandResult cmd_proportion(const RunConfig& cfg);
CommandResult cmd_specfun_check(const RunConfig& cfg);
CommandResult cmd_mollified(const RunConfig& cfg);

// Dispatch on cfg.command ("verify-second", "verify-first", "proportion",
// "specfun-check", "mollified"); writes the report file when configured.
CommandResult run_command(const RunConfig& cfg);

} // namespace rtf::harness
