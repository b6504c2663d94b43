#include "rtfverify.h"

#include "harness/commands.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <map>
#include <stdexcept>
#include <string>

struct rtfv_session {
  std::map<std::string, std::string> pairs;
  std::string last_error;
  std::string last_console;
};

namespace {

rtfv_status classify(const std::exception& e) {
  if (dynamic_cast<const std::invalid_argument*>(&e)) return RTFV_ERR_INVALID_ARG;
  if (dynamic_cast<const std::domain_error*>(&e)) return RTFV_ERR_INVALID_ARG;
  if (dynamic_cast<const std::runtime_error*>(&e)) {
    const std::string what = e.what();
    if (what.find("cannot open") != std::string::npos) return RTFV_ERR_IO;
    return RTFV_ERR_NUMERIC;
  }
  return RTFV_ERR_INTERNAL;
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

} // namespace

extern "C" {

rtfv_status rtfv_session_create(rtfv_session** out) {
  if (!out) return RTFV_ERR_INVALID_ARG;
  *out = new (std::nothrow) rtfv_session();
  return *out ? RTFV_OK : RTFV_ERR_INTERNAL;
}

void rtfv_session_destroy(rtfv_session* s) { delete s; }

rtfv_status rtfv_session_set(rtfv_session* s, const char* key, const char* value) {
  if (!s || !key || !value) return RTFV_ERR_INVALID_ARG;
  // validate eagerly so bad keys are reported at set time
  try {
    auto probe = s->pairs;
    probe[key] = value;
    probe.erase("command");
    (void)rtf::harness::config_from_pairs(probe);
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return classify(e);
  }
  s->pairs[key] = value;
  return RTFV_OK;
}

rtfv_status rtfv_session_load_config(rtfv_session* s, const char* path) {
  if (!s || !path) return RTFV_ERR_INVALID_ARG;
  try {
    for (const auto& [k, v] : rtf::harness::read_config_file(path)) s->pairs[k] = v;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return classify(e);
  }
  return RTFV_OK;
}

rtfv_status rtfv_run(rtfv_session* s, const char* command, char** report_json, int* all_pass) {
  if (!s || !command) return RTFV_ERR_INVALID_ARG;
  try {
    auto pairs = s->pairs;
    pairs.erase("command");
    rtf::harness::RunConfig cfg = rtf::harness::config_from_pairs(pairs);
    cfg.command = command;
    const auto result = rtf::harness::run_command(cfg);
    s->last_console = result.console;
    if (report_json) *report_json = dup_string(result.report.dump(2));
    if (all_pass) *all_pass = result.ok ? 1 : 0;
    return RTFV_OK;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return classify(e);
  }
}

const char* rtfv_last_console(const rtfv_session* s) {
  return s ? s->last_console.c_str() : "";
}

const char* rtfv_last_error(const rtfv_session* s) { return s ? s->last_error.c_str() : ""; }

void rtfv_string_free(char* p) { std::free(p); }

const char* rtfv_version(void) { return "1.0.0"; }

} // extern "C"
