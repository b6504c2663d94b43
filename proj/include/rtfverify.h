/*
 * rtfverify — C API for the trace-formula moment verification engine.
 *
 * The library computes both sides of the first- and second-moment identities
 * for holomorphic newforms (spectral L-value sums vs. closed main terms plus
 * orbital lattice sums), the mollified-moment main terms, and the
 * non-vanishing proportion table, and reports the residuals as JSON.
 *
 * Usage:
 *   rtfv_session* s = NULL;
 *   rtfv_session_create(&s);
 *   rtfv_session_set(s, "weights", "12,16,20");
 *   rtfv_session_set(s, "tol", "1e-4");
 *   char* json = NULL;
 *   rtfv_status rc = rtfv_run(s, "verify-second", &json);
 *   ...
 *   rtfv_string_free(json);
 *   rtfv_session_destroy(s);
 *
 * All functions are thread-compatible: distinct sessions may be used from
 * distinct threads concurrently.
 */

#ifndef RTFVERIFY_H
#define RTFVERIFY_H

#ifdef __cplusplus
extern "C" {
#endif

typedef struct rtfv_session rtfv_session;

typedef enum {
  RTFV_OK = 0,
  RTFV_ERR_INVALID_ARG = 1,   /* bad key, value, or command */
  RTFV_ERR_UNSUPPORTED = 2,   /* field or configuration outside scope */
  RTFV_ERR_NUMERIC = 3,       /* internal consistency guard tripped */
  RTFV_ERR_IO = 4,            /* file could not be read or written */
  RTFV_ERR_INTERNAL = 5
} rtfv_status;

/* Create / destroy an opaque session. */
rtfv_status rtfv_session_create(rtfv_session** out);
void rtfv_session_destroy(rtfv_session* s);

/* Set a configuration key. Recognized keys: field, weights, levels, hecke,
 * xi, xi-exponent, tol, cache-dir, report, threads, ingest, regimes,
 * report-timings. Values use the same grammar as the config file. */
rtfv_status rtfv_session_set(rtfv_session* s, const char* key, const char* value);

/* Load key=value pairs from a config file (overridden by later set calls). */
rtfv_status rtfv_session_load_config(rtfv_session* s, const char* path);

/* Run a command: "verify-second", "verify-first", "proportion",
 * "specfun-check", or "mollified". On success *report_json holds the JSON
 * report (caller frees with rtfv_string_free) and *all_pass is 1 when every
 * case met its tolerance. The report is also written to the configured
 * report path, if any. */
rtfv_status rtfv_run(rtfv_session* s, const char* command, char** report_json, int* all_pass);

/* Console-formatted text of the last successful run (owned by the session). */
const char* rtfv_last_console(const rtfv_session* s);

/* Message for the last error on this session (owned by the session). */
const char* rtfv_last_error(const rtfv_session* s);

void rtfv_string_free(char* p);
const char* rtfv_version(void);

#ifdef __cplusplus
}
#endif

#endif /* RTFVERIFY_H */
