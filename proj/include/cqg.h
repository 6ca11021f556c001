/* Copyright 2026 The cqgkac Authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the cqgkac library. A session owns one parsed
 * configuration and the result of the last run. Strings returned by the
 * library stay valid until the next call on the same session (or, for the
 * session-less error, on the same thread).
 */

#ifndef CQG_H_
#define CQG_H_

#if defined(CQG_BUILDING)
#define CQG_API __attribute__((visibility("default")))
#else
#define CQG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cqg_session cqg_session;

typedef enum cqg_status {
  CQG_OK = 0,
  CQG_ERR_CONFIG = 1,
  CQG_ERR_UNDETERMINED = 2,
  CQG_ERR_MISMATCH = 3,
  CQG_ERR_INVALID_ARGUMENT = 4,
  CQG_ERR_INTERNAL = 5
} cqg_status;

CQG_API const char* cqg_version(void);

/* Parses a JSON configuration. On failure *out is NULL and the message is
 * available from cqg_last_error(NULL). */
CQG_API cqg_status cqg_session_create(const char* config_json, cqg_session** out);

CQG_API void cqg_session_destroy(cqg_session* session);

/* Overrides one integer option: "lp_degree", "membership_bound", "seed",
 * "dim", "restarts" or "hopf_relations". */
CQG_API cqg_status cqg_set_option_int(cqg_session* session, const char* name, long long value);

/* Runs a verb ("build", "kac", "match", "hopf-check", "numeric", "report"
 * or NULL for the configured verb). *exit_code receives the process exit
 * code of the run (0 ok, 1 config, 2 undetermined, 3 mismatch). */
CQG_API cqg_status cqg_run(cqg_session* session, const char* verb, int* exit_code);

/* Report of the last run; NULL before the first run. */
CQG_API const char* cqg_report_json(const cqg_session* session);

/* Human-readable summary of the last run; NULL before the first run. */
CQG_API const char* cqg_summary(const cqg_session* session);

/* Message of the last failure on the session, or of the last failed
 * cqg_session_create on this thread when session is NULL. Empty if none. */
CQG_API const char* cqg_last_error(const cqg_session* session);

CQG_API const char* cqg_status_string(cqg_status status);

#ifdef __cplusplus
}
#endif

#endif /* CQG_H_ */
