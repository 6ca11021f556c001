// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg.h"

#include <exception>
#include <limits>
#include <new>
#include <optional>
#include <string>

#include "cqg/error.hpp"
#include "cqg/pipeline.hpp"

struct cqg_session {
  cqg::RunConfig config;
  std::optional<cqg::RunResult> last;
  std::string error;
};

namespace {

thread_local std::string creation_error;

cqg_status status_of(const cqg::Error& e) {
  switch (e.kind()) {
    case cqg::ErrorKind::Config:
      return CQG_ERR_CONFIG;
    case cqg::ErrorKind::Undetermined:
      return CQG_ERR_UNDETERMINED;
    case cqg::ErrorKind::InvalidArgument:
    case cqg::ErrorKind::Shape:
      return CQG_ERR_INVALID_ARGUMENT;
    case cqg::ErrorKind::Internal:
      break;
  }
  return CQG_ERR_INTERNAL;
}

// Runs f, translating exceptions into a status and a message.
template <class F>
cqg_status guarded(std::string& error, F&& f) {
  try {
    error.clear();
    return f();
  } catch (const cqg::Error& e) {
    error = e.what();
    return status_of(e);
  } catch (const std::bad_alloc&) {
    error = "out of memory";
  } catch (const std::exception& e) {
    error = e.what();
  } catch (...) {
    error = "unknown failure";
  }
  return CQG_ERR_INTERNAL;
}

}  // namespace

extern "C" {

const char* cqg_version(void) { return "0.1.0"; }

cqg_status cqg_session_create(const char* config_json, cqg_session** out) {
  if (out == nullptr) {
    creation_error = "out must not be NULL";
    return CQG_ERR_INVALID_ARGUMENT;
  }
  *out = nullptr;
  if (config_json == nullptr) {
    creation_error = "config_json must not be NULL";
    return CQG_ERR_INVALID_ARGUMENT;
  }
  return guarded(creation_error, [&] {
    auto* s = new cqg_session{cqg::parse_config(config_json), std::nullopt, {}};
    *out = s;
    return CQG_OK;
  });
}

void cqg_session_destroy(cqg_session* session) { delete session; }

cqg_status cqg_set_option_int(cqg_session* session, const char* name, long long value) {
  if (session == nullptr || name == nullptr) return CQG_ERR_INVALID_ARGUMENT;
  return guarded(session->error, [&] {
    const std::string key = name;
    auto bounded = [&](int lo, int hi) {
      if (value < lo || value > hi)
        cqg::fail(cqg::ErrorKind::Config, "options." + key + ": must lie in [" + std::to_string(lo) + ", " +
                                              std::to_string(hi) + "]");
      return static_cast<int>(value);
    };
    cqg::RunOptions& o = session->config.options;
    if (key == "lp_degree") {
      o.lp_degree = bounded(0, 2);
    } else if (key == "membership_bound") {
      o.membership_bound = bounded(1, 8);
    } else if (key == "seed") {
      if (value < 0) cqg::fail(cqg::ErrorKind::Config, "options.seed: must be a nonnegative integer");
      o.seed = static_cast<std::uint64_t>(value);
    } else if (key == "dim") {
      o.dim = bounded(1, 4);
    } else if (key == "restarts") {
      o.restarts = bounded(1, 10000);
    } else if (key == "hopf_relations") {
      o.hopf_relations = bounded(0, 1) != 0;
    } else {
      cqg::fail(cqg::ErrorKind::Config, "options." + key + ": unknown field");
    }
    return CQG_OK;
  });
}

cqg_status cqg_run(cqg_session* session, const char* verb, int* exit_code) {
  if (session == nullptr) return CQG_ERR_INVALID_ARGUMENT;
  return guarded(session->error, [&] {
    cqg::RunConfig config = session->config;
    if (verb != nullptr) config.verb = verb;
    session->last = cqg::run(config);
    if (exit_code != nullptr) *exit_code = session->last->exit_code;
    if (session->last->exit_code == cqg::kExitConfig) session->error = session->last->verdict;
    return CQG_OK;
  });
}

const char* cqg_report_json(const cqg_session* session) {
  if (session == nullptr || !session->last) return nullptr;
  return session->last->report_json.c_str();
}

const char* cqg_summary(const cqg_session* session) {
  if (session == nullptr || !session->last) return nullptr;
  return session->last->summary.c_str();
}

const char* cqg_last_error(const cqg_session* session) {
  return session == nullptr ? creation_error.c_str() : session->error.c_str();
}

const char* cqg_status_string(cqg_status status) {
  switch (status) {
    case CQG_OK:
      return "ok";
    case CQG_ERR_CONFIG:
      return "configuration error";
    case CQG_ERR_UNDETERMINED:
      return "undetermined";
    case CQG_ERR_MISMATCH:
      return "mismatch";
    case CQG_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CQG_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

}  // extern "C"
