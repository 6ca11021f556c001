// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// End-to-end runs: configuration parsing, the build / kac / match /
// hopf-check / numeric / report verbs, and the JSON report.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cqg/presentation.hpp"

namespace cqg {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfig = 1,
  kExitUndetermined = 2,
  kExitMismatch = 3,
};

struct RunOptions {
  int lp_degree = 0;
  int membership_bound = 4;
  std::uint64_t seed = 1;
  int dim = 1;
  int restarts = 50;
  /// Coproduct-preservation checks of every relation in hopf-check.
  bool hopf_relations = true;

  friend bool operator==(const RunOptions&, const RunOptions&) = default;
};

struct RunConfig {
  BlockSpec spec;
  std::string verb = "report";
  RunOptions options;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// The verbs accepted by run().
const std::vector<std::string>& run_verbs();

/// Parses the JSON configuration. Throws Error(Config) whose message starts
/// with the offending field.
RunConfig parse_config(const std::string& json_text);

/// JSON text that parse_config maps back to an equal RunConfig.
std::string serialize_config(const RunConfig& config);

struct RunResult {
  int exit_code = kExitOk;
  std::string verdict;
  /// Pretty-printed JSON report.
  std::string report_json;
  /// A few lines for a terminal.
  std::string summary;
};

/// Runs one verb. Configuration problems come back as exit code 1 with the
/// message in the verdict; other failures propagate as exceptions.
RunResult run(const RunConfig& config);

/// The report with its "timings" member removed.
std::string strip_timings(const std::string& report_json);

}  // namespace cqg
