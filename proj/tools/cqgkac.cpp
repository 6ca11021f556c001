// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

// cqgkac <verb> --config <path> [--out <path>] [--membership-bound k]
//        [--seed s] [--dim n] [--json]

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "cqg.h"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitInternal = 4;

struct SessionDeleter {
  void operator()(cqg_session* s) const { cqg_session_destroy(s); }
};
using Session = std::unique_ptr<cqg_session, SessionDeleter>;

int report_failure(cqg_status status, const char* message) {
  std::cerr << "cqgkac: " << cqg_status_string(status) << ": " << message << "\n";
  return status == CQG_ERR_CONFIG ? kExitConfig : kExitInternal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kac quotients of universal compact quantum group algebras", "cqgkac"};
  app.set_version_flag("--version", std::string(cqg_version()));

  std::string verb;
  std::string config_path;
  std::string out_path;
  std::optional<long long> membership_bound;
  std::optional<long long> seed;
  std::optional<long long> dim;
  bool print_json = false;

  app.add_option("verb", verb, "build, kac, match, hopf-check, numeric or report")
      ->required()
      ->check(CLI::IsMember({"build", "kac", "match", "hopf-check", "numeric", "report"}));
  app.add_option("--config", config_path, "JSON block specification")->required();
  app.add_option("--out", out_path, "write the JSON report here");
  app.add_option("--membership-bound", membership_bound, "degree bound for ideal membership");
  app.add_option("--seed", seed, "seed of the representation search");
  app.add_option("--dim", dim, "matrix size of the representation search");
  app.add_flag("--json", print_json, "print the JSON report instead of the summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cqgkac: --config: cannot read '" << config_path << "'\n";
    return kExitConfig;
  }
  std::ostringstream text;
  text << in.rdbuf();

  cqg_session* raw = nullptr;
  if (cqg_status st = cqg_session_create(text.str().c_str(), &raw); st != CQG_OK) {
    return report_failure(st, cqg_last_error(nullptr));
  }
  Session session(raw);

  const std::pair<const char*, std::optional<long long>> overrides[] = {
      {"membership_bound", membership_bound}, {"seed", seed}, {"dim", dim}};
  for (const auto& [name, value] : overrides) {
    if (!value) continue;
    if (cqg_status st = cqg_set_option_int(session.get(), name, *value); st != CQG_OK) {
      return report_failure(st, cqg_last_error(session.get()));
    }
  }

  int exit_code = 0;
  if (cqg_status st = cqg_run(session.get(), verb.c_str(), &exit_code); st != CQG_OK) {
    return report_failure(st, cqg_last_error(session.get()));
  }

  const char* report = cqg_report_json(session.get());
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out || !(out << report << "\n")) {
      std::cerr << "cqgkac: --out: cannot write '" << out_path << "'\n";
      return kExitConfig;
    }
  }
  if (print_json) {
    std::cout << report << "\n";
  } else {
    std::cout << cqg_summary(session.get());
  }
  if (exit_code == kExitConfig) std::cerr << "cqgkac: " << cqg_last_error(session.get()) << "\n";
  return exit_code;
}
