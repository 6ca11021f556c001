// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "cqg/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>

#include "json.hpp"

#include "cqg/error.hpp"
#include "cqg/hopf.hpp"
#include "cqg/numeric.hpp"
#include "cqg/quotient.hpp"
#include "cqg/trace.hpp"

namespace cqg {

namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  fail(ErrorKind::Config, field + ": " + what);
}

const Json& require(const Json& obj, const std::string& key, const std::string& field) {
  auto it = obj.find(key);
  if (it == obj.end()) config_error(field, "missing");
  return *it;
}

long long as_integer(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) config_error(field, "must be an integer");
  return v.get<long long>();
}

int as_int_in(const Json& v, const std::string& field, long long lo, long long hi) {
  const long long x = as_integer(v, field);
  if (x < lo || x > hi) config_error(field, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(x);
}

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) config_error(prefix + key, "unknown field");
  }
}

Json generator_list(const std::vector<GeneratorId>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(to_string(g));
  return out;
}

Json element_list(const std::vector<AlgElement>& xs) {
  Json out = Json::array();
  for (const auto& x : xs) out.push_back(to_string(x));
  return out;
}

Json relation_list(const Presentation& p) {
  Json out = Json::array();
  for (const auto& r : p.relations) out.push_back({{"label", r.label}, {"expr", to_string(r.expr)}});
  return out;
}

Json certificate_json(const ForcedGenerator& fg) {
  Json terms = Json::array();
  for (std::size_t i = 0; i < fg.cited.size(); ++i) {
    terms.push_back({{"equation", fg.cited[i].provenance},
                     {"expr", to_string(fg.cited[i].expr)},
                     {"multiplier", to_string(fg.certificate.terms[i].second)}});
  }
  std::string why;
  const bool ok = reverify(fg, &why);
  Json out = {{"generator", to_string(fg.generator)},
              {"round", fg.round},
              {"target", "tau(" + to_string(fg.certificate.target) + ")"},
              {"terms", terms},
              {"combination", to_string(fg.certificate.combination)},
              {"verified", ok}};
  if (!ok) out["verification_error"] = why;
  return out;
}

std::string format_double(double x) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << x;
  return os.str();
}

class Stopwatch {
 public:
  explicit Stopwatch(Json& timings) : timings_(timings) {}

  template <class F>
  auto time(const std::string& stage, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    struct Record {
      Json& timings;
      std::string stage;
      std::chrono::steady_clock::time_point t0;
      ~Record() {
        timings[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      }
    } record{timings_, stage, t0};
    return f();
  }

 private:
  Json& timings_;
};

bool wants(const std::string& verb, std::initializer_list<const char*> verbs) {
  return std::any_of(verbs.begin(), verbs.end(), [&](const char* v) { return verb == v; });
}

int combine_exit(int a, int b) { return std::max(a, b); }

}  // namespace

const std::vector<std::string>& run_verbs() {
  static const std::vector<std::string> verbs{"build", "kac", "match", "hopf-check", "numeric", "report"};
  return verbs;
}

RunConfig parse_config(const std::string& json_text) {
  Json doc;
  try {
    doc = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    config_error("config", std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) config_error("config", "must be a JSON object");
  reject_unknown(doc, {"kind", "blocks", "trailing", "epsilon", "verb", "options"}, "");

  RunConfig cfg;
  const Json& kind = require(doc, "kind", "kind");
  if (!kind.is_string()) config_error("kind", "must be a string");
  cfg.spec.kind = parse_block_kind(kind.get<std::string>());

  const Json& blocks = require(doc, "blocks", "blocks");
  if (!blocks.is_array()) config_error("blocks", "must be an array");
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::string field = "blocks[" + std::to_string(i) + "]";
    const Json& b = blocks[i];
    if (!b.is_object()) config_error(field, "must be an object {\"q\": \"p/q\", \"m\": M}");
    reject_unknown(b, {"q", "m"}, field + ".");
    const Json& q = require(b, "q", field + ".q");
    Block block;
    if (q.is_string()) {
      try {
        block.q = parse_rational(q.get<std::string>());
      } catch (const Error& e) {
        config_error(field + ".q", e.what());
      }
    } else if (q.is_number_integer()) {
      block.q = Rational(q.get<long>());
    } else {
      config_error(field + ".q", "must be a rational string such as \"1/3\"");
    }
    block.m = as_int_in(require(b, "m", field + ".m"), field + ".m", 0, 64);
    cfg.spec.blocks.push_back(block);
  }
  if (auto it = doc.find("trailing"); it != doc.end()) cfg.spec.trailing = as_int_in(*it, "trailing", 0, 64);
  if (auto it = doc.find("epsilon"); it != doc.end()) cfg.spec.epsilon = as_int_in(*it, "epsilon", -1, 1);
  if (auto it = doc.find("verb"); it != doc.end()) {
    if (!it->is_string()) config_error("verb", "must be a string");
    cfg.verb = it->get<std::string>();
    const auto& verbs = run_verbs();
    if (std::find(verbs.begin(), verbs.end(), cfg.verb) == verbs.end()) config_error("verb", "unknown verb '" + cfg.verb + "'");
  }
  if (auto it = doc.find("options"); it != doc.end()) {
    const Json& o = *it;
    if (!o.is_object()) config_error("options", "must be an object");
    reject_unknown(o, {"lp_degree", "membership_bound", "seed", "dim", "restarts", "hopf_relations"}, "options.");
    if (auto f = o.find("lp_degree"); f != o.end()) cfg.options.lp_degree = as_int_in(*f, "options.lp_degree", 0, 2);
    if (auto f = o.find("membership_bound"); f != o.end())
      cfg.options.membership_bound = as_int_in(*f, "options.membership_bound", 1, 8);
    if (auto f = o.find("seed"); f != o.end()) {
      if (!f->is_number_unsigned()) config_error("options.seed", "must be a nonnegative integer");
      cfg.options.seed = f->get<std::uint64_t>();
    }
    if (auto f = o.find("dim"); f != o.end()) cfg.options.dim = as_int_in(*f, "options.dim", 1, 4);
    if (auto f = o.find("restarts"); f != o.end()) cfg.options.restarts = as_int_in(*f, "options.restarts", 1, 10000);
    if (auto f = o.find("hopf_relations"); f != o.end()) {
      if (!f->is_boolean()) config_error("options.hopf_relations", "must be true or false");
      cfg.options.hopf_relations = f->get<bool>();
    }
  }
  cfg.spec.validate();
  return cfg;
}

std::string serialize_config(const RunConfig& config) {
  Json blocks = Json::array();
  for (const auto& b : config.spec.blocks) blocks.push_back({{"q", to_string(b.q)}, {"m", b.m}});
  const Json doc = {{"kind", to_string(config.spec.kind)},
                    {"blocks", blocks},
                    {"trailing", config.spec.trailing},
                    {"epsilon", config.spec.epsilon},
                    {"verb", config.verb},
                    {"options",
                     {{"lp_degree", config.options.lp_degree},
                      {"membership_bound", config.options.membership_bound},
                      {"seed", config.options.seed},
                      {"dim", config.options.dim},
                      {"restarts", config.options.restarts},
                      {"hopf_relations", config.options.hopf_relations}}}};
  return doc.dump(2);
}

RunResult run(const RunConfig& config) {
  RunResult result;
  Json report;
  Json timings = Json::object();
  Stopwatch watch(timings);
  std::ostringstream summary;
  const std::string& verb = config.verb;

  report["input"] = Json::parse(serialize_config(config));
  report["verb"] = verb;
  report["sizes"] = nullptr;
  report["kac"] = nullptr;
  report["match"] = nullptr;
  report["hopf"] = nullptr;
  report["numeric"] = nullptr;

  auto finish = [&]() {
    report["timings"] = timings;
    report["verdict"] = result.verdict;
    report["exit_code"] = result.exit_code;
    result.report_json = report.dump(2);
    result.summary = summary.str() + "verdict: " + result.verdict + "\n";
    return result;
  };

  try {
    const auto& verbs = run_verbs();
    if (std::find(verbs.begin(), verbs.end(), verb) == verbs.end()) config_error("verb", "unknown verb '" + verb + "'");
    config.spec.validate();
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Config) throw;
    result.exit_code = kExitConfig;
    result.verdict = std::string("config error: ") + e.what();
    return finish();
  }

  const Presentation p = watch.time("build", [&] { return build_from_spec(config.spec); });
  const Presentation reduced = canonicalize(reduce_reality(p));
  report["sizes"] = {{"dimension", p.dimension()},
                     {"generators", p.generators.size()},
                     {"relations", p.raw_relation_count},
                     {"distinct_relations", canonicalize(p).relations.size()},
                     {"reduced_generators", reduced.generators.size()},
                     {"reduced_relations", reduced.relations.size()}};
  summary << p.title << ": N=" << p.dimension() << ", " << p.generators.size() << " generators, "
          << p.raw_relation_count << " relations (" << reduced.generators.size() << " generators, "
          << reduced.relations.size() << " relations after reality reduction)\n";

  if (verb == "build") {
    const Presentation canon = canonicalize(p);
    report["presentation"] = {{"title", canon.title},
                              {"generators", generator_list(canon.generators)},
                              {"relations", relation_list(canon)}};
    result.verdict = "built " + p.title;
    return finish();
  }

  std::optional<KacReport> kac;
  std::optional<Presentation> quotient;
  if (wants(verb, {"kac", "match", "report", "numeric"})) {
    try {
      auto [kr, q] = watch.time("kac", [&] { return kac_fixpoint(p, config.options.lp_degree); });
      Json certs = Json::array();
      for (const auto& fg : kr.certificates) certs.push_back(certificate_json(fg));
      report["kac"] = {{"forced", generator_list(kr.forced)},
                       {"certificates", certs},
                       {"undetermined", generator_list(kr.undetermined)},
                       {"rounds", kr.rounds},
                       {"quotient",
                        {{"generators", generator_list(q.generators)}, {"relations", q.relations.size()}}}};
      summary << "kac: " << kr.forced.size() << " forced generators, " << kr.rounds << " rounds, "
              << kr.undetermined.size() << " undetermined\n";
      if (!kr.undetermined.empty()) result.exit_code = combine_exit(result.exit_code, kExitUndetermined);
      kac = std::move(kr);
      quotient = std::move(q);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Undetermined) throw;
      report["kac"] = {{"error", e.what()}};
      summary << "kac: undetermined (" << e.what() << ")\n";
      result.exit_code = combine_exit(result.exit_code, kExitUndetermined);
    }
    if (verb == "kac") {
      result.verdict = kac && kac->undetermined.empty()
                           ? "forced " + std::to_string(kac->forced.size()) + " generators in " +
                                 std::to_string(kac->rounds) + " rounds"
                           : "undetermined";
    }
  }

  if (wants(verb, {"match", "report"})) {
    if (!quotient) {
      result.verdict = "undetermined";
    } else {
      const KacTarget target = watch.time("target", [&] { return expected_kac_target(config.spec); });
      const MatchVerdict mv = watch.time(
          "match", [&] { return match_presentations(*quotient, target.target, target.renaming, config.options.membership_bound); });
      Json renaming = Json::object();
      for (const auto& [from, to] : mv.renaming.map) {
        if (quotient->has_generator(from)) renaming[to_string(from)] = to_string(to);
      }
      report["match"] = {{"matched", mv.matched},
                         {"mode", to_string(mv.mode)},
                         {"target", target.target.title},
                         {"renaming", renaming},
                         {"unmatched_derived", element_list(mv.unmatched_derived)},
                         {"unmatched_target", element_list(mv.unmatched_target)},
                         {"unmapped", generator_list(mv.unmapped)},
                         {"uncovered", generator_list(mv.uncovered)}};
      if (mv.matched) {
        result.verdict = kac->forced.empty() ? "matched self (no forced zeros)" : "matched " + target.target.title;
      } else {
        result.verdict = "mismatch against " + target.target.title;
        result.exit_code = combine_exit(result.exit_code, kExitMismatch);
      }
      summary << "match: " << (mv.matched ? "matched " : "no match against ") << target.target.title << " ("
              << to_string(mv.mode) << ")\n";
    }
  }

  if (wants(verb, {"hopf-check", "report"})) {
    HopfOptions opts;
    opts.bound = config.options.membership_bound;
    opts.relations = config.options.hopf_relations;
    const HopfReport hr = watch.time("hopf", [&] { return hopf_axiom_check(p, opts); });
    Json problems = Json::array();
    for (const auto& r : hr.results) {
      if (r.status != CheckStatus::Pass)
        problems.push_back({{"axiom", r.axiom}, {"item", r.item}, {"status", to_string(r.status)}});
    }
    Json hopf = {{"presentation", p.title},
                 {"bound", hr.bound},
                 {"checks", hr.results.size()},
                 {"pass", hr.count(CheckStatus::Pass)},
                 {"fail", hr.count(CheckStatus::Fail)},
                 {"inconclusive", hr.count(CheckStatus::Inconclusive)},
                 {"problems", problems}};
    const bool symplectic =
        config.spec.kind == BlockKind::CaseII && config.spec.blocks.size() == 1 && config.spec.blocks[0].q == 1;
    if (symplectic) hopf["central_morphism"] = central_morphism_check(p);
    report["hopf"] = hopf;
    summary << "hopf: " << hr.count(CheckStatus::Pass) << "/" << hr.results.size() << " pass, "
            << hr.count(CheckStatus::Fail) << " fail, " << hr.count(CheckStatus::Inconclusive) << " inconclusive\n";
    int code = kExitOk;
    if (hr.count(CheckStatus::Inconclusive)) code = kExitUndetermined;
    if (hr.count(CheckStatus::Fail) || (symplectic && !hopf["central_morphism"].get<bool>())) code = kExitMismatch;
    result.exit_code = combine_exit(result.exit_code, code);
    if (verb == "hopf-check") {
      result.verdict = code == kExitOk ? "hopf axioms pass"
                                       : "hopf axioms: " + std::to_string(hr.count(CheckStatus::Fail)) + " fail, " +
                                             std::to_string(hr.count(CheckStatus::Inconclusive)) + " inconclusive";
    }
  }

  if (wants(verb, {"numeric", "report"})) {
    Json numeric;
    const CMatrix identity = CMatrix::Identity(Eigen::Index(p.dimension()), Eigen::Index(p.dimension()));
    const ResidualReport classical =
        watch.time("classical", [&] { return eval_residual(p, classical_point(p, identity)); });
    numeric["classical_identity"] = {{"max_residual", format_double(classical.max)}, {"passes", classical.passes()}};
    const SearchOutcome found = watch.time("rep_search", [&] {
      return rep_search_restarts(p, config.options.dim, config.options.seed, config.options.restarts);
    });
    Json search = {{"dim", config.options.dim},
                   {"seed", config.options.seed},
                   {"restarts", config.options.restarts},
                   {"attempts", found.attempts},
                   {"found", found.point.has_value()}};
    if (found.point) {
      search["seed_used"] = found.seed;
      search["max_residual"] = format_double(found.residual);
      if (kac) {
        double forced_norm = 0;
        for (const auto& g : kac->forced) forced_norm = std::max(forced_norm, operator_norm(found.point->values.at(g)));
        search["forced_max_norm"] = format_double(forced_norm);
      }
    }
    numeric["rep_search"] = search;
    report["numeric"] = numeric;
    summary << "numeric: identity point residual " << format_double(classical.max) << "; rep_search n="
            << config.options.dim << (found.point ? " found (residual " + format_double(found.residual) + ")" : " not found")
            << " after " << found.attempts << " attempts\n";
    if (verb == "numeric") {
      result.verdict = found.point ? "representation found at n=" + std::to_string(config.options.dim)
                                   : "no representation found at n=" + std::to_string(config.options.dim);
    }
  }
  return finish();
}

std::string strip_timings(const std::string& report_json) {
  Json doc = Json::parse(report_json);
  doc.erase("timings");
  return doc.dump(2);
}

}  // namespace cqg
