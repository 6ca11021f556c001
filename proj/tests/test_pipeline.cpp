// Copyright 2026 The cqgkac Authors
// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <string>

#include "cqg/error.hpp"
#include "cqg/pipeline.hpp"
#include "json.hpp"
#include "support.hpp"

using namespace cqg;
using Json = nlohmann::json;

namespace {

std::string config_field(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    const std::string what = e.what();
    return what.substr(0, what.find(':'));
  }
  return "";
}

RunResult run_text(const std::string& text, const std::string& verb) {
  RunConfig c = parse_config(text);
  c.verb = verb;
  return run(c);
}

}  // namespace

TEST_CASE("config parsing") {
  const RunConfig c = parse_config(
      R"({"kind":"case-I","blocks":[{"q":"1/3","m":1},{"q":"1/2","m":2}],"trailing":1,"verb":"match",)"
      R"("options":{"membership_bound":3,"seed":9,"dim":2}})");
  CHECK(c.spec.kind == BlockKind::CaseI);
  CHECK(c.spec.blocks.size() == 2);
  CHECK(c.spec.blocks[1].q == Rational(1, 2));
  CHECK(c.spec.trailing == 1);
  CHECK(c.verb == "match");
  CHECK(c.options.membership_bound == 3);
  CHECK(c.options.seed == 9);
  CHECK(c.options.dim == 2);
  CHECK(c.options.restarts == 50);
}

TEST_CASE("config errors point at the field") {
  CHECK(config_field("not json") == "config");
  CHECK(config_field("[]") == "config");
  CHECK(config_field(R"({"blocks":[]})") == "kind");
  CHECK(config_field(R"({"kind":"case-X","blocks":[]})") == "kind");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"3/2","m":1}]})") == "blocks[0].q");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":0.5,"m":1}]})") == "blocks[0].q");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2"}]})") == "blocks[0].m");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2","m":1,"x":1}]})") == "blocks[0].x");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2","m":1}],"epsilon":0})") == "epsilon");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2","m":1}],"colour":1})") == "colour");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2","m":1}],"verb":"fly"})") == "verb");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2","m":1}],"options":{"dim":0}})") == "options.dim");
  CHECK(config_field(R"({"kind":"one-block","blocks":[{"q":"1/2","m":1}],"options":{"seed":-1}})") == "options.seed");
  CHECK(config_field(R"({"kind":"case-II","blocks":[{"q":"1/2","m":1}],"trailing":2})") == "trailing");
}

TEST_CASE("config round trip") {
  testing::Gen gen(17);
  for (int i = 0; i < 200; ++i) {
    RunConfig c;
    c.spec = gen.spec();
    c.verb = gen.pick(run_verbs());
    c.options.lp_degree = gen.uniform(0, 1);
    c.options.membership_bound = gen.uniform(1, 8);
    c.options.seed = static_cast<std::uint64_t>(gen.uniform(0, 1 << 30));
    c.options.dim = gen.uniform(1, 4);
    c.options.restarts = gen.uniform(1, 100);
    c.options.hopf_relations = gen.coin();
    CHECK(parse_config(serialize_config(c)) == c);
  }
}

TEST_CASE("verbs and verdicts") {
  SUBCASE("one block match") {
    const RunResult r = run_text(R"({"kind":"one-block","blocks":[{"q":"1/2","m":2}],"epsilon":1})", "match");
    CHECK(r.exit_code == 0);
    CHECK(r.verdict == "matched Pol(U_2^+)");
  }
  SUBCASE("case I match") {
    const RunResult r =
        run_text(R"({"kind":"case-I","blocks":[{"q":"1/3","m":1},{"q":"1/2","m":2}],"trailing":1})", "match");
    CHECK(r.exit_code == 0);
    CHECK(r.verdict == "matched U_1^+ * U_2^+ * O_1^+");
  }
  SUBCASE("identity twist self match") {
    const RunResult r = run_text(R"({"kind":"unitary","blocks":[{"q":"1","m":3}]})", "match");
    CHECK(r.exit_code == 0);
    CHECK(r.verdict == "matched self (no forced zeros)");
  }
  SUBCASE("build emits the presentation") {
    const RunResult r = run_text(R"({"kind":"unitary","blocks":[{"q":"1","m":1}]})", "build");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.report_json);
    CHECK(j["presentation"]["generators"] == Json::array({"u[1,1]"}));
    CHECK(j["sizes"]["generators"] == 1);
  }
  SUBCASE("kac report carries certificates") {
    const RunResult r = run_text(R"({"kind":"one-block","blocks":[{"q":"1/3","m":1}],"epsilon":-1})", "kac");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.report_json);
    REQUIRE(j["kac"]["certificates"].size() == 1);
    const Json& cert = j["kac"]["certificates"][0];
    CHECK(cert["generator"] == "u[2,1]");
    CHECK(cert["verified"] == true);
    CHECK_FALSE(cert["terms"].empty());
    CHECK(cert["terms"][0].contains("equation"));
    CHECK(cert["terms"][0].contains("multiplier"));
  }
  SUBCASE("hopf-check on SU(2)") {
    const RunResult r = run_text(R"({"kind":"case-II","blocks":[{"q":"1","m":1}]})", "hopf-check");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.report_json);
    CHECK(j["hopf"]["central_morphism"] == true);
    CHECK(j["hopf"]["fail"] == 0);
  }
  SUBCASE("numeric") {
    const RunResult r = run_text(R"({"kind":"unitary","blocks":[{"q":"1","m":1}]})", "numeric");
    CHECK(r.exit_code == 0);
    const Json j = Json::parse(r.report_json);
    CHECK(j["numeric"]["classical_identity"]["passes"] == true);
    CHECK(j["numeric"]["rep_search"]["found"] == true);
  }
  SUBCASE("a bad verb is a config error") {
    RunConfig c = parse_config(R"({"kind":"unitary","blocks":[{"q":"1","m":1}]})");
    c.verb = "fly";
    const RunResult r = run(c);
    CHECK(r.exit_code == kExitConfig);
    CHECK(r.verdict.find("verb") != std::string::npos);
  }
}

TEST_CASE("report schema and determinism") {
  const std::string text = R"({"kind":"case-II","blocks":[{"q":"1/2","m":1},{"q":"1","m":1}]})";
  const RunResult a = run_text(text, "report");
  const RunResult b = run_text(text, "report");
  CHECK(a.exit_code == 0);
  CHECK(strip_timings(a.report_json) == strip_timings(b.report_json));
  const Json j = Json::parse(a.report_json);
  for (const char* key : {"input", "verb", "sizes", "kac", "match", "hopf", "numeric", "timings", "verdict", "exit_code"})
    CHECK_MESSAGE(j.contains(key), key);
  for (const char* key : {"forced", "certificates", "undetermined", "rounds"}) CHECK(j["kac"].contains(key));
  for (const char* key : {"matched", "mode", "renaming"}) CHECK(j["match"].contains(key));
  CHECK(j["timings"].is_object());
  CHECK_FALSE(Json::parse(strip_timings(a.report_json)).contains("timings"));
  CHECK(j["input"]["blocks"][0]["q"] == "1/2");
}
