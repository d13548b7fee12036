#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "geored/pipeline.hpp"
#include "geored/report.hpp"
#include "geored/scenario.hpp"

using namespace geo;

namespace {

const char* kTiny = R"(
scenario = tiny
k = 1

[chart]
coords = "q, p, z"

[form.eta]
eta.1 = "d(z) - p*d(q)"
)";

std::string expect_error(const std::string& text) {
  try {
    parse_scenario(text, "buf.scn");
  } catch (const ScenarioError& e) {
    return e.what();
  }
  return "";
}

bool has(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("every registry entry survives a serialize and parse round trip") {
  for (const std::string& id : registry_ids()) {
    const Scenario& s = scenario_by_id(id);
    Scenario back = parse_scenario(serialize_scenario(s), id + ".rt");
    CHECK(scenario_equal(s, back));
  }
}

TEST_CASE("shipped scenario files reproduce the built-in worked examples") {
  for (const char* id : {"coupled_strings", "damped_wave", "gl2_example"}) {
    Scenario f = load_scenario(std::string("scenarios/") + id + ".scn");
    CHECK(scenario_equal(scenario_by_id(id), f));
  }
}

TEST_CASE("the minimal structure-only scenario loads") {
  Scenario s = parse_scenario(kTiny, "buf.scn");
  CHECK(s.id == "tiny");
  CHECK(s.k == 1);
  CHECK(s.kc.has_value());
  CHECK_FALSE(s.ks.has_value());
}

TEST_CASE("loader errors carry the origin and line number") {
  std::string msg = expect_error(std::string(kTiny) + "\n[chart]\ncoords = \"w\"\n");
  CHECK(has(msg, "buf.scn:"));
  CHECK(has(msg, "duplicate section [chart]"));
  // the line number points at the offending line
  CHECK(has(msg, "buf.scn:10:"));
}

TEST_CASE("unknown keys are rejected with the section name") {
  std::string text(kTiny);
  text.insert(text.find("[form.eta]"), "bogus = \"1\"\n\n");
  CHECK(has(expect_error(text), "unknown key 'bogus' in [chart]"));
}

TEST_CASE("form terms must all have the declared degree") {
  std::string text(kTiny);
  text.replace(text.find("\"d(z) - p*d(q)\""), 15, "\"d(z)*d(q) - p\"");
  CHECK(has(expect_error(text), "VForm degree mismatch"));
}

TEST_CASE("differentials of unknown coordinates are rejected") {
  std::string text(kTiny);
  text.replace(text.find("d(z) - p*d(q)"), 13, "d(z) - p*d(w)");
  CHECK(has(expect_error(text), "d(w) of unknown coordinate"));
}

TEST_CASE("component keys must be numbered contiguously from one") {
  const char* text = R"(
scenario = bad
k = 2

[chart]
coords = "q, p1, p2, z1, z2"

[form.eta]
eta.1 = "d(z1) - p1*d(q)"
eta.3 = "d(z2) - p2*d(q)"
)";
  CHECK(has(expect_error(text), "components must be numbered 1..2"));
}

TEST_CASE("self-referential bindings are rejected") {
  const char* text = R"(
scenario = bad
k = 1
opaque C : 1 arg

[chart]
coords = "q, p, z"

[bindings]
C = "q -> C(q) + 1"

[form.eta]
eta.1 = "d(z) - p*d(q)"
)";
  CHECK(has(expect_error(text), "binding for 'C' refers to itself"));
}

TEST_CASE("declared brackets must match the commutators of the fields") {
  const char* text = R"(
scenario = bad
k = 1

[chart]
coords = "q, p, z"

[form.eta]
eta.1 = "d(z) - p*d(q)"

[algebra]
basis = "a, b"
"a,b" = "a"

[action]
a = "1; 0; 0"
b = "0; 1; 0"
)";
  CHECK(has(expect_error(text), "fundamental fields do not close under the declared brackets"));
}

TEST_CASE("a wrong reduced form loads but fails the reduction stage") {
  std::string text = serialize_scenario(scenario_by_id("gl2_example"));
  size_t at = text.find("eta_red.1");
  REQUIRE(at != std::string::npos);
  size_t eol = text.find('\n', at);
  text.replace(at, eol - at, "eta_red.1 = \"d(t) - 2*x4*d(x3)\"");

  Scenario s = parse_scenario(text, "mut.scn");
  RunReport rep = run_pipeline(s, 20, kDefaultSeed);
  CHECK(rep.reduction.verdict == "fail");
  CHECK(has(rep.reduction.witness, "d(t)"));
  CHECK_FALSE(rep.pass);  // the scenario still expects reduction = pass
}

TEST_CASE("pipeline reports are byte-identical across repeated runs") {
  const Scenario& s = scenario_by_id("sl2_counterexample");
  std::string a = to_json(run_pipeline(s, 15, 7u)).dump(2);
  std::string b = to_json(run_pipeline(s, 15, 7u)).dump(2);
  CHECK(a == b);
  CHECK(a.find("\"ms\"") == std::string::npos);  // timings only on request
}

TEST_CASE("every registry entry passes its own expectations") {
  for (const std::string& id : registry_ids()) {
    RunReport rep = run_pipeline(scenario_by_id(id), 25, kDefaultSeed);
    CHECK(rep.pass);
    if (!rep.pass)
      for (const std::string& m : rep.mismatches) MESSAGE(id, ": ", m);
  }
}
