#include <fstream>

#include "doctest.h"
#include "vwb/driver.hpp"

using namespace vwb;

namespace {

JobSpec job(const std::string& cmd, const std::string& type, int p, std::vector<int> lambda = {}) {
  JobSpec j;
  j.command = cmd;
  j.type = type;
  j.p = p;
  j.lambda = std::move(lambda);
  return j;
}

int exit_of(const JobSpec& j) {
  try {
    return run(j).exit_code;
  } catch (const Error& e) {
    return exit_code_for(e);
  }
}

json load_schema(const std::string& name) {
  std::ifstream in(std::string(VWB_SCHEMA_DIR) + "/" + name + ".schema.json");
  REQUIRE(in.good());
  return json::parse(in);
}

}  // namespace

TEST_CASE("jantzen A1 p=3 lambda=1") {
  RunResult r = run(job("jantzen", "A1", 3, {1}));
  CHECK(r.exit_code == 0);
  CHECK(r.report["N"] == 1);
  CHECK(r.report["layer_dims"] == json::array({1, 0}));
  CHECK(r.report["schema"] == "vwb.jantzen.v1");
}

TEST_CASE("chain A1 p=3 lambda=2 is an isomorphism") {
  RunResult r = run(job("chain", "A1", 3, {2}));
  CHECK(r.exit_code == 0);
  CHECK(r.report["composite_exponent"] == 0);
  CHECK(r.report["isomorphism"] == true);
}

TEST_CASE("info reports N when lambda is given") {
  json a = run(job("info", "A1", 3)).report;
  CHECK_FALSE(a.contains("N"));
  json b = run(job("info", "A1", 3, {1})).report;
  CHECK(b["N"] == 1);
  CHECK(b["verma_dim"] == 3);
}

TEST_CASE("input errors exit with 2") {
  CHECK(exit_of(job("info", "A2", 3)) == 2);        // bad prime
  CHECK(exit_of(job("info", "G2", 7)) == 2);        // unknown type
  CHECK(exit_of(job("jantzen", "A2", 5, {1})) == 2);  // lambda length
  CHECK(exit_of(job("frobnicate", "A1", 3)) == 2);
  JobSpec d = job("decompose", "A1", 3, {0});
  CHECK(exit_of(d) == 2);  // missing seed
  d.seed_given = true;
  CHECK(exit_of(d) == 0);
  JobSpec cap = job("info", "A1", 3);
  cap.dim_cap = 8192;
  CHECK(exit_of(cap) == 2);
  cap.unsafe_cap = true;
  CHECK(exit_of(cap) == 0);
  JobSpec small = job("verma", "A2", 5, {0, 0});
  small.dim_cap = 64;  // dim 125
  CHECK(exit_of(small) == 2);
  JobSpec tr = job("info", "A1", 3);
  tr.trunc_M = 1;
  CHECK(exit_of(tr) == 2);
  JobSpec bx = job("audit", "A1", 3);
  bx.box = 17;
  CHECK(exit_of(bx) == 2);
}

TEST_CASE("error json carries code and detail") {
  try {
    run(job("info", "A2", 3));
    FAIL("expected UnsupportedType");
  } catch (const Error& e) {
    json j = error_json(e);
    CHECK(j["error"] == "UnsupportedType");
    CHECK(j["detail"].is_string());
  }
}

TEST_CASE("reports carry the keys their schema requires") {
  std::vector<JobSpec> js;
  js.push_back(job("info", "A1", 3, {1}));
  js.push_back(job("orbit", "A1", 3, {0}));
  js.push_back(job("verma", "A1", 3, {1}));
  js.push_back(job("chain", "A1", 5, {1}));
  js.push_back(job("jantzen", "A2", 2, {0, 1}));
  js.push_back(job("decompose", "A1", 3, {0}));
  js.back().module = "torus";
  js.push_back(job("probe", "A1", 3, {1}));
  js.push_back(job("akfilt", "A1", 3, {4}));
  js.back().nu = {0};
  js.back().module = "cover";
  js.push_back(job("sumcheck", "A1", 3));
  js.push_back(job("audit", "A1", 3));
  js.back().box = 2;
  for (auto& j : js) {
    CAPTURE(j.command);
    j.seed_given = true;
    json r = run(j).report;
    json s = load_schema(j.command);
    for (const auto& key : s["required"]) {
      CAPTURE(key.get<std::string>());
      CHECK(r.contains(key.get<std::string>()));
    }
    CHECK(r["schema"] == s["properties"]["schema"]["const"]);
  }
  json e = load_schema("error");
  CHECK(e["required"] == json::array({"error", "detail"}));
}

TEST_CASE("decompose torus projective A1 p=3") {
  JobSpec j = job("decompose", "A1", 3, {0});
  j.module = "torus";
  j.seed_given = true;
  json r = run(j).report;
  CHECK(r["dim"] == 9);
  CHECK(r["summands"].size() == 2);
  CHECK(r["dims_add_up"] == true);
}

TEST_CASE("sumcheck: A2 p=2 passes for I empty, degenerate for I={1}") {
  JobSpec j = job("sumcheck", "A2", 2);
  j.box = 2;
  j.seed = 7;
  j.seed_given = true;
  RunResult a = run(j);
  CHECK(a.exit_code == 0);
  CHECK(a.report["ok"] == true);
  j.levi = {0};
  RunResult b = run(j);
  CHECK(b.exit_code == 1);
  for (const auto& sub : {"sumfor1", "sumfor2"})
    for (const auto& f : b.report[sub]["failures"]) {
      REQUIRE(f.contains("failure"));
      CHECK(f["failure"].get<std::string>().rfind("DegeneratePairing", 0) == 0);
    }
}

TEST_CASE("runs are deterministic") {
  JobSpec j = job("probe", "A1", 5, {2});
  j.seed = 11;
  j.seed_given = true;
  CHECK(run(j).report.dump() == run(j).report.dump());
  JobSpec s = job("sumcheck", "A1", 3);
  s.seed = 3;
  s.seed_given = true;
  CHECK(run(s).report.dump() == run(s).report.dump());
}

TEST_CASE("render_table flattens nested json") {
  json j = {{"a", 1}, {"b", {{"c", true}}}, {"d", json::array({1, 2})}};
  std::string t = render_table(j);
  CHECK(t.find("a") != std::string::npos);
  CHECK(t.find("b.c") != std::string::npos);
  CHECK(t.find("true") != std::string::npos);
  CHECK_FALSE(render_table(run(job("jantzen", "A1", 3, {1})).report).empty());
}
