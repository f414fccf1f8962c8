#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "monospec/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  json body() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = monospec::cli::run(args, out, err);
  return {code, out.str()};
}

std::string fixture(const std::string& name) { return std::string(MONOSPEC_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("cli jgroup count") {
  const auto r = run({"jgroup", "--n", "15", "--count"});
  CHECK(r.code == monospec::cli::kExitOk);
  CHECK(r.body()["j_plus_order"] == 256);
  const auto e = run({"jgroup", "--n", "5"});
  CHECK(e.body()["members"].size() == 16);
}

TEST_CASE("cli verify") {
  const auto a = run({"verify", "--n", "5"});
  CHECK(a.code == monospec::cli::kExitOk);
  CHECK(a.body()["verdict"] == "yes");
  CHECK(a.body()["order"] == 160);
  CHECK(a.body()["case_split"]["holds"] == true);
  CHECK(run({"verify", "--n", "5"}).out == a.out);

  const auto s1 = run({"verify", "--n", "9", "--sample", "500", "--seed", "3"});
  const auto s2 = run({"verify", "--n", "9", "--sample", "500", "--seed", "3"});
  CHECK(s1.code == monospec::cli::kExitOk);
  CHECK(s1.out == s2.out);
  CHECK(s1.body()["sampled"] == true);

  const auto custom = run({"verify", "--n", "3", "--d", "[[1,1,0]]"});
  CHECK(custom.body()["order"] == 12);
}

TEST_CASE("cli errors map to exit codes") {
  const auto even = run({"verify", "--n", "4"});
  CHECK(even.code == monospec::cli::kExitInvalidInput);
  CHECK(even.body()["error"] == "EvenN");
  CHECK(run({"verify", "--n", "5", "--sample", "10"}).code == monospec::cli::kExitInvalidInput);
  CHECK(run({"verify", "--n", "5", "--d", "[[1,0"}).code == monospec::cli::kExitInvalidInput);
  CHECK(run({"recover", "--file", fixture("missing.json")}).code == monospec::cli::kExitInvalidInput);
  CHECK(run({"nosuch"}).code == monospec::cli::kExitInvalidInput);

  const auto cap = run({"--cap", "10", "recover", "--file", fixture("c5j5_hidden.json")});
  CHECK(cap.code == monospec::cli::kExitCapExceeded);
  CHECK(cap.body()["error"] == "CapExceeded");

  const std::string bad = "cli_malformed.json";
  std::ofstream(bad) << "{\"conductor\": 1, \"n\": 2, \"generators\": [";
  CHECK(run({"commutators", "--file", bad}).code == monospec::cli::kExitInvalidInput);
  std::remove(bad.c_str());
}

TEST_CASE("cli commutators witness recheck") {
  const auto r = run({"commutators", "--file", fixture("quat2.json"), "--recheck"});
  CHECK(r.code == monospec::cli::kExitPropertyFails);
  const json b = r.body();
  CHECK(b["verdict"] == "no");
  CHECK(b["recheck"] == true);
  CHECK(b["char_poly"]["coeffs"] == json::parse("[[4,1,0],[0,1,0],[1,1,0]]"));
  const auto ok = run({"commutators", "--file", fixture("c3j3.json")});
  CHECK(ok.code == monospec::cli::kExitOk);
}

TEST_CASE("cli recover and monomialize") {
  const auto r = run({"recover", "--file", fixture("c5j5_hidden.json")});
  CHECK(r.code == monospec::cli::kExitOk);
  CHECK(r.body()["outcome"] == "theorem_form");
  CHECK(r.body()["n"] == 5);
  CHECK(r.body()["d"]["order"] == "16");

  const auto q = run({"recover", "--file", fixture("quat2.json")});
  CHECK(q.code == monospec::cli::kExitPropertyFails);
  CHECK(q.body()["outcome"] == "counterexample");

  const auto m = run({"monomialize", "--file", fixture("c3c5_hidden.json")});
  CHECK(m.code == monospec::cli::kExitOk);
  CHECK(m.body()["orders"] == json::array({15}));
}

TEST_CASE("cli split and spectrum") {
  const auto s = run({"split", "--file", fixture("xi9.json"), "--x-order", "2", "--y-order", "3"});
  CHECK(s.code == monospec::cli::kExitPropertyFails);
  CHECK(s.body()["errors"] == json::array({"NotDivisible", "SplitImpossible"}));

  const std::string poly = "cli_poly.json";
  std::ofstream(poly) << R"({"coeffs": [-2, 0, 1]})";
  const auto p = run({"spectrum", "--file", poly});
  CHECK(p.code == monospec::cli::kExitOk);
  CHECK(p.body()["verdict"] == "yes");
  std::ofstream(poly) << R"({"coeffs": [1, 0, 1]})";
  CHECK(run({"spectrum", "--file", poly}).code == monospec::cli::kExitPropertyFails);
  std::remove(poly.c_str());
}

TEST_CASE("cli human format") {
  const auto r = run({"jgroup", "--n", "3", "--format", "human"});
  CHECK(r.code == monospec::cli::kExitOk);
  CHECK(r.out.find("j_plus_order: 4") != std::string::npos);
}
