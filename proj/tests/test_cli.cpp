#include <doctest.h>

#include <json.hpp>
#include <set>

#include "charp/cli.hpp"

using namespace charp;
using nlohmann::json;

namespace {

CliResult run(std::vector<std::string> args, std::string input = "") {
  return run_cli(args, [input] { return input; });
}

json run_json(std::vector<std::string> args, int expected_exit = 0) {
  args.push_back("--json");
  const CliResult r = run(args);
  INFO("stderr: " << r.err);
  CHECK(r.exit_code == expected_exit);
  return json::parse(r.out);
}

}  // namespace

TEST_CASE("worked CLI examples") {
  auto doc = run_json({"classify", "mu_p", "-p", "3", "-n", "1", "--form", "dlog(x)", "--chart", "x"});
  CHECK(doc["witnesses"][0]["f"] == "x");

  doc = run_json({"pcurv-brute", "-p", "3", "-n", "1", "--rank", "1", "--omega", "x*dx"});
  CHECK(doc["result"]["psi"][0][0][0] == "x^3");
  CHECK(doc["certificates"]["rank1_oracle"] == "x^3");

  doc = run_json({"classify", "aff1", "-p", "3", "-n", "1", "--omega", "dlog(x)", "--omegap", "x*dx", "--chart", "x"},
                 1);
  CHECK(doc["reason"] == "ConditionThreeFailed");
}

TEST_CASE("every subcommand runs") {
  const std::vector<std::vector<std::string>> calls = {
      {"eval", "-e", "dlog(x) * dx"},
      {"poly", "--op", "gcd", "-a", "x^2 - 1", "-b", "x + 1"},
      {"cartier", "--form", "x^2*dx"},
      {"gamma", "--form", "dx"},
      {"antider", "--form", "x*dx"},
      {"logwitness", "--form", "2*dx/x", "--chart", "x"},
      {"dlog", "-f", "x^2"},
      {"mc", "--matrix", "x, 0; 0, 1", "--tag", "gl(2)"},
      {"curv", "--connection", "dx/x"},
      {"pcurv-brute", "--omega", "x*dx"},
      {"pcurv-abelian", "--form", "x^2*dx", "--tag", "g_m"},
      {"classify", "alpha_p", "--form", "x*dx"},
      {"boundary", "--tag", "aff1", "--matrix", "x, x^2; 0, 1"},
      {"cocycle", "--witness", "x, x + 1 : x", "--witness", "x, x + 1 : x*(x + 1)^3"},
      {"crosscheck", "--battery", "cocycle", "--trials", "3"},
  };
  std::set<std::string> seen;
  for (auto args : calls) {
    seen.insert(args.front());
    args.insert(args.begin() + 1, {"-p", "3"});
    const json doc = run_json(args);
    CHECK(doc["schema"] == 1);
    CHECK(doc["command"] == args.front());
    for (const char* key : {"p", "nvars", "inputs", "result", "certificates", "witnesses", "reason"})
      CHECK_MESSAGE(doc.contains(key), args.front() << " lacks " << key);
  }
  for (const auto& name : cli_subcommands()) CHECK_MESSAGE(seen.count(name), name << " not exercised");
}

TEST_CASE("results that need more than one variable") {
  auto doc = run_json({"cartier", "-p", "3", "-n", "2", "--form", "x^3*y^2*dy"});
  CHECK(doc["result"] == "x*dy");
  doc = run_json({"poly", "-p", "3", "-n", "2", "--op", "diff", "-a", "x^2*y", "--var", "1"});
  CHECK(doc["result"] == "2*x*y");
  doc = run_json({"curv", "-p", "3", "-n", "2", "--omega", "y*dx"});
  CHECK(doc["certificates"]["flat"] == false);
}

TEST_CASE("exit codes") {
  CHECK(run({"classify", "mu_p", "-p", "3", "--form", "x*dx"}).exit_code == kExitRejected);
  CHECK(run({"cartier", "-p", "3", "--form", "x^^2"}).exit_code == kExitInputError);
  CHECK(run({"cartier", "-p", "4", "--form", "dx"}).exit_code == kExitInputError);
  CHECK(run({"cartier", "-p", "3", "-n", "2", "--form", "y*dx"}).exit_code == kExitInputError);
  CHECK(run({"nosuch"}).exit_code == kExitInputError);
  CHECK(run({}).exit_code == kExitInputError);
  CHECK(run({"cocycle", "-p", "3", "--witness", "x : x", "--witness", "x + 1 : x + 1"}).exit_code == kExitInputError);
  CHECK(run({"cocycle", "-p", "3", "--witness", "x"}).exit_code == kExitInputError);

  const json err = run_json({"cartier", "-p", "3", "--form", "x^^2"}, kExitInputError);
  CHECK(err["error"]["code"] == "SyntaxError");
}

TEST_CASE("large primes are capped") {
  CHECK(run({"cartier", "-p", "37", "--form", "dx"}).exit_code == kExitInputError);
  CHECK(run({"cartier", "-p", "31", "--form", "x^30*dx"}).exit_code == kExitOk);
}

TEST_CASE("stdin replaces the primary expression") {
  const CliResult a = run({"cartier", "-p", "3", "--stdin", "--json"}, "x^2*dx\n");
  REQUIRE(a.exit_code == 0);
  CHECK(json::parse(a.out)["result"] == "dx");
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args = {"crosscheck", "-p", "3", "--battery", "gm-equivalence", "--trials", "10",
                                         "--seed", "5", "--json"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> cls = {"classify", "mu_p", "-p", "5", "-n", "2", "--form", "dlog(x*y^2*(x + y))"};
  CHECK(run(cls).out == run(cls).out);
}

TEST_CASE("text output") {
  const CliResult r = run({"dlog", "-p", "3", "-f", "x^2"});
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("result: 2/x*dx") != std::string::npos);
}
