#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string cli() { return std::string("\"") + TRSYS_CLI_PATH + "\""; }

// Runs a full shell command, capturing stdout; stderr is discarded.
RunResult shell(const std::string& cmd) {
  RunResult res;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  if (WIFEXITED(status)) res.exit_code = WEXITSTATUS(status);
  return res;
}

RunResult run(const std::string& args) { return shell(cli() + " " + args); }

const std::string kGoldenSet =
    "0,1,6,8,13,14,15,20,21,22,27,29,34";
const std::string kPEdge = "'[[[0,0],[1,0]]]'";

}  // namespace

TEST_CASE("cli: subgroups") {
  const auto res = run("subgroups --order 5,1,7,1");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["command"] == "subgroups");
  CHECK(doc["count"] == 4);
  REQUIRE(doc["subgroups"].size() == 4);
  CHECK(doc["subgroups"][3]["label"] == "5·7");
  CHECK(doc["subgroups"][3]["order"] == 35);

  const auto text = run("subgroups --order 5,1,7,1 --format text");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("(1,1)") != std::string::npos);
}

TEST_CASE("cli: enumerate saturated systems") {
  const auto res = run("enumerate --order 5,1,7,1 --saturated");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["count"] == 7);
  CHECK(doc["systems"].size() == 7);
  for (const auto& sys : doc["systems"]) CHECK(sys["saturated"] == true);
}

TEST_CASE("cli: verify accepts the published example") {
  const auto res = run("verify --order 5,1,7,1 --set " + kGoldenSet +
                       " --edges " + kPEdge);
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["match"] == true);
  CHECK(doc["saturated"] == true);
  CHECK(doc["star"] == true);
}

TEST_CASE("cli: verify rejects a wrong set with exit 1") {
  const auto res = run("verify --order 5,1,7,1 --set 0 --edges " + kPEdge);
  REQUIRE(res.exit_code == 1);
  const json doc = json::parse(res.out);
  CHECK(doc["match"] == false);
}

TEST_CASE("cli: verify demands closed edges unless --close is given") {
  const std::string diag = "'[[[0,0],[1,1]]]'";
  const auto bare =
      run("verify --order 5,1,7,1 --set 0 --edges " + diag);
  CHECK(bare.exit_code == 2);
  const auto closed =
      run("verify --order 5,1,7,1 --set 0 --edges " + diag + " --close");
  CHECK(closed.exit_code == 1);  // well-formed request, realization differs
}

TEST_CASE("cli: realize reproduces the published set and verifies itself") {
  const std::string cmd = "realize --order 5,1,7,1 --edges " + kPEdge +
                          " --bezout -2,3 --offset-policy paper-c35";
  const auto res = run(cmd);
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["set"]["members"] ==
        json::parse("[0,1,6,8,13,14,15,20,21,22,27,29,34]"));
  CHECK(doc["bezout"]["u"] == -2);
  CHECK(doc["bezout"]["v"] == 3);
  CHECK(doc["realized_matches"] == true);
  CHECK(doc["star"] == true);
  REQUIRE(doc["trace"].size() == 4);
  CHECK(doc["trace"][3]["case"] == "IVd");

  const auto again = run(cmd);
  CHECK(again.exit_code == 0);
  CHECK(again.out == res.out);  // byte-identical across runs
}

TEST_CASE("cli: realize output feeds verify over a pipe") {
  const auto res = shell(cli() + " realize --order 5,1,7,1 --edges " + kPEdge +
                         " | " + cli() + " verify --from -");
  CHECK(res.exit_code == 0);
}

TEST_CASE("cli: oracle confirms realizability on a chain order") {
  const auto res = run("oracle --order 5,1,7,0");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["pass"] == true);
  CHECK(doc["exhaustive"] == true);
  CHECK(doc["sets_swept"] == 4);
  CHECK(doc["realizable_saturated"] == 2);
  CHECK(doc["unrealizable_saturated"].empty());
}

TEST_CASE("cli: oracle flags the C_10 counterexample") {
  const auto res = run("oracle --order 10");
  REQUIRE(res.exit_code == 1);
  const json doc = json::parse(res.out);
  CHECK(doc["pass"] == false);
  REQUIRE(doc["unrealizable_saturated"].size() == 1);
  CHECK(doc["unrealizable_saturated"][0] == json::parse("[[[0,0],[0,1]]]"));
}

TEST_CASE("cli: oracle sampling mode") {
  const auto res = run("oracle --order 5,1,7,1 --sample 200 --seed 5");
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["exhaustive"] == false);
  CHECK(doc["sets_swept"] == 200);
  const auto again = run("oracle --order 5,1,7,1 --sample 200 --seed 5");
  CHECK(again.out == res.out);
}

TEST_CASE("cli: oracle rejects oversized sweeps and bad moduli") {
  CHECK(run("oracle --order 35 --cap 10").exit_code == 2);
  CHECK(run("oracle --order 30").exit_code == 2);  // three prime factors
  CHECK(run("oracle --order 5,1,7,1 --seed 3").exit_code == 2);  // seed sans sample
}

TEST_CASE("cli: compare-macbrough on both instance shapes") {
  const auto res = run("compare-macbrough --order 5,1,7,1 --edges " + kPEdge);
  REQUIRE(res.exit_code == 0);
  const json doc = json::parse(res.out);
  CHECK(doc["tightpair_set"]["members"] ==
        json::parse("[0,2,5,7,12,14,21,23,28,30,33]"));
  CHECK(doc["sets_equal"] == false);
  CHECK(doc["construction_realizes"] == true);
  CHECK(doc["tightpair_realizes"] == true);

  const auto chain =
      run("compare-macbrough --order 5,2,7,0 --edges '[[[1,0],[2,0]]]'");
  REQUIRE(chain.exit_code == 0);
  const json cdoc = json::parse(chain.out);
  CHECK(cdoc["sets_equal"] == true);

  CHECK(run("compare-macbrough --order 5,2,7,1 --edges " + kPEdge)
            .exit_code == 2);
}

TEST_CASE("cli: export-dot writes the drawing") {
  const std::string expect =
      "digraph transfer_system {\n"
      "  rankdir=BT;\n"
      "  node [shape=box, fontname=\"monospace\"];\n"
      "  s0_0 [label=\"1\"];\n"
      "  s0_1 [label=\"7\"];\n"
      "  s1_0 [label=\"5\"];\n"
      "  s1_1 [label=\"5·7\"];\n"
      "  s0_0 -> s1_0;\n"
      "}\n";
  const auto res = run("export-dot --order 5,1,7,1 --edges " + kPEdge);
  REQUIRE(res.exit_code == 0);
  CHECK(res.out == expect);

  const std::string path = "/tmp/trsys_cli_test.gv";
  const auto to_file = run("export-dot --order 5,1,7,1 --edges " + kPEdge +
                           " --out " + path);
  CHECK(to_file.exit_code == 0);
  std::ifstream in(path);
  const std::string written((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  CHECK(written == expect);
  std::remove(path.c_str());
}

TEST_CASE("cli: usage errors exit with 2, help with 0") {
  CHECK(run("").exit_code == 2);
  CHECK(run("no-such-command").exit_code == 2);
  CHECK(run("subgroups").exit_code == 2);  // missing --order
  CHECK(run("subgroups --order 5,1,7,1 --format yaml").exit_code == 2);
  CHECK(run("realize --order 5,1,7,1").exit_code == 2);  // missing --edges
  CHECK(run("--help").exit_code == 0);
  CHECK(run("verify --order 5,1,7,1 --set 0,x --edges " + kPEdge)
            .exit_code == 2);
}
