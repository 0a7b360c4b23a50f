#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

std::string fixture(const std::string& name) {
  return std::string(FIXTURE_DIR) + "/" + name;
}

struct Run {
  int code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  std::string cmd = std::string(CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  Run r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WEXITSTATUS(st);
  return r;
}

std::string write_temp(const std::string& text) {
  std::string path = "/tmp/unaware_cli_test.game";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("validate: exit codes and formats") {
  Run ok = run_cli("validate " + fixture("g2.game"));
  CHECK(ok.code == 0);
  CHECK(ok.out.find("valid") != std::string::npos);

  Run j = run_cli("validate --format json " + fixture("g2.game"));
  CHECK(j.code == 0);
  json doc = json::parse(j.out);
  CHECK(doc["schema"] == 1);
  CHECK(doc["valid"] == true);
  CHECK(doc["issues"].empty());

  // A semantically broken game: same-tree view omitting the node.
  std::string broken = write_temp(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "active": ["A"], "actions": {"A": ["x", "y"]}},
      {"id": "n1", "parent": "n0", "action_profile": {"A": "x"},
       "active": ["A"], "actions": {"A": ["x", "y"]}},
      {"id": "z0", "parent": "n1", "action_profile": {"A": "x"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z1", "parent": "n1", "action_profile": {"A": "y"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z2", "parent": "n0", "action_profile": {"A": "y"}, "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": [
      {"tree": "T", "node": "n0", "player": "A", "target_tree": "T", "target_nodes": ["n0"]},
      {"tree": "T", "node": "n1", "player": "A", "target_tree": "T", "target_nodes": ["n0"]}]})");
  Run bad = run_cli("validate --format json " + broken);
  CHECK(bad.code == 1);
  json bd = json::parse(bad.out);
  CHECK(bd["valid"] == false);
  CHECK(!bd["issues"].empty());

  CHECK(run_cli("validate /nonexistent.game").code == 1);
  CHECK(run_cli("validate").code == 2);
  CHECK(run_cli("frobnicate x").code == 2);
  CHECK(run_cli("solve --concept nonsense " + fixture("g2.game")).code == 2);
  CHECK(run_cli("--help").code == 0);
}

TEST_CASE("solve: text output carries the pinned fixed point") {
  Run r = run_cli("solve --concept icsd " + fixture("g2.game"));
  CHECK(r.code == 0);
  CHECK(r.out.find("T/C: {MB}") != std::string::npos);
  CHECK(r.out.find("T/R: {nMBB, nMSB, nMMB}") != std::string::npos);
  CHECK(r.out.find("fixed point after 2 rounds") != std::string::npos);

  // Byte-for-byte determinism.
  CHECK(run_cli("solve --concept icsd " + fixture("g2.game")).out == r.out);
}

TEST_CASE("solve: elimination and belief procedures agree at the base scope") {
  for (std::string game : {"g2.game", "centipede.game", "chain3.game"}) {
    Run a = run_cli("solve --format json --concept icsd " + fixture(game));
    Run b = run_cli("solve --format json --concept efr " + fixture(game));
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    json ja = json::parse(a.out), jb = json::parse(b.out);
    std::string base = game == "g2.game" ? "T" : "T0";
    if (game == "centipede.game") base = "T";
    CHECK(ja["levels"].back()[base] == jb["levels"].back());
  }
}

TEST_CASE("solve: traces explain removals, witnesses justify survivors") {
  Run tr = run_cli("solve --concept icwd --trace " + fixture("offpath_tie.game"));
  CHECK(tr.code == 0);
  CHECK(tr.out.find("removed T/P1 r: r dominated in T (at T:n0) by 1*d") !=
        std::string::npos);
  CHECK(tr.out.find("removed T/P2 b: b dominated in T (at T:n1) by 1*a") !=
        std::string::npos);

  Run w = run_cli("solve --concept pr --witness --format json " +
                  fixture("offpath_tie.game"));
  CHECK(w.code == 0);
  json jw = json::parse(w.out);
  CHECK(jw["schema"] == 1);
  REQUIRE(!jw["witnesses"].empty());
  json first = jw["witnesses"][0];
  CHECK(first["player"] == "P1");
  CHECK(first["strategy"] == "d");
  CHECK(first["infoset"] == "T:n0");
  CHECK(first["belief"][0][1] == "1");  // exact rational, not a float
}

TEST_CASE("export-nf prints payoff tables and the information-set families") {
  Run r = run_cli("export-nf " + fixture("offpath_tie.game"));
  CHECK(r.code == 0);
  CHECK(r.out.find("strategy,d,r\na,1|5,1|2\nb,1|5,0|1\n") != std::string::npos);
  CHECK(r.out.find("P2 @ T [T:n1] own={a,b} opp={r}") != std::string::npos);
}

TEST_CASE("fuzz emits a machine-readable report") {
  Run r = run_cli("fuzz --games 3 --seed 11");
  CHECK(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["games"] == 3);
  CHECK(j["seed"] == 11);
  CHECK(j["pass"] == true);
  CHECK(j["failures"].empty());

  // Determinism of the whole report.
  CHECK(run_cli("fuzz --games 3 --seed 11").out == r.out);
}
