#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "unaware/game.hpp"

using namespace unaware;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "fixture ", name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GameForest fixture(const std::string& name) { return parse_game(slurp(name)); }

bool has_code(const ValidationReport& rep, const std::string& code) {
  return std::any_of(rep.issues.begin(), rep.issues.end(),
                     [&](const ValidationIssue& v) { return v.code == code; });
}

}  // namespace

TEST_CASE("parsing the two-tree coordination fixture") {
  GameForest f = fixture("g2.game");
  REQUIRE(f.players == std::vector<std::string>{"R", "C"});
  REQUIRE(f.trees.size() == 2);
  CHECK(f.base_tree == *f.tree_index("T"));

  // Terminal payoffs in the coarser tree come from the base counterparts.
  TreeId tp = *f.tree_index("Tp");
  NodeId zp = *f.node_index(tp, "zp_SS");
  CHECK(f.trees[tp].nodes[zp].payoffs.at(*f.player_index("R")) == 3);
  CHECK(f.trees[tp].nodes[zp].payoffs.at(*f.player_index("C")) == 0);

  // C's view after R plays n and C's view in the coarser tree are the
  // same information set, located in the coarser tree.
  TreeId t = *f.tree_index("T");
  PlayerId c = *f.player_index("C");
  int h1 = f.infoset_of(t, *f.node_index(t, "an"), c);
  int h2 = f.infoset_of(tp, *f.node_index(tp, "an2"), c);
  REQUIRE(h1 >= 0);
  CHECK(h1 == h2);
  CHECK(f.infosets[h1].tree == tp);
  CHECK(f.infosets[h1].actions == std::vector<std::string>{"B", "S"});

  // 4 information sets for R (root, both second-stage nodes, coarse), 2
  // for C (the folded one and the aware one).
  CHECK(f.infosets.size() == 6);
  CHECK(f.player_infosets[*f.player_index("R")].size() == 4);
  CHECK(f.player_infosets[c].size() == 2);

  CHECK(validate_forest(f).valid());
}

TEST_CASE("partial games and tree relations") {
  GameForest f = fixture("chain3.game");
  CHECK(f.partial_trees(0) == std::vector<TreeId>{0, 1, 2});
  CHECK(f.partial_trees(1) == std::vector<TreeId>{1, 2});
  CHECK(f.partial_trees(2) == std::vector<TreeId>{2});
  CHECK(f.subtree_leq[2][1]);
  CHECK(f.subtree_leq[1][0]);
  CHECK(!f.subtree_leq[0][1]);
  CHECK(f.reaches[0][2]);  // via the middle tree
  CHECK(!f.points_to[0][2]);

  // Scope: P1 has one information set in the middle tree and one in the
  // coarsest; P2 has the aware base one plus the coarsest one.
  PlayerId p1 = *f.player_index("P1");
  PlayerId p2 = *f.player_index("P2");
  CHECK(f.scope_infosets(0, p1).size() == 2);
  CHECK(f.scope_infosets(0, p2).size() == 2);
  CHECK(f.scope_infosets(1, p1).size() == 2);
  CHECK(f.scope_infosets(1, p2).size() == 1);
  CHECK(f.scope_infosets(2, p1).size() == 1);

  GameForest g = partial_game(f, 1);
  CHECK(g.trees.size() == 2);
  CHECK(g.base_tree == 0);
  CHECK(g.trees[0].name == "T1");
  CHECK(g.trees[1].name == "T2");
  CHECK(validate_forest(g).valid());
  CHECK_THROWS_AS(partial_game(f, 7), std::out_of_range);
}

TEST_CASE("information-set precedence and ancestry") {
  GameForest f = fixture("g2.game");
  TreeId t = *f.tree_index("T");
  PlayerId r = *f.player_index("R");
  int at_root = f.infoset_of(t, *f.node_index(t, "r"), r);
  int at_an = f.infoset_of(t, *f.node_index(t, "an"), r);
  CHECK(f.precedes[at_root][at_an]);
  CHECK(!f.precedes[at_an][at_root]);
  CHECK(f.is_ancestor(t, *f.node_index(t, "r"), *f.node_index(t, "zn_BB")));
  CHECK(!f.is_ancestor(t, *f.node_index(t, "an"), *f.node_index(t, "an")));
}

TEST_CASE("multi-member information sets") {
  GameForest f = fixture("two_node_infoset.game");
  TreeId t = 0;
  PlayerId p2 = *f.player_index("P2");
  int h = f.infoset_of(t, *f.node_index(t, "n1"), p2);
  REQUIRE(h >= 0);
  CHECK(h == f.infoset_of(t, *f.node_index(t, "n2"), p2));
  CHECK(f.infosets[h].members.size() == 2);
  CHECK(validate_forest(f).valid());
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_game("not json"), ParseError);
  CHECK_THROWS_AS(parse_game("[]"), ParseError);

  // Unknown parent node.
  CHECK_THROWS_AS(parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "active": ["A"], "actions": {"A": ["x"]}},
      {"id": "z", "parent": "nope", "action_profile": {"A": "x"},
       "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": []})"),
                  ParseError);

  // Duplicate node id.
  CHECK_THROWS_AS(parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "active": ["A"], "actions": {"A": ["x"]}},
      {"id": "n0", "parent": "n0", "action_profile": {"A": "x"},
       "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": []})"),
                  ParseError);

  // Active player without an infoset entry.
  CHECK_THROWS_AS(parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "active": ["A"], "actions": {"A": ["x"]}},
      {"id": "z", "parent": "n0", "action_profile": {"A": "x"},
       "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": []})"),
                  ParseError);

  // copy_of on a base-tree node.
  CHECK_THROWS_AS(parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "copy_of": "n0", "active": ["A"], "actions": {"A": ["x"]}},
      {"id": "z", "parent": "n0", "action_profile": {"A": "x"},
       "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": [{"tree": "T", "node": "n0", "player": "A",
                  "target_tree": "T", "target_nodes": ["n0"]}]})"),
                  ParseError);
}

namespace {

// The two-node fixture with its infoset entries replaced.
std::string with_infosets(const std::string& entries) {
  std::string doc = slurp("two_node_infoset.game");
  auto pos = doc.find("\"infosets\"");
  REQUIRE(pos != std::string::npos);
  return doc.substr(0, pos) + "\"infosets\": [" + entries + "]\n}\n";
}

const char* kP1Root =
    R"({"tree": "T", "node": "n0", "player": "P1",
        "target_tree": "T", "target_nodes": ["n0"]})";

}  // namespace

TEST_CASE("validation: same-tree view must contain the node") {
  std::string doc = with_infosets(std::string(kP1Root) + R"(,
    {"tree": "T", "node": "n1", "player": "P2", "target_tree": "T", "target_nodes": ["n2"]},
    {"tree": "T", "node": "n2", "player": "P2", "target_tree": "T", "target_nodes": ["n2"]})");
  ValidationReport rep = validate_forest(parse_game(doc));
  CHECK(!rep.valid());
  CHECK(has_code(rep, "I1"));
}

TEST_CASE("validation: introspection must agree at every member") {
  std::string doc = with_infosets(std::string(kP1Root) + R"(,
    {"tree": "T", "node": "n1", "player": "P2", "target_tree": "T", "target_nodes": ["n1", "n2"]},
    {"tree": "T", "node": "n2", "player": "P2", "target_tree": "T", "target_nodes": ["n2"]})");
  ValidationReport rep = validate_forest(parse_game(doc));
  CHECK(!rep.valid());
  CHECK(has_code(rep, "I2"));
}

TEST_CASE("validation: view cannot point into a more expressive tree") {
  // Add a pruned second tree whose view points back into the base.
  GameForest f = parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [
      {"id": "T", "nodes": [
        {"id": "n0", "active": ["A"], "actions": {"A": ["x", "y"]}},
        {"id": "zx", "parent": "n0", "action_profile": {"A": "x"}, "payoffs": {"A": 1, "B": 0}},
        {"id": "zy", "parent": "n0", "action_profile": {"A": "y"}, "payoffs": {"A": 0, "B": 1}}]},
      {"id": "Tp", "nodes": [
        {"id": "n0", "active": ["A"], "actions": {"A": ["x"]}},
        {"id": "zx", "parent": "n0", "action_profile": {"A": "x"}}]}],
    "infosets": [
      {"tree": "T", "node": "n0", "player": "A", "target_tree": "T", "target_nodes": ["n0"]},
      {"tree": "Tp", "node": "n0", "player": "A", "target_tree": "T", "target_nodes": ["n0"]}]})");
  ValidationReport rep = validate_forest(f);
  CHECK(!rep.valid());
  CHECK(has_code(rep, "I0"));
}

TEST_CASE("validation: view actions must exist at the real node") {
  GameForest f = parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "active": ["A"], "actions": {"A": ["l", "r"]}},
      {"id": "n1", "parent": "n0", "action_profile": {"A": "l"},
       "active": ["B"], "actions": {"B": ["a"]}},
      {"id": "n2", "parent": "n0", "action_profile": {"A": "r"},
       "active": ["B"], "actions": {"B": ["a", "b"]}},
      {"id": "z1", "parent": "n1", "action_profile": {"B": "a"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z2", "parent": "n2", "action_profile": {"B": "a"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z3", "parent": "n2", "action_profile": {"B": "b"}, "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": [
      {"tree": "T", "node": "n0", "player": "A", "target_tree": "T", "target_nodes": ["n0"]},
      {"tree": "T", "node": "n1", "player": "B", "target_tree": "T", "target_nodes": ["n1", "n2"]},
      {"tree": "T", "node": "n2", "player": "B", "target_tree": "T", "target_nodes": ["n1", "n2"]}]})");
  ValidationReport rep = validate_forest(f);
  CHECK(!rep.valid());
  CHECK(has_code(rep, "I4"));  // the view offers "b" at a node without it
  CHECK(has_code(rep, "I5"));  // and the members disagree on actions
}

TEST_CASE("validation: perfect recall") {
  // The player forgets their own first move: both second-stage nodes sit
  // in one information set although they follow different own actions.
  GameForest f = parse_game(R"({
    "players": ["A", "B"], "base_tree": "T",
    "trees": [{"id": "T", "nodes": [
      {"id": "n0", "active": ["A"], "actions": {"A": ["l", "r"]}},
      {"id": "n1", "parent": "n0", "action_profile": {"A": "l"},
       "active": ["A"], "actions": {"A": ["x", "y"]}},
      {"id": "n2", "parent": "n0", "action_profile": {"A": "r"},
       "active": ["A"], "actions": {"A": ["x", "y"]}},
      {"id": "z1", "parent": "n1", "action_profile": {"A": "x"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z2", "parent": "n1", "action_profile": {"A": "y"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z3", "parent": "n2", "action_profile": {"A": "x"}, "payoffs": {"A": 0, "B": 0}},
      {"id": "z4", "parent": "n2", "action_profile": {"A": "y"}, "payoffs": {"A": 0, "B": 0}}]}],
    "infosets": [
      {"tree": "T", "node": "n0", "player": "A", "target_tree": "T", "target_nodes": ["n0"]},
      {"tree": "T", "node": "n1", "player": "A", "target_tree": "T", "target_nodes": ["n1", "n2"]},
      {"tree": "T", "node": "n2", "player": "A", "target_tree": "T", "target_nodes": ["n1", "n2"]}]})");
  ValidationReport rep = validate_forest(f);
  CHECK(!rep.valid());
  CHECK(has_code(rep, "I6"));
}

TEST_CASE("validation: informational coverage note keeps the game valid") {
  GameForest f = fixture("chain3.game");
  ValidationReport rep = validate_forest(f);
  CHECK(rep.valid());
  CHECK(has_code(rep, "coverage"));
}
