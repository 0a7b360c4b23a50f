#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "unaware/rational.hpp"

namespace unaware {

using PlayerId = int;
using TreeId = int;
using NodeId = int;

// Raised by the parser for malformed documents: syntax errors, unknown
// ids, duplicate ids, missing required pieces. Semantic violations of
// the unawareness-forest properties are *not* exceptions; they land in
// a ValidationReport.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Node {
  std::string name;
  NodeId parent = -1;                 // -1 for the root
  // Edge label from the parent: action per player active at the parent,
  // keyed by player, holding the action label.
  std::map<PlayerId, std::string> edge;
  std::vector<PlayerId> active;       // sorted; empty at terminals
  std::map<PlayerId, std::vector<std::string>> actions;
  std::map<PlayerId, Rat> payoffs;    // terminals only; resolved for copies
  NodeId copy_of = -1;                // base-tree node; self-index in the base
  std::vector<NodeId> children;

  bool terminal() const { return children.empty(); }
};

struct Tree {
  std::string name;
  NodeId root = -1;
  std::vector<Node> nodes;
};

// One information set h_i: the set of nodes player i considers possible.
// Its members all live in a single tree (confinement), which is T_h.
struct InfoSet {
  PlayerId player = -1;
  TreeId tree = -1;                   // T_h
  std::vector<NodeId> members;        // sorted node indices within `tree`
  std::vector<std::string> actions;   // A_h, canonical order
};

struct ValidationIssue {
  std::string code;      // e.g. "I4", "arborescence", "terminal-copy"
  std::string message;
  bool informational = false;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool valid() const {
    for (const auto& v : issues)
      if (!v.informational) return false;
    return true;
  }
};

struct GameForest {
  std::vector<std::string> players;
  std::vector<Tree> trees;
  TreeId base_tree = -1;

  // pi[(tree, node, player)] -> index into infosets. Defined exactly for
  // the (node, active player) pairs of the forest.
  std::map<std::tuple<TreeId, NodeId, PlayerId>, int> pi;
  std::vector<InfoSet> infosets;

  // Per player, canonical order: by tree index, then smallest member node.
  std::vector<std::vector<int>> player_infosets;

  // Predecessor relation on information sets (within a tree):
  // precedes[h][h'] iff h ~> h'. Indices into `infosets`.
  std::vector<std::vector<bool>> precedes;

  // Tree relations. subtree_leq[a][b]: a is (weakly) included in b.
  std::vector<std::vector<bool>> subtree_leq;
  std::vector<std::vector<bool>> points_to;  // one-step awareness reference
  std::vector<std::vector<bool>> reaches;    // transitive closure, irreflexive

  int infoset_of(TreeId t, NodeId n, PlayerId p) const {
    auto it = pi.find({t, n, p});
    return it == pi.end() ? -1 : it->second;
  }

  // Trees of the t-partial game ({t} plus everything reachable), ascending.
  std::vector<TreeId> partial_trees(TreeId t) const;

  // Player's information sets within the t-partial game, canonical order.
  std::vector<int> scope_infosets(TreeId t, PlayerId p) const;

  std::optional<TreeId> tree_index(const std::string& name) const;
  std::optional<PlayerId> player_index(const std::string& name) const;
  std::optional<NodeId> node_index(TreeId t, const std::string& name) const;

  // Ancestor test within a tree (strict).
  bool is_ancestor(TreeId t, NodeId anc, NodeId desc) const;
};

// Parses the JSON game document. Throws ParseError on malformed input.
GameForest parse_game(const std::string& text);

// Checks the semantic properties of a structurally well-formed forest.
ValidationReport validate_forest(const GameForest& forest);

// The t-partial game: t plus every tree it reaches, rebased on t.
// Throws std::out_of_range for an unknown tree id.
GameForest partial_game(const GameForest& forest, TreeId t);

}  // namespace unaware
