#include "unaware/game.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "json.hpp"

namespace unaware {

namespace {

using nlohmann::json;

std::string node_ref(const GameForest& f, TreeId t, NodeId n) {
  return f.trees[t].name + ":" + f.trees[t].nodes[n].name;
}

[[noreturn]] void fail(const std::string& msg) { throw ParseError(msg); }

const json& require(const json& obj, const char* key, const std::string& ctx) {
  auto it = obj.find(key);
  if (it == obj.end()) fail("missing \"" + std::string(key) + "\" in " + ctx);
  return *it;
}

std::string require_string(const json& obj, const char* key,
                           const std::string& ctx) {
  const json& v = require(obj, key, ctx);
  if (!v.is_string()) fail("\"" + std::string(key) + "\" in " + ctx +
                           " must be a string");
  return v.get<std::string>();
}

Rat require_rational(const json& v, const std::string& ctx) {
  if (v.is_number_integer())
    return rat(v.get<long>());
  if (v.is_string()) {
    auto q = parse_rational(v.get<std::string>());
    if (q) return *q;
  }
  fail("expected a rational (\"p/q\" string or integer) in " + ctx);
}

// Key identifying a child edge: the chosen action per active player,
// with players in ascending order.
using EdgeKey = std::vector<std::pair<PlayerId, std::string>>;

EdgeKey edge_key(const std::map<PlayerId, std::string>& edge) {
  return EdgeKey(edge.begin(), edge.end());
}

}  // namespace

std::optional<TreeId> GameForest::tree_index(const std::string& name) const {
  for (TreeId t = 0; t < static_cast<TreeId>(trees.size()); ++t)
    if (trees[t].name == name) return t;
  return std::nullopt;
}

std::optional<PlayerId> GameForest::player_index(
    const std::string& name) const {
  for (PlayerId p = 0; p < static_cast<PlayerId>(players.size()); ++p)
    if (players[p] == name) return p;
  return std::nullopt;
}

std::optional<NodeId> GameForest::node_index(TreeId t,
                                             const std::string& name) const {
  const Tree& tree = trees[t];
  for (NodeId n = 0; n < static_cast<NodeId>(tree.nodes.size()); ++n)
    if (tree.nodes[n].name == name) return n;
  return std::nullopt;
}

bool GameForest::is_ancestor(TreeId t, NodeId anc, NodeId desc) const {
  NodeId n = trees[t].nodes[desc].parent;
  while (n >= 0) {
    if (n == anc) return true;
    n = trees[t].nodes[n].parent;
  }
  return false;
}

std::vector<TreeId> GameForest::partial_trees(TreeId t) const {
  std::vector<TreeId> out;
  for (TreeId u = 0; u < static_cast<TreeId>(trees.size()); ++u)
    if (u == t || reaches[t][u]) out.push_back(u);
  return out;
}

std::vector<int> GameForest::scope_infosets(TreeId t, PlayerId p) const {
  std::vector<char> in_scope(trees.size(), 0);
  for (TreeId u : partial_trees(t)) in_scope[u] = 1;
  std::vector<int> out;
  for (int h : player_infosets[p])
    if (in_scope[infosets[h].tree]) out.push_back(h);
  return out;
}

GameForest parse_game(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail("top-level document must be an object");

  GameForest f;

  const json& players = require(doc, "players", "document");
  if (!players.is_array() || players.empty())
    fail("\"players\" must be a non-empty array");
  for (const json& p : players) {
    if (!p.is_string()) fail("player ids must be strings");
    std::string name = p.get<std::string>();
    if (f.player_index(name)) fail("duplicate player id \"" + name + "\"");
    f.players.push_back(name);
  }

  const json& trees = require(doc, "trees", "document");
  if (!trees.is_array() || trees.empty())
    fail("\"trees\" must be a non-empty array");

  // First pass: names and node shells, so references can be resolved in
  // any order.
  for (const json& jt : trees) {
    if (!jt.is_object()) fail("each tree must be an object");
    Tree tree;
    tree.name = require_string(jt, "id", "tree");
    if (f.tree_index(tree.name)) fail("duplicate tree id \"" + tree.name + "\"");
    f.trees.push_back(std::move(tree));
  }

  std::string base_name = require_string(doc, "base_tree", "document");
  {
    auto bt = f.tree_index(base_name);
    if (!bt) fail("unknown base_tree \"" + base_name + "\"");
    f.base_tree = *bt;
  }

  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    Tree& tree = f.trees[ti];
    const json& jnodes = require(trees[ti], "nodes", "tree " + tree.name);
    if (!jnodes.is_array() || jnodes.empty())
      fail("tree " + tree.name + " has no nodes");
    for (const json& jn : jnodes) {
      if (!jn.is_object()) fail("nodes must be objects (tree " + tree.name + ")");
      Node node;
      node.name = require_string(jn, "id", "node of tree " + tree.name);
      if (f.node_index(ti, node.name))
        fail("duplicate node id \"" + node.name + "\" in tree " + tree.name);
      tree.nodes.push_back(std::move(node));
    }
    // Second pass over the same array: resolve parents, actions, payoffs.
    for (NodeId ni = 0; ni < static_cast<NodeId>(tree.nodes.size()); ++ni) {
      const json& jn = jnodes[ni];
      Node& node = tree.nodes[ni];
      std::string ctx = "node " + tree.name + ":" + node.name;

      if (jn.contains("parent")) {
        std::string pname = require_string(jn, "parent", ctx);
        auto p = f.node_index(ti, pname);
        if (!p) fail("unknown parent \"" + pname + "\" of " + ctx);
        if (*p == ni) fail(ctx + " is its own parent");
        node.parent = *p;
        tree.nodes[*p].children.push_back(ni);
        const json& jprof = require(jn, "action_profile", ctx);
        if (!jprof.is_object())
          fail("\"action_profile\" of " + ctx + " must be an object");
        for (auto it = jprof.begin(); it != jprof.end(); ++it) {
          auto pid = f.player_index(it.key());
          if (!pid) fail("unknown player \"" + it.key() + "\" in " + ctx);
          if (!it.value().is_string())
            fail("action labels in " + ctx + " must be strings");
          node.edge[*pid] = it.value().get<std::string>();
        }
        if (node.edge.empty())
          fail("\"action_profile\" of " + ctx + " is empty");
      } else {
        if (tree.root >= 0)
          fail("tree " + tree.name + " has more than one root (" +
               tree.nodes[tree.root].name + ", " + node.name + ")");
        tree.root = ni;
      }

      if (jn.contains("active")) {
        const json& jact = jn["active"];
        if (!jact.is_array()) fail("\"active\" of " + ctx + " must be an array");
        for (const json& jp : jact) {
          if (!jp.is_string()) fail("player ids in " + ctx + " must be strings");
          auto pid = f.player_index(jp.get<std::string>());
          if (!pid)
            fail("unknown player \"" + jp.get<std::string>() + "\" in " + ctx);
          node.active.push_back(*pid);
        }
        std::sort(node.active.begin(), node.active.end());
        if (std::adjacent_find(node.active.begin(), node.active.end()) !=
            node.active.end())
          fail("repeated active player at " + ctx);
        const json& jactions = require(jn, "actions", ctx);
        if (!jactions.is_object())
          fail("\"actions\" of " + ctx + " must be an object");
        for (PlayerId p : node.active) {
          auto it = jactions.find(f.players[p]);
          if (it == jactions.end())
            fail("no actions for active player " + f.players[p] + " at " + ctx);
          if (!it->is_array() || it->empty())
            fail("actions of " + f.players[p] + " at " + ctx +
                 " must be a non-empty array");
          std::vector<std::string>& labels = node.actions[p];
          for (const json& ja : *it) {
            if (!ja.is_string()) fail("action labels at " + ctx +
                                      " must be strings");
            std::string label = ja.get<std::string>();
            if (std::find(labels.begin(), labels.end(), label) != labels.end())
              fail("duplicate action \"" + label + "\" at " + ctx);
            labels.push_back(label);
          }
        }
        if (static_cast<int>(jactions.size()) >
            static_cast<int>(node.active.size()))
          fail("\"actions\" of " + ctx + " lists a non-active player");
      }

      if (jn.contains("payoffs")) {
        const json& jpay = jn["payoffs"];
        if (!jpay.is_object())
          fail("\"payoffs\" of " + ctx + " must be an object");
        for (auto it = jpay.begin(); it != jpay.end(); ++it) {
          auto pid = f.player_index(it.key());
          if (!pid) fail("unknown player \"" + it.key() + "\" in " + ctx);
          node.payoffs[*pid] = require_rational(it.value(), ctx);
        }
      }

      if (jn.contains("copy_of")) {
        if (ti == f.base_tree)
          fail(ctx + ": base-tree nodes cannot declare copy_of");
        std::string cname = require_string(jn, "copy_of", ctx);
        auto c = f.node_index(f.base_tree, cname);
        if (!c) fail("unknown base node \"" + cname + "\" (copy_of of " + ctx +
                     ")");
        node.copy_of = *c;
      }
    }
    if (tree.root < 0) fail("tree " + tree.name + " has no root");
  }

  // Resolve copy identities: base nodes are their own copies; non-base
  // nodes default to the identically named base node.
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    for (NodeId ni = 0; ni < static_cast<NodeId>(f.trees[ti].nodes.size());
         ++ni) {
      Node& node = f.trees[ti].nodes[ni];
      if (ti == f.base_tree) {
        node.copy_of = ni;
      } else if (node.copy_of < 0) {
        auto c = f.node_index(f.base_tree, node.name);
        if (!c)
          fail("node " + node_ref(f, ti, ni) +
               " names no base-tree counterpart (add copy_of)");
        node.copy_of = *c;
      }
    }
  }

  // Structural tree checks: connectivity, edge sanity, payoffs.
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    Tree& tree = f.trees[ti];
    // Reachability from the root (a parent pointer per node plus a single
    // root rules out everything except cycles detached from the root).
    std::vector<char> seen(tree.nodes.size(), 0);
    std::vector<NodeId> stack{tree.root};
    seen[tree.root] = 1;
    while (!stack.empty()) {
      NodeId n = stack.back();
      stack.pop_back();
      for (NodeId c : tree.nodes[n].children) {
        if (!seen[c]) {
          seen[c] = 1;
          stack.push_back(c);
        }
      }
    }
    for (NodeId n = 0; n < static_cast<NodeId>(tree.nodes.size()); ++n)
      if (!seen[n])
        fail("node " + node_ref(f, ti, n) + " is not reachable from the root");

    for (NodeId n = 0; n < static_cast<NodeId>(tree.nodes.size()); ++n) {
      Node& node = tree.nodes[n];
      if (node.terminal()) {
        if (!node.active.empty())
          fail("terminal " + node_ref(f, ti, n) + " declares active players");
        if (ti == f.base_tree)
          for (PlayerId p = 0; p < static_cast<PlayerId>(f.players.size()); ++p)
            if (!node.payoffs.count(p))
              fail("terminal " + node_ref(f, ti, n) + " has no payoff for " +
                   f.players[p]);
        continue;
      }
      if (node.active.empty())
        fail("decision node " + node_ref(f, ti, n) + " has no active players");
      if (!node.payoffs.empty())
        fail("decision node " + node_ref(f, ti, n) + " declares payoffs");

      // Children must carry exactly the product of the action lists,
      // one child per profile, keyed by the full set of active players.
      std::set<EdgeKey> want;
      std::vector<std::size_t> idx(node.active.size(), 0);
      for (;;) {
        EdgeKey key;
        for (std::size_t k = 0; k < node.active.size(); ++k) {
          PlayerId p = node.active[k];
          key.emplace_back(p, node.actions[p][idx[k]]);
        }
        want.insert(std::move(key));
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < node.actions[node.active[k]].size()) break;
          idx[k] = 0;
        }
        if (k == idx.size()) break;
      }
      std::set<EdgeKey> have;
      for (NodeId c : node.children) {
        EdgeKey key = edge_key(tree.nodes[c].edge);
        if (!want.count(key))
          fail("edge into " + node_ref(f, ti, c) +
               " does not match the actions declared at its parent");
        if (!have.insert(key).second)
          fail("two children of " + node_ref(f, ti, n) +
               " share an action profile");
      }
      if (have.size() != want.size())
        fail("decision node " + node_ref(f, ti, n) + " covers " +
             std::to_string(have.size()) + " of " + std::to_string(want.size()) +
             " action profiles");
    }
  }

  // Propagate base payoffs onto copy terminals whose copy target is a
  // base terminal. (Whether that target *is* a terminal is a semantic
  // check, left to the validator.)
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    if (ti == f.base_tree) continue;
    for (Node& node : f.trees[ti].nodes) {
      if (!node.terminal()) continue;
      const Node& base = f.trees[f.base_tree].nodes[node.copy_of];
      if (!base.terminal()) continue;
      for (const auto& [p, v] : base.payoffs)
        if (!node.payoffs.count(p)) node.payoffs[p] = v;
    }
  }

  // Information sets.
  const json& jinfos = require(doc, "infosets", "document");
  if (!jinfos.is_array()) fail("\"infosets\" must be an array");
  struct RawEntry {
    TreeId tree;
    NodeId node;
    PlayerId player;
    TreeId target_tree;
    std::vector<NodeId> target_nodes;
  };
  std::vector<RawEntry> entries;
  for (const json& je : jinfos) {
    if (!je.is_object()) fail("infoset entries must be objects");
    RawEntry e;
    std::string tname = require_string(je, "tree", "infoset entry");
    auto t = f.tree_index(tname);
    if (!t) fail("unknown tree \"" + tname + "\" in infoset entry");
    e.tree = *t;
    std::string ctx = "infoset entry at tree " + tname;
    std::string nname = require_string(je, "node", ctx);
    auto n = f.node_index(e.tree, nname);
    if (!n) fail("unknown node \"" + nname + "\" in " + ctx);
    e.node = *n;
    std::string pname = require_string(je, "player", ctx);
    auto p = f.player_index(pname);
    if (!p) fail("unknown player \"" + pname + "\" in " + ctx);
    e.player = *p;
    std::string ttname = require_string(je, "target_tree", ctx);
    auto tt = f.tree_index(ttname);
    if (!tt) fail("unknown target_tree \"" + ttname + "\" in " + ctx);
    e.target_tree = *tt;
    const json& jtn = require(je, "target_nodes", ctx);
    if (!jtn.is_array() || jtn.empty())
      fail("\"target_nodes\" in " + ctx + " must be a non-empty array");
    for (const json& jn : jtn) {
      if (!jn.is_string()) fail("target node ids in " + ctx +
                                " must be strings");
      auto tn = f.node_index(e.target_tree, jn.get<std::string>());
      if (!tn)
        fail("unknown target node \"" + jn.get<std::string>() + "\" in " + ctx);
      e.target_nodes.push_back(*tn);
    }
    std::sort(e.target_nodes.begin(), e.target_nodes.end());
    e.target_nodes.erase(
        std::unique(e.target_nodes.begin(), e.target_nodes.end()),
        e.target_nodes.end());
    entries.push_back(std::move(e));
  }

  // Every (decision node, active player) pair needs exactly one entry.
  std::map<std::tuple<TreeId, NodeId, PlayerId>, RawEntry*> by_source;
  for (RawEntry& e : entries) {
    auto key = std::make_tuple(e.tree, e.node, e.player);
    if (by_source.count(key))
      fail("duplicate infoset entry for player " + f.players[e.player] +
           " at " + node_ref(f, e.tree, e.node));
    by_source[key] = &e;
  }
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    const Tree& tree = f.trees[ti];
    for (NodeId ni = 0; ni < static_cast<NodeId>(tree.nodes.size()); ++ni) {
      for (PlayerId p : tree.nodes[ni].active) {
        auto key = std::make_tuple(ti, ni, p);
        if (!by_source.count(key))
          fail("no infoset entry for player " + f.players[p] + " at " +
               node_ref(f, ti, ni));
      }
    }
  }

  // Deduplicate entries into InfoSet objects keyed by (player, target).
  std::map<std::tuple<PlayerId, TreeId, std::vector<NodeId>>, int> canon;
  for (const auto& [key, e] : by_source) {
    auto ckey = std::make_tuple(e->player, e->target_tree, e->target_nodes);
    auto it = canon.find(ckey);
    int idx;
    if (it == canon.end()) {
      InfoSet h;
      h.player = e->player;
      h.tree = e->target_tree;
      h.members = e->target_nodes;
      // A_h: action labels of the player at the first member, if any.
      // (Equality across members is a validation property.)
      const Node& m0 = f.trees[h.tree].nodes[h.members.front()];
      auto ai = m0.actions.find(h.player);
      if (ai != m0.actions.end()) h.actions = ai->second;
      idx = static_cast<int>(f.infosets.size());
      f.infosets.push_back(std::move(h));
      canon.emplace(std::move(ckey), idx);
    } else {
      idx = it->second;
    }
    f.pi[key] = idx;
  }

  // Canonical per-player ordering: by home tree, then first member.
  f.player_infosets.assign(f.players.size(), {});
  for (int h = 0; h < static_cast<int>(f.infosets.size()); ++h)
    f.player_infosets[f.infosets[h].player].push_back(h);
  for (auto& list : f.player_infosets) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const InfoSet& x = f.infosets[a];
      const InfoSet& y = f.infosets[b];
      return std::tie(x.tree, x.members.front()) <
             std::tie(y.tree, y.members.front());
    });
  }

  // Information-set precedence: h ~> h' when they share a player and a
  // tree and every member of h' sits strictly below some member of h.
  int nh = static_cast<int>(f.infosets.size());
  f.precedes.assign(nh, std::vector<bool>(nh, false));
  for (int a = 0; a < nh; ++a) {
    for (int b = 0; b < nh; ++b) {
      if (a == b) continue;
      const InfoSet& x = f.infosets[a];
      const InfoSet& y = f.infosets[b];
      if (x.player != y.player || x.tree != y.tree) continue;
      bool all = true;
      for (NodeId m : y.members) {
        bool under = false;
        for (NodeId n : x.members)
          if (f.is_ancestor(x.tree, n, m)) {
            under = true;
            break;
          }
        if (!under) {
          all = false;
          break;
        }
      }
      f.precedes[a][b] = all;
    }
  }

  // Tree relations. Inclusion compares copy images.
  int nt = static_cast<int>(f.trees.size());
  f.subtree_leq.assign(nt, std::vector<bool>(nt, false));
  std::vector<std::set<NodeId>> image(nt);
  for (TreeId t = 0; t < nt; ++t)
    for (const Node& n : f.trees[t].nodes) image[t].insert(n.copy_of);
  for (TreeId a = 0; a < nt; ++a)
    for (TreeId b = 0; b < nt; ++b)
      f.subtree_leq[a][b] = std::includes(image[b].begin(), image[b].end(),
                                          image[a].begin(), image[a].end());

  f.points_to.assign(nt, std::vector<bool>(nt, false));
  for (const auto& [key, h] : f.pi) {
    TreeId src = std::get<0>(key);
    TreeId dst = f.infosets[h].tree;
    if (src != dst) f.points_to[src][dst] = true;
  }
  f.reaches = f.points_to;
  for (TreeId k = 0; k < nt; ++k)
    for (TreeId a = 0; a < nt; ++a)
      for (TreeId b = 0; b < nt; ++b)
        if (f.reaches[a][k] && f.reaches[k][b]) f.reaches[a][b] = true;
  for (TreeId a = 0; a < nt; ++a) f.reaches[a][a] = false;

  return f;
}

namespace {

void check_subtrees(const GameForest& f, ValidationReport& rep) {
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    if (ti == f.base_tree) continue;
    const Tree& tree = f.trees[ti];
    const Tree& base = f.trees[f.base_tree];
    std::set<NodeId> used;
    for (NodeId ni = 0; ni < static_cast<NodeId>(tree.nodes.size()); ++ni) {
      const Node& node = tree.nodes[ni];
      if (!used.insert(node.copy_of).second)
        rep.issues.push_back(
            {"subtree-closure", "tree " + tree.name +
                                    " maps two nodes onto base node " +
                                    base.nodes[node.copy_of].name});
      const Node& bnode = base.nodes[node.copy_of];
      if (node.parent >= 0) {
        NodeId bparent = tree.nodes[node.parent].copy_of;
        if (bnode.parent != bparent) {
          rep.issues.push_back(
              {"subtree-closure",
               "edge " + node_ref(f, ti, node.parent) + " -> " +
                   node_ref(f, ti, ni) + " has no base-tree counterpart"});
          continue;
        }
        if (node.edge != bnode.edge)
          rep.issues.push_back(
              {"subtree-closure", "edge into " + node_ref(f, ti, ni) +
                                      " relabels the base-tree edge"});
      }
      if (!node.terminal()) {
        if (bnode.terminal()) {
          rep.issues.push_back(
              {"subtree-closure", "decision node " + node_ref(f, ti, ni) +
                                      " copies a base-tree terminal"});
          continue;
        }
        for (PlayerId p : node.active) {
          auto bi = bnode.actions.find(p);
          if (std::find(bnode.active.begin(), bnode.active.end(), p) ==
              bnode.active.end()) {
            rep.issues.push_back(
                {"subtree-closure", f.players[p] + " is active at " +
                                        node_ref(f, ti, ni) +
                                        " but not at its base node"});
            continue;
          }
          for (const std::string& a : node.actions.at(p))
            if (std::find(bi->second.begin(), bi->second.end(), a) ==
                bi->second.end())
              rep.issues.push_back(
                  {"subtree-closure", "action \"" + a + "\" of " +
                                          f.players[p] + " at " +
                                          node_ref(f, ti, ni) +
                                          " does not exist at its base node"});
        }
      }
    }
  }
}

void check_terminal_copies(const GameForest& f, ValidationReport& rep) {
  const Tree& base = f.trees[f.base_tree];
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    if (ti == f.base_tree) continue;
    for (NodeId ni = 0; ni < static_cast<NodeId>(f.trees[ti].nodes.size());
         ++ni) {
      const Node& node = f.trees[ti].nodes[ni];
      if (!node.terminal()) continue;
      const Node& bnode = base.nodes[node.copy_of];
      if (!bnode.terminal()) {
        rep.issues.push_back({"terminal-copy",
                              "terminal " + node_ref(f, ti, ni) +
                                  " copies base decision node " + bnode.name});
        continue;
      }
      for (const auto& [p, v] : bnode.payoffs) {
        auto it = node.payoffs.find(p);
        if (it == node.payoffs.end()) continue;  // inherited at parse
        if (it->second != v)
          rep.issues.push_back(
              {"terminal-copy", "payoff of " + f.players[p] + " at " +
                                    node_ref(f, ti, ni) +
                                    " differs from its base terminal"});
      }
    }
  }
}

void check_action_consistency(const GameForest& f, ValidationReport& rep) {
  for (TreeId ti = 0; ti < static_cast<TreeId>(f.trees.size()); ++ti) {
    const Tree& tree = f.trees[ti];
    for (PlayerId p = 0; p < static_cast<PlayerId>(f.players.size()); ++p) {
      std::vector<NodeId> nodes;
      for (NodeId n = 0; n < static_cast<NodeId>(tree.nodes.size()); ++n)
        if (tree.nodes[n].actions.count(p)) nodes.push_back(n);
      for (std::size_t a = 0; a < nodes.size(); ++a) {
        for (std::size_t b = a + 1; b < nodes.size(); ++b) {
          const auto& sa = tree.nodes[nodes[a]].actions.at(p);
          const auto& sb = tree.nodes[nodes[b]].actions.at(p);
          std::set<std::string> xa(sa.begin(), sa.end());
          std::set<std::string> xb(sb.begin(), sb.end());
          bool intersect = false;
          for (const std::string& s : xa)
            if (xb.count(s)) {
              intersect = true;
              break;
            }
          if (intersect && xa != xb)
            rep.issues.push_back(
                {"action-set-consistency",
                 f.players[p] + "'s action sets at " +
                     node_ref(f, ti, nodes[a]) + " and " +
                     node_ref(f, ti, nodes[b]) +
                     " overlap without being equal"});
        }
      }
    }
  }
}

void check_info_properties(const GameForest& f, ValidationReport& rep) {
  // I0: members of an information set share one tree by representation;
  // the substantive half is that the view never points to a *more*
  // expressive tree than the one the player is standing in.
  for (const auto& [key, hi] : f.pi) {
    auto [t, n, p] = key;
    const InfoSet& h = f.infosets[hi];
    if (!f.subtree_leq[h.tree][t])
      rep.issues.push_back(
          {"I0", f.players[p] + "'s view at " + node_ref(f, t, n) +
                     " points into " + f.trees[h.tree].name +
                     ", which is not included in " + f.trees[t].name});
  }

  // I1: a view within one's own tree contains the node itself.
  for (const auto& [key, hi] : f.pi) {
    auto [t, n, p] = key;
    const InfoSet& h = f.infosets[hi];
    if (h.tree == t &&
        !std::binary_search(h.members.begin(), h.members.end(), n))
      rep.issues.push_back({"I1", f.players[p] + "'s view at " +
                                      node_ref(f, t, n) +
                                      " stays in the same tree but omits the "
                                      "node itself"});
  }

  // I2: introspection. At every member of the view, the player's view is
  // that same set.
  for (const auto& [key, hi] : f.pi) {
    auto [t, n, p] = key;
    const InfoSet& h = f.infosets[hi];
    for (NodeId m : h.members) {
      int hm = f.infoset_of(h.tree, m, p);
      if (hm != hi)
        rep.issues.push_back(
            {"I2", f.players[p] + "'s view at " + node_ref(f, t, n) +
                       " contains " + node_ref(f, h.tree, m) +
                       " where the player's own view differs"});
    }
  }

  // I3: no divining of higher awareness. Once the view sits in tree T',
  // views at later own moves within T' stay in T'.
  for (int hi = 0; hi < static_cast<int>(f.infosets.size()); ++hi) {
    const InfoSet& h = f.infosets[hi];
    for (NodeId m : h.members) {
      for (NodeId d = 0;
           d < static_cast<NodeId>(f.trees[h.tree].nodes.size()); ++d) {
        if (!f.is_ancestor(h.tree, m, d)) continue;
        int hd = f.infoset_of(h.tree, d, h.player);
        if (hd >= 0 && f.infosets[hd].tree != h.tree)
          rep.issues.push_back(
              {"I3", f.players[h.player] + "'s view at " +
                         node_ref(f, h.tree, d) + " leaves tree " +
                         f.trees[h.tree].name +
                         " although an earlier view already sits there"});
      }
    }
  }

  // I4: no imaginary actions: actions available in the view exist at the
  // actual node.
  for (const auto& [key, hi] : f.pi) {
    auto [t, n, p] = key;
    const InfoSet& h = f.infosets[hi];
    auto real = f.trees[t].nodes[n].actions.find(p);
    for (NodeId m : h.members) {
      auto view = f.trees[h.tree].nodes[m].actions.find(p);
      if (view == f.trees[h.tree].nodes[m].actions.end()) continue;
      for (const std::string& a : view->second) {
        bool ok = real != f.trees[t].nodes[n].actions.end() &&
                  std::find(real->second.begin(), real->second.end(), a) !=
                      real->second.end();
        if (!ok)
          rep.issues.push_back(
              {"I4", f.players[p] + "'s view at " + node_ref(f, t, n) +
                         " offers action \"" + a +
                         "\" that the node does not have"});
      }
    }
  }

  // I5: actions are well defined on each information set: all members
  // offer the player identical action lists, so choosing "an action at
  // h" is meaningful.
  for (int hi = 0; hi < static_cast<int>(f.infosets.size()); ++hi) {
    const InfoSet& h = f.infosets[hi];
    for (NodeId m : h.members) {
      const Node& node = f.trees[h.tree].nodes[m];
      auto it = node.actions.find(h.player);
      std::vector<std::string> labels =
          (it == node.actions.end()) ? std::vector<std::string>{} : it->second;
      std::vector<std::string> want = h.actions;
      std::sort(labels.begin(), labels.end());
      std::sort(want.begin(), want.end());
      if (labels != want) {
        rep.issues.push_back(
            {"I5", "members of " + f.players[h.player] +
                       "'s information set at " + node_ref(f, h.tree, m) +
                       " disagree on the available actions"});
        break;
      }
    }
  }

  // I6: perfect recall. Whatever a player did and knew on the way to a
  // node must be reflected at every node the player considers possible.
  for (TreeId t = 0; t < static_cast<TreeId>(f.trees.size()); ++t) {
    const Tree& tree = f.trees[t];
    for (NodeId nk = 0; nk < static_cast<NodeId>(tree.nodes.size()); ++nk) {
      for (PlayerId p : tree.nodes[nk].active) {
        int hk = f.infoset_of(t, nk, p);
        // Walk up the path; every earlier own move yields a requirement.
        NodeId cur = nk;
        while (tree.nodes[cur].parent >= 0) {
          NodeId parent = tree.nodes[cur].parent;
          const Node& pn = tree.nodes[parent];
          auto act = tree.nodes[cur].edge.find(p);
          if (act != tree.nodes[cur].edge.end() &&
              std::find(pn.active.begin(), pn.active.end(), p) !=
                  pn.active.end()) {
            int h1 = f.infoset_of(t, parent, p);
            const InfoSet& hview = f.infosets[hk];
            for (NodeId m : hview.members) {
              bool found = false;
              NodeId walk = m;
              while (f.trees[hview.tree].nodes[walk].parent >= 0 && !found) {
                NodeId up = f.trees[hview.tree].nodes[walk].parent;
                auto ea = f.trees[hview.tree].nodes[walk].edge.find(p);
                if (ea != f.trees[hview.tree].nodes[walk].edge.end() &&
                    ea->second == act->second &&
                    f.infoset_of(hview.tree, up, p) == h1)
                  found = true;
                walk = up;
              }
              if (!found) {
                rep.issues.push_back(
                    {"I6", f.players[p] + " at " + node_ref(f, t, nk) +
                               " played \"" + act->second + "\" from an " +
                               "earlier move, but considers " +
                               node_ref(f, hview.tree, m) +
                               " possible, which no such history reaches"});
                break;
              }
            }
          }
          cur = parent;
        }
      }
    }
  }
}

void check_arborescence(const GameForest& f, ValidationReport& rep) {
  // Within a tree, the information sets preceding a given one must form
  // a chain: player's experience along any history is linearly ordered.
  int nh = static_cast<int>(f.infosets.size());
  for (int h = 0; h < nh; ++h) {
    std::vector<int> preds;
    for (int g = 0; g < nh; ++g)
      if (f.precedes[g][h]) preds.push_back(g);
    for (std::size_t a = 0; a < preds.size(); ++a)
      for (std::size_t b = a + 1; b < preds.size(); ++b)
        if (!f.precedes[preds[a]][preds[b]] &&
            !f.precedes[preds[b]][preds[a]]) {
          const InfoSet& x = f.infosets[h];
          rep.issues.push_back(
              {"arborescence",
               f.players[x.player] + "'s information set at " +
                   node_ref(f, x.tree, x.members.front()) +
                   " has incomparable predecessors"});
        }
  }
}

void check_coverage(const GameForest& f, ValidationReport& rep) {
  // Informational: a player can be active in a tree while every view of
  // theirs points elsewhere, leaving them without an information set
  // located in that tree. That is legal here and worth surfacing.
  for (TreeId t = 0; t < static_cast<TreeId>(f.trees.size()); ++t) {
    for (PlayerId p = 0; p < static_cast<PlayerId>(f.players.size()); ++p) {
      bool active = false;
      for (const Node& n : f.trees[t].nodes)
        if (std::find(n.active.begin(), n.active.end(), p) != n.active.end())
          active = true;
      if (!active) continue;
      bool located = false;
      for (int h : f.player_infosets[p])
        if (f.infosets[h].tree == t) located = true;
      if (!located)
        rep.issues.push_back({"coverage",
                              f.players[p] + " moves in tree " +
                                  f.trees[t].name +
                                  " but has no information set located there",
                              true});
    }
  }
}

}  // namespace

ValidationReport validate_forest(const GameForest& f) {
  ValidationReport rep;
  check_subtrees(f, rep);
  check_terminal_copies(f, rep);
  check_action_consistency(f, rep);
  check_info_properties(f, rep);
  check_arborescence(f, rep);
  check_coverage(f, rep);
  return rep;
}

GameForest partial_game(const GameForest& f, TreeId t) {
  if (t < 0 || t >= static_cast<TreeId>(f.trees.size()))
    throw std::out_of_range("no such tree");
  std::vector<TreeId> keep = f.partial_trees(t);
  // Rebase so the new first tree is t; remaining trees keep their order.
  std::vector<TreeId> order;
  order.push_back(t);
  for (TreeId u : keep)
    if (u != t) order.push_back(u);

  std::vector<TreeId> remap(f.trees.size(), -1);
  for (TreeId i = 0; i < static_cast<TreeId>(order.size()); ++i)
    remap[order[i]] = i;

  // Copy identities must be re-expressed relative to the new base t.
  std::vector<NodeId> base_to_t(f.trees[f.base_tree].nodes.size(), -1);
  for (NodeId n = 0; n < static_cast<NodeId>(f.trees[t].nodes.size()); ++n)
    base_to_t[f.trees[t].nodes[n].copy_of] = n;

  GameForest g;
  g.players = f.players;
  g.base_tree = 0;
  for (TreeId u : order) {
    Tree tree = f.trees[u];
    for (Node& node : tree.nodes) {
      NodeId nb = base_to_t[node.copy_of];
      if (nb < 0)
        throw std::logic_error("partial game: node of " + f.trees[u].name +
                               " lies outside " + f.trees[t].name);
      node.copy_of = nb;
    }
    g.trees.push_back(std::move(tree));
  }

  std::map<int, int> hmap;  // old infoset index -> new
  for (const auto& [key, hi] : f.pi) {
    auto [tt, nn, pp] = key;
    if (remap[tt] < 0) continue;
    auto it = hmap.find(hi);
    int nhi;
    if (it == hmap.end()) {
      InfoSet h = f.infosets[hi];
      h.tree = remap[h.tree];  // in-scope by the confinement property
      nhi = static_cast<int>(g.infosets.size());
      g.infosets.push_back(std::move(h));
      hmap.emplace(hi, nhi);
    } else {
      nhi = it->second;
    }
    g.pi[{remap[tt], nn, pp}] = nhi;
  }

  g.player_infosets.assign(g.players.size(), {});
  for (int h = 0; h < static_cast<int>(g.infosets.size()); ++h)
    g.player_infosets[g.infosets[h].player].push_back(h);
  for (auto& list : g.player_infosets) {
    std::sort(list.begin(), list.end(), [&](int a, int b) {
      const InfoSet& x = g.infosets[a];
      const InfoSet& y = g.infosets[b];
      return std::tie(x.tree, x.members.front()) <
             std::tie(y.tree, y.members.front());
    });
  }

  int nh = static_cast<int>(g.infosets.size());
  g.precedes.assign(nh, std::vector<bool>(nh, false));
  for (int a = 0; a < nh; ++a)
    for (int b = 0; b < nh; ++b) {
      if (a == b) continue;
      const InfoSet& x = g.infosets[a];
      const InfoSet& y = g.infosets[b];
      if (x.player != y.player || x.tree != y.tree) continue;
      bool all = true;
      for (NodeId m : y.members) {
        bool under = false;
        for (NodeId n : x.members)
          if (g.is_ancestor(x.tree, n, m)) {
            under = true;
            break;
          }
        if (!under) {
          all = false;
          break;
        }
      }
      g.precedes[a][b] = all;
    }

  int nt = static_cast<int>(g.trees.size());
  g.subtree_leq.assign(nt, std::vector<bool>(nt, false));
  g.points_to.assign(nt, std::vector<bool>(nt, false));
  for (TreeId a = 0; a < nt; ++a)
    for (TreeId b = 0; b < nt; ++b) {
      g.subtree_leq[a][b] = f.subtree_leq[order[a]][order[b]];
      g.points_to[a][b] = f.points_to[order[a]][order[b]];
    }
  g.reaches = g.points_to;
  for (TreeId k = 0; k < nt; ++k)
    for (TreeId a = 0; a < nt; ++a)
      for (TreeId b = 0; b < nt; ++b)
        if (g.reaches[a][k] && g.reaches[k][b]) g.reaches[a][b] = true;
  for (TreeId a = 0; a < nt; ++a) g.reaches[a][a] = false;

  return g;
}

}  // namespace unaware
