#include "unaware/generator.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>
#include <vector>

#include "json.hpp"
#include "unaware/strategy.hpp"

namespace unaware {

namespace {

using nlohmann::json;

struct Draw {
  std::mt19937_64 eng;
  explicit Draw(std::uint64_t seed) : eng(seed) {}
  int below(int n) { return static_cast<int>(eng() % static_cast<std::uint64_t>(n)); }
  bool chance(double p) { return below(1000000) < static_cast<int>(p * 1000000); }
};

struct GNode {
  std::string name;
  int parent = -1;
  std::map<int, std::string> edge;  // player -> action label
  std::vector<int> active;
  std::vector<int> children;
};

struct GTree {
  std::vector<GNode> nodes;
  // Action subset per player (chain: each tree's is contained in the
  // previous one's); every node of the tree where the player is active
  // offers exactly this list.
  std::vector<std::vector<std::string>> actions;
};

const char* kLabels[3] = {"a", "b", "c"};

void grow(GTree& tree, Draw& rng, const GeneratorConfig& cfg, int node,
          int depth) {
  GNode& n = tree.nodes[node];
  bool terminal = depth >= cfg.max_depth ||
                  (depth > 0 && rng.chance(0.3)) ||
                  static_cast<int>(tree.nodes.size()) >= cfg.max_nodes;
  if (terminal) return;

  int nact = 1 + (cfg.players > 1 && rng.chance(0.35) ? 1 : 0);
  std::vector<int> pool;
  for (int p = 0; p < cfg.players; ++p) pool.push_back(p);
  for (int k = 0; k < nact; ++k) {
    int pick = rng.below(static_cast<int>(pool.size()));
    n.active.push_back(pool[pick]);
    pool.erase(pool.begin() + pick);
  }
  std::sort(n.active.begin(), n.active.end());

  long fanout = 1;
  for (int p : n.active) fanout *= static_cast<long>(tree.actions[p].size());
  if (static_cast<long>(tree.nodes.size()) + fanout > cfg.max_nodes &&
      depth > 0) {
    tree.nodes[node].active.clear();
    return;
  }

  std::vector<int> active = tree.nodes[node].active;
  std::vector<std::size_t> idx(active.size(), 0);
  for (;;) {
    int child = static_cast<int>(tree.nodes.size());
    GNode c;
    c.name = "n" + std::to_string(child);
    c.parent = node;
    for (std::size_t k = 0; k < active.size(); ++k)
      c.edge[active[k]] = tree.actions[active[k]][idx[k]];
    tree.nodes.push_back(std::move(c));
    tree.nodes[node].children.push_back(child);
    std::size_t k = 0;
    for (; k < idx.size(); ++k) {
      if (++idx[k] < tree.actions[active[k]].size()) break;
      idx[k] = 0;
    }
    if (k == idx.size()) break;
  }
  // Children were appended above; recurse on a copy of the list since
  // grow() reallocates nodes.
  std::vector<int> kids = tree.nodes[node].children;
  for (int c : kids) grow(tree, rng, cfg, c, depth + 1);
}

// The subtree of `base` obtained by deleting every branch whose edge
// uses an action outside the given per-player subsets.
GTree prune(const GTree& base, std::vector<std::vector<std::string>> subset) {
  GTree out;
  out.actions = subset;
  std::vector<int> remap(base.nodes.size(), -1);
  for (int n = 0; n < static_cast<int>(base.nodes.size()); ++n) {
    const GNode& bn = base.nodes[n];
    if (bn.parent >= 0) {
      if (remap[bn.parent] < 0) continue;
      bool kept = true;
      for (const auto& [p, a] : bn.edge) {
        const auto& allow = subset[p];
        kept = kept && std::find(allow.begin(), allow.end(), a) != allow.end();
      }
      if (!kept) continue;
    }
    int m = static_cast<int>(out.nodes.size());
    remap[n] = m;
    GNode c = bn;
    c.children.clear();
    if (c.parent >= 0) {
      c.parent = remap[bn.parent];
      out.nodes[c.parent].children.push_back(m);
    }
    out.nodes.push_back(std::move(c));
  }
  return out;
}

struct Entry {
  int target_tree;
  std::vector<std::string> target_nodes;
};

json attempt(Draw& rng, const GeneratorConfig& cfg) {
  // Base tree with a per-player action alphabet.
  std::vector<GTree> trees(1);
  GTree& base = trees[0];
  base.actions.resize(cfg.players);
  for (int p = 0; p < cfg.players; ++p) {
    int k = 1 + rng.below(cfg.max_actions);
    for (int a = 0; a < k; ++a) base.actions[p].push_back(kLabels[a]);
  }
  base.nodes.push_back(GNode{"n0", -1, {}, {}, {}});
  grow(base, rng, cfg, 0, 0);
  if (base.nodes[0].active.empty()) return json();  // degenerate root

  // Coarser trees: a chain of action subsets of the base alphabet.
  for (int t = 1; t < cfg.trees; ++t) {
    std::vector<std::vector<std::string>> subset = trees[t - 1].actions;
    bool dropped = false;
    for (int p = 0; p < cfg.players; ++p) {
      std::vector<std::string> kept;
      for (const std::string& a : subset[p])
        if (kept.empty() || !rng.chance(0.4))
          kept.push_back(a);
        else
          dropped = true;
      subset[p] = kept;
    }
    if (!dropped) {
      // Force a proper subset when any alphabet still has room.
      for (int p = 0; p < cfg.players && !dropped; ++p)
        if (subset[p].size() > 1) {
          subset[p].pop_back();
          dropped = true;
        }
    }
    trees.push_back(prune(trees[t - 1], std::move(subset)));
  }

  // Views: default to the node itself; some are retargeted into coarser
  // trees (forcing introspection there), some merged with compatible
  // siblings.
  std::map<std::tuple<int, int, int>, Entry> entries;
  for (int t = 0; t < static_cast<int>(trees.size()); ++t)
    for (int n = 0; n < static_cast<int>(trees[t].nodes.size()); ++n)
      for (int p : trees[t].nodes[n].active)
        entries[{t, n, p}] = Entry{t, {trees[t].nodes[n].name}};

  // Does the player move again strictly below this node in the same
  // tree? Retargeting such a node's view into a coarser tree would make
  // the player act unaware of some of their own later options and then
  // regain them mid-path; the conditional and the ex-ante prudent
  // procedures genuinely disagree on such games (the earlier move is
  // never evaluated against the finer tree's payoffs at any of the
  // player's information sets), so the generator stays out of that
  // class.
  auto active_below = [&](int t, int n, int p) {
    std::vector<int> stack = trees[t].nodes[n].children;
    while (!stack.empty()) {
      int m = stack.back();
      stack.pop_back();
      const GNode& node = trees[t].nodes[m];
      if (std::find(node.active.begin(), node.active.end(), p) !=
          node.active.end())
        return true;
      stack.insert(stack.end(), node.children.begin(), node.children.end());
    }
    return false;
  };

  std::set<std::tuple<int, int, int>> pinned;  // self-targets, keep as-is
  std::set<std::pair<int, int>> no_merge;      // (tree, player)
  for (int t = 0; t + 1 < static_cast<int>(trees.size()); ++t) {
    for (int n = 0; n < static_cast<int>(trees[t].nodes.size()); ++n) {
      for (int p : trees[t].nodes[n].active) {
        if (pinned.count({t, n, p}) || active_below(t, n, p) ||
            !rng.chance(cfg.density))
          continue;
        int tt = t + 1 +
                 rng.below(static_cast<int>(trees.size()) - t - 1);
        const std::string& name = trees[t].nodes[n].name;
        int copy = -1;
        for (int m = 0; m < static_cast<int>(trees[tt].nodes.size()); ++m)
          if (trees[tt].nodes[m].name == name) copy = m;
        if (copy < 0) continue;  // pruned away in the coarser tree
        entries[{t, n, p}] = Entry{tt, {name}};
        entries[{tt, copy, p}] = Entry{tt, {name}};
        pinned.insert({tt, copy, p});
        no_merge.insert({tt, p});
      }
    }
  }

  for (int t = 0; t < static_cast<int>(trees.size()); ++t) {
    for (int m = 0; m < static_cast<int>(trees[t].nodes.size()); ++m) {
      const GNode& parent = trees[t].nodes[m];
      if (parent.children.size() < 2) continue;
      for (int p = 0; p < cfg.players; ++p) {
        if (no_merge.count({t, p})) continue;
        // Children sharing this player's own action component can sit
        // in one information set without breaking the player's memory.
        std::map<std::string, std::vector<int>> groups;
        for (int c : parent.children) {
          const GNode& cn = trees[t].nodes[c];
          if (std::find(cn.active.begin(), cn.active.end(), p) ==
              cn.active.end())
            continue;
          if (pinned.count({t, c, p})) continue;
          auto own = cn.edge.find(p);
          groups[own == cn.edge.end() ? std::string() : own->second]
              .push_back(c);
        }
        for (const auto& [own, members] : groups) {
          if (members.size() < 2 || !rng.chance(cfg.density)) continue;
          std::vector<std::string> names;
          for (int c : members) names.push_back(trees[t].nodes[c].name);
          std::sort(names.begin(), names.end());
          for (int c : members) entries[{t, c, p}] = Entry{t, names};
        }
      }
    }
  }

  // Emit the document.
  json doc;
  for (int p = 0; p < cfg.players; ++p)
    doc["players"].push_back("P" + std::to_string(p + 1));
  doc["base_tree"] = "T0";
  for (int t = 0; t < static_cast<int>(trees.size()); ++t) {
    json jt;
    jt["id"] = "T" + std::to_string(t);
    for (int n = 0; n < static_cast<int>(trees[t].nodes.size()); ++n) {
      const GNode& node = trees[t].nodes[n];
      json jn;
      jn["id"] = node.name;
      if (node.parent >= 0) {
        jn["parent"] = trees[t].nodes[node.parent].name;
        json prof;
        for (const auto& [p, a] : node.edge)
          prof["P" + std::to_string(p + 1)] = a;
        jn["action_profile"] = std::move(prof);
      }
      if (!node.active.empty()) {
        for (int p : node.active) {
          jn["active"].push_back("P" + std::to_string(p + 1));
          jn["actions"]["P" + std::to_string(p + 1)] = trees[t].actions[p];
        }
      } else if (t == 0) {
        for (int p = 0; p < cfg.players; ++p)
          jn["payoffs"]["P" + std::to_string(p + 1)] =
              cfg.payoff_min + rng.below(cfg.payoff_max - cfg.payoff_min + 1);
      }
      jt["nodes"].push_back(std::move(jn));
    }
    doc["trees"].push_back(std::move(jt));
  }
  for (const auto& [key, e] : entries) {
    auto [t, n, p] = key;
    json je;
    je["tree"] = "T" + std::to_string(t);
    je["node"] = trees[t].nodes[n].name;
    je["player"] = "P" + std::to_string(p + 1);
    je["target_tree"] = "T" + std::to_string(e.target_tree);
    je["target_nodes"] = e.target_nodes;
    doc["infosets"].push_back(std::move(je));
  }
  return doc;
}

bool within_caps(const GameForest& f, const GeneratorConfig& cfg) {
  for (TreeId t = 0; t < static_cast<TreeId>(f.trees.size()); ++t) {
    long profiles = 1;
    for (PlayerId p = 0; p < static_cast<PlayerId>(f.players.size()); ++p) {
      long strategies = 1;
      for (int h : f.scope_infosets(t, p)) {
        strategies *= static_cast<long>(f.infosets[h].actions.size());
        if (strategies > cfg.max_strategies) return false;
      }
      profiles *= strategies;
      if (profiles > cfg.max_profiles) return false;
    }
  }
  return true;
}

}  // namespace

GeneratedGame generate(const GeneratorConfig& cfg) {
  if (cfg.players < 2 || cfg.players > 3 || cfg.trees < 1 || cfg.trees > 3 ||
      cfg.max_depth < 1 || cfg.max_depth > 3 || cfg.max_actions < 1 ||
      cfg.max_actions > 3 || cfg.payoff_min > cfg.payoff_max)
    throw std::invalid_argument("generator configuration out of range");

  Draw rng(cfg.seed);
  for (int round = 1; round <= cfg.retries; ++round) {
    json doc = attempt(rng, cfg);
    if (doc.is_null()) continue;
    GeneratedGame out;
    out.document = doc.dump(2) + "\n";
    out.attempts = round;
    try {
      out.forest = parse_game(out.document);
    } catch (const ParseError&) {
      continue;
    }
    if (!validate_forest(out.forest).valid()) continue;
    if (!within_caps(out.forest, cfg)) continue;
    return out;
  }
  throw std::runtime_error("game generation budget exhausted (seed " +
                           std::to_string(cfg.seed) + ", " +
                           std::to_string(cfg.retries) + " draws)");
}

}  // namespace unaware
