#include "unaware/strategy.hpp"

#include <algorithm>
#include <stdexcept>

namespace unaware {

StrategySpace::StrategySpace(const GameForest& forest) : forest_(&forest) {
  int nt = num_trees();
  int np = num_players();
  int nh = static_cast<int>(forest.infosets.size());

  scope_.assign(nt, std::vector<Scope>(np));
  pos_.assign(nt, std::vector<std::vector<int>>(np, std::vector<int>(nh, -1)));
  for (TreeId t = 0; t < nt; ++t) {
    for (PlayerId p = 0; p < np; ++p) {
      Scope& sc = scope_[t][p];
      sc.infosets = forest.scope_infosets(t, p);
      int k = static_cast<int>(sc.infosets.size());
      sc.radix.resize(k);
      sc.stride.resize(k);
      for (int j = 0; j < k; ++j) {
        sc.radix[j] = static_cast<int>(forest.infosets[sc.infosets[j]].actions.size());
        pos_[t][p][sc.infosets[j]] = j;
      }
      // The first information set varies slowest, so sid order matches
      // lexicographic label order.
      for (int j = k - 1; j >= 0; --j) {
        sc.stride[j] = sc.count;
        sc.count *= sc.radix[j];
      }
    }
  }

  profiles_.assign(nt, ProfileSpace());
  for (TreeId t = 0; t < nt; ++t) {
    ProfileSpace& ps = profiles_[t];
    ps.stride.assign(np, 1);
    for (PlayerId p = np - 1; p >= 0; --p) {
      ps.stride[p] = ps.count;
      ps.count *= scope_[t][p].count;
    }
    ps.terminal.resize(ps.count);
    for (long pid = 0; pid < ps.count; ++pid)
      ps.terminal[pid] = walk(t, profile_sids(t, pid));
  }
}

int StrategySpace::action_at(TreeId t, PlayerId p, int sid, int h) const {
  const Scope& sc = scope_[t][p];
  int j = pos_[t][p][h];
  return (sid / sc.stride[j]) % sc.radix[j];
}

std::vector<int> StrategySpace::assignment(TreeId t, PlayerId p,
                                           int sid) const {
  const Scope& sc = scope_[t][p];
  std::vector<int> asg(sc.infosets.size());
  for (std::size_t j = 0; j < asg.size(); ++j)
    asg[j] = (sid / sc.stride[j]) % sc.radix[j];
  return asg;
}

int StrategySpace::strategy_id(TreeId t, PlayerId p,
                               const std::vector<int>& asg) const {
  const Scope& sc = scope_[t][p];
  if (asg.size() != sc.infosets.size())
    throw std::invalid_argument("assignment arity mismatch");
  int sid = 0;
  for (std::size_t j = 0; j < asg.size(); ++j) {
    if (asg[j] < 0 || asg[j] >= sc.radix[j])
      throw std::invalid_argument("action index out of range");
    sid += asg[j] * sc.stride[j];
  }
  return sid;
}

int StrategySpace::strategy_from_actions(
    TreeId t, PlayerId p, const std::vector<std::string>& labels) const {
  const Scope& sc = scope_[t][p];
  if (labels.size() != sc.infosets.size())
    throw std::invalid_argument("one action label per information set needed");
  std::vector<int> asg(labels.size());
  for (std::size_t j = 0; j < labels.size(); ++j) {
    const auto& acts = forest_->infosets[sc.infosets[j]].actions;
    auto it = std::find(acts.begin(), acts.end(), labels[j]);
    if (it == acts.end())
      throw std::invalid_argument("unknown action label \"" + labels[j] + "\"");
    asg[j] = static_cast<int>(it - acts.begin());
  }
  return strategy_id(t, p, asg);
}

std::string StrategySpace::label(TreeId t, PlayerId p, int sid) const {
  const Scope& sc = scope_[t][p];
  if (sc.infosets.empty()) return "()";
  std::vector<int> asg = assignment(t, p, sid);
  bool short_labels = true;
  std::vector<std::string> parts;
  for (std::size_t j = 0; j < asg.size(); ++j) {
    parts.push_back(forest_->infosets[sc.infosets[j]].actions[asg[j]]);
    if (parts.back().size() != 1) short_labels = false;
  }
  std::string out;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (j && !short_labels) out += ".";
    out += parts[j];
  }
  return out;
}

int StrategySpace::induce(TreeId t, PlayerId p, int sid, TreeId coarser) const {
  const Scope& dst = scope_[coarser][p];
  std::vector<int> asg(dst.infosets.size());
  for (std::size_t j = 0; j < asg.size(); ++j) {
    int q = pos_[t][p][dst.infosets[j]];
    if (q < 0) throw std::invalid_argument("scope is not coarser");
    const Scope& src = scope_[t][p];
    asg[j] = (sid / src.stride[q]) % src.radix[q];
  }
  return strategy_id(coarser, p, asg);
}

std::vector<int> StrategySpace::equivalence_class(TreeId t, PlayerId p,
                                                  TreeId coarser,
                                                  int coarse) const {
  std::vector<int> out;
  for (int sid = 0; sid < scope_[t][p].count; ++sid)
    if (induce(t, p, sid, coarser) == coarse) out.push_back(sid);
  return out;
}

std::vector<int> StrategySpace::replacements(TreeId t, PlayerId p, int sid,
                                             int h) const {
  const Scope& sc = scope_[t][p];
  std::vector<int> free_pos;
  for (std::size_t j = 0; j < sc.infosets.size(); ++j) {
    int g = sc.infosets[j];
    if (g == h || forest_->precedes[h][g])
      free_pos.push_back(static_cast<int>(j));
  }
  std::vector<int> asg = assignment(t, p, sid);
  std::vector<int> out;
  std::vector<int> idx(free_pos.size(), 0);
  for (;;) {
    for (std::size_t j = 0; j < free_pos.size(); ++j)
      asg[free_pos[j]] = idx[j];
    out.push_back(strategy_id(t, p, asg));
    std::size_t j = 0;
    for (; j < idx.size(); ++j) {
      if (++idx[j] < sc.radix[free_pos[j]]) break;
      idx[j] = 0;
    }
    if (j == idx.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

long StrategySpace::profile_id(TreeId t, const std::vector<int>& sids) const {
  const ProfileSpace& ps = profiles_[t];
  long pid = 0;
  for (PlayerId p = 0; p < num_players(); ++p) pid += sids[p] * ps.stride[p];
  return pid;
}

std::vector<int> StrategySpace::profile_sids(TreeId t, long pid) const {
  std::vector<int> sids(num_players());
  for (PlayerId p = 0; p < num_players(); ++p) sids[p] = profile_sid(t, pid, p);
  return sids;
}

int StrategySpace::profile_sid(TreeId t, long pid, PlayerId p) const {
  const ProfileSpace& ps = profiles_[t];
  return static_cast<int>((pid / ps.stride[p]) % scope_[t][p].count);
}

long StrategySpace::opp_of(TreeId t, PlayerId p, long pid) const {
  long opp = 0;
  long stride = 1;
  for (PlayerId j = num_players() - 1; j >= 0; --j) {
    if (j == p) continue;
    opp += profile_sid(t, pid, j) * stride;
    stride *= scope_[t][j].count;
  }
  return opp;
}

long StrategySpace::combine(TreeId t, PlayerId p, int sid, long opp) const {
  std::vector<int> sids(num_players());
  sids[p] = sid;
  for (PlayerId j = num_players() - 1; j >= 0; --j) {
    if (j == p) continue;
    sids[j] = static_cast<int>(opp % scope_[t][j].count);
    opp /= scope_[t][j].count;
  }
  return profile_id(t, sids);
}

int StrategySpace::opp_sid(TreeId t, PlayerId p, long opp, PlayerId j) const {
  for (PlayerId k = num_players() - 1; k >= 0; --k) {
    if (k == p) continue;
    if (k == j) return static_cast<int>(opp % scope_[t][k].count);
    opp /= scope_[t][k].count;
  }
  throw std::invalid_argument("player is not an opponent");
}

long StrategySpace::induce_opp(TreeId t, PlayerId p, long opp,
                               TreeId coarser) const {
  long out = 0;
  long stride = 1;
  std::vector<int> coarse(num_players());
  for (PlayerId j = 0; j < num_players(); ++j) {
    if (j == p) continue;
    coarse[j] = induce(t, j, opp_sid(t, p, opp, j), coarser);
  }
  for (PlayerId j = num_players() - 1; j >= 0; --j) {
    if (j == p) continue;
    out += coarse[j] * stride;
    stride *= scope_[coarser][j].count;
  }
  return out;
}

NodeId StrategySpace::child_by_actions(
    TreeId t, NodeId node, const std::map<PlayerId, std::string>& move) const {
  for (NodeId c : forest_->trees[t].nodes[node].children)
    if (forest_->trees[t].nodes[c].edge == move) return c;
  throw std::logic_error("no child for the chosen action profile");
}

NodeId StrategySpace::walk(TreeId t, const std::vector<int>& sids) const {
  NodeId node = forest_->trees[t].root;
  while (!forest_->trees[t].nodes[node].terminal()) {
    std::map<PlayerId, std::string> move;
    for (PlayerId j : forest_->trees[t].nodes[node].active) {
      int h = forest_->infoset_of(t, node, j);
      int a = action_at(t, j, sids[j], h);
      move[j] = forest_->infosets[h].actions[a];
    }
    node = child_by_actions(t, node, move);
  }
  return node;
}

Rat StrategySpace::payoff(TreeId t, PlayerId p, long pid) const {
  return forest_->trees[t].nodes[profiles_[t].terminal[pid]].payoffs.at(p);
}

// Depth-first search for a member of h with one player's actions free
// and everyone else bound to sids. Children are explored in canonical
// order, so the result is deterministic.
bool StrategySpace::free_walk(TreeId t, NodeId node, int h,
                              PlayerId free_player,
                              const std::vector<int>& sids,
                              NodeId* found) const {
  const InfoSet& target = forest_->infosets[h];
  if (std::binary_search(target.members.begin(), target.members.end(), node)) {
    *found = node;
    return true;
  }
  const Node& n = forest_->trees[t].nodes[node];
  if (n.terminal()) return false;
  std::map<PlayerId, std::string> forced;
  for (PlayerId j : n.active) {
    if (j == free_player) continue;
    int hj = forest_->infoset_of(t, node, j);
    forced[j] = forest_->infosets[hj].actions[action_at(t, j, sids[j], hj)];
  }
  for (NodeId c : n.children) {
    const auto& edge = forest_->trees[t].nodes[c].edge;
    bool ok = true;
    for (const auto& [j, a] : forced)
      if (edge.at(j) != a) {
        ok = false;
        break;
      }
    if (ok && free_walk(t, c, h, free_player, sids, found)) return true;
  }
  return false;
}

bool StrategySpace::profile_allows(TreeId t, long pid, int h) const {
  TreeId th = forest_->infosets[h].tree;
  std::vector<int> sids = profile_sids(t, pid);
  if (th != t)
    for (PlayerId p = 0; p < num_players(); ++p)
      sids[p] = induce(t, p, sids[p], th);
  const InfoSet& target = forest_->infosets[h];
  NodeId node = forest_->trees[th].root;
  for (;;) {
    if (std::binary_search(target.members.begin(), target.members.end(), node))
      return true;
    const Node& n = forest_->trees[th].nodes[node];
    if (n.terminal()) return false;
    std::map<PlayerId, std::string> move;
    for (PlayerId j : n.active) {
      int hj = forest_->infoset_of(th, node, j);
      move[j] = forest_->infosets[hj].actions[action_at(th, j, sids[j], hj)];
    }
    node = child_by_actions(th, node, move);
  }
}

bool StrategySpace::strategy_allows(TreeId t, PlayerId p, int sid,
                                    int h) const {
  TreeId th = forest_->infosets[h].tree;
  std::vector<int> sids(num_players(), 0);
  sids[p] = (th == t) ? sid : induce(t, p, sid, th);
  // All opponents free: search over their behaviors one level at a time
  // by treating each as the free player is not enough with 3+ players,
  // so recurse with the whole opponent set unbound.
  struct Dfs {
    const StrategySpace* sp;
    TreeId th;
    PlayerId p;
    const std::vector<int>& sids;
    const InfoSet& target;
    bool run(NodeId node) const {
      if (std::binary_search(target.members.begin(), target.members.end(),
                             node))
        return true;
      const Node& n = sp->forest_->trees[th].nodes[node];
      if (n.terminal()) return false;
      std::string own;
      bool own_active =
          std::find(n.active.begin(), n.active.end(), p) != n.active.end();
      if (own_active) {
        int hp = sp->forest_->infoset_of(th, node, p);
        own = sp->forest_->infosets[hp]
                  .actions[sp->action_at(th, p, sids[p], hp)];
      }
      for (NodeId c : n.children) {
        if (own_active &&
            sp->forest_->trees[th].nodes[c].edge.at(p) != own)
          continue;
        if (run(c)) return true;
      }
      return false;
    }
  };
  return Dfs{this, th, p, sids, forest_->infosets[h]}.run(
      forest_->trees[th].root);
}

bool StrategySpace::opp_allows(TreeId t, PlayerId p, long opp, int h) const {
  TreeId th = forest_->infosets[h].tree;
  long o = (th == t) ? opp : induce_opp(t, p, opp, th);
  std::vector<int> sids(num_players(), 0);
  for (PlayerId j = 0; j < num_players(); ++j)
    if (j != p) sids[j] = opp_sid(th, p, o, j);
  NodeId found;
  return free_walk(th, forest_->trees[th].root, h, p, sids, &found);
}

NodeId StrategySpace::conditional_play(int h, int own_sid, long opp) const {
  const InfoSet& target = forest_->infosets[h];
  TreeId t = target.tree;
  PlayerId p = target.player;
  std::vector<int> sids(num_players(), 0);
  for (PlayerId j = 0; j < num_players(); ++j)
    if (j != p) sids[j] = opp_sid(t, p, opp, j);
  NodeId entry;
  if (!free_walk(t, forest_->trees[t].root, h, p, sids, &entry))
    throw std::logic_error("opponents' profile does not allow the set");
  sids[p] = own_sid;
  NodeId node = entry;
  while (!forest_->trees[t].nodes[node].terminal()) {
    std::map<PlayerId, std::string> move;
    for (PlayerId j : forest_->trees[t].nodes[node].active) {
      int hj = forest_->infoset_of(t, node, j);
      move[j] = forest_->infosets[hj].actions[action_at(t, j, sids[j], hj)];
    }
    node = child_by_actions(t, node, move);
  }
  return node;
}

}  // namespace unaware
