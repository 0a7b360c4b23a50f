#include "unaware/normal_form.hpp"

#include <algorithm>
#include <sstream>

namespace unaware {

NormalForm::NormalForm(const StrategySpace& space) : space_(&space) {
  const GameForest& f = space.forest();
  int nt = space.num_trees();
  int np = space.num_players();

  u_.assign(nt, {});
  for (TreeId t = 0; t < nt; ++t) {
    u_[t].assign(np, {});
    for (PlayerId p = 0; p < np; ++p) {
      u_[t][p].resize(space.num_profiles(t));
      for (long pid = 0; pid < space.num_profiles(t); ++pid)
        u_[t][p][pid] = space.payoff(t, p, pid);
    }
  }

  int nh = static_cast<int>(f.infosets.size());
  by_infoset_.resize(nh);
  for (int h = 0; h < nh; ++h) {
    const InfoSet& info = f.infosets[h];
    Restriction& r = by_infoset_[h];
    r.tree = info.tree;
    r.player = info.player;
    r.own.resize(space.num_strategies(r.tree, r.player));
    for (int sid = 0; sid < static_cast<int>(r.own.size()); ++sid)
      r.own[sid] = space.strategy_allows(r.tree, r.player, sid, h);
    r.opp.resize(space.num_opp_profiles(r.tree, r.player));
    for (long o = 0; o < static_cast<long>(r.opp.size()); ++o)
      r.opp[o] = space.opp_allows(r.tree, r.player, o, h);
  }

  family_.assign(np, {});
  nf_trees_.assign(np, {});
  for (PlayerId p = 0; p < np; ++p) {
    for (int h : f.player_infosets[p]) {
      const Restriction& r = by_infoset_[h];
      bool merged = false;
      for (NFInfoSet& x : family_[p]) {
        if (x.set.tree == r.tree && x.set.own == r.own && x.set.opp == r.opp) {
          x.sources.push_back(h);
          merged = true;
          break;
        }
      }
      if (!merged) family_[p].push_back(NFInfoSet{r, {h}});
      bool seen = false;
      for (TreeId t : nf_trees_[p]) seen = seen || (t == r.tree);
      if (!seen) nf_trees_[p].push_back(r.tree);
    }
    std::sort(nf_trees_[p].begin(), nf_trees_[p].end());
  }
}

ExtendedRestriction NormalForm::full() const {
  ExtendedRestriction y;
  y.y.resize(space_->num_trees());
  for (TreeId t = 0; t < space_->num_trees(); ++t) {
    y.y[t].resize(space_->num_players());
    for (PlayerId p = 0; p < space_->num_players(); ++p)
      y.y[t][p].assign(space_->num_strategies(t, p), 1);
  }
  return y;
}

Restriction NormalForm::intersect(const Restriction& x,
                                  const ExtendedRestriction& y) const {
  Restriction r = x;
  const auto& yt = y.y[x.tree];
  for (int sid = 0; sid < static_cast<int>(r.own.size()); ++sid)
    r.own[sid] = r.own[sid] && yt[x.player][sid];
  for (long o = 0; o < static_cast<long>(r.opp.size()); ++o) {
    if (!r.opp[o]) continue;
    for (PlayerId j = 0; j < space_->num_players(); ++j) {
      if (j == x.player) continue;
      if (!yt[j][space_->opp_sid(x.tree, x.player, o, j)]) {
        r.opp[o] = 0;
        break;
      }
    }
  }
  return r;
}

Restriction NormalForm::full_restriction(TreeId t, PlayerId p) const {
  Restriction r;
  r.tree = t;
  r.player = p;
  r.own.assign(space_->num_strategies(t, p), 1);
  r.opp.assign(space_->num_opp_profiles(t, p), 1);
  return r;
}

std::string NormalForm::export_csv(TreeId t, PlayerId p) const {
  std::ostringstream out;
  int np = space_->num_players();
  long no = space_->num_opp_profiles(t, p);
  out << "strategy";
  for (long o = 0; o < no; ++o) {
    out << ",";
    bool first = true;
    for (PlayerId j = 0; j < np; ++j) {
      if (j == p) continue;
      if (!first) out << "/";
      out << space_->label(t, j, space_->opp_sid(t, p, o, j));
      first = false;
    }
  }
  out << "\n";
  for (int sid = 0; sid < space_->num_strategies(t, p); ++sid) {
    out << space_->label(t, p, sid);
    for (long o = 0; o < no; ++o) {
      long pid = space_->combine(t, p, sid, o);
      out << ",";
      for (PlayerId j = 0; j < np; ++j) {
        if (j) out << "|";
        out << format_rational(u_[t][j][pid]);
      }
    }
    out << "\n";
  }
  return out.str();
}

std::string NormalForm::describe_family(PlayerId p) const {
  const GameForest& f = space_->forest();
  std::ostringstream out;
  for (const NFInfoSet& x : family_[p]) {
    out << f.players[p] << " @ " << f.trees[x.set.tree].name << " [";
    for (std::size_t k = 0; k < x.sources.size(); ++k) {
      const InfoSet& h = f.infosets[x.sources[k]];
      if (k) out << " ";
      out << f.trees[h.tree].name << ":"
          << f.trees[h.tree].nodes[h.members.front()].name;
    }
    out << "] own={";
    bool first = true;
    for (int sid = 0; sid < static_cast<int>(x.set.own.size()); ++sid) {
      if (!x.set.own[sid]) continue;
      if (!first) out << ",";
      out << space_->label(x.set.tree, p, sid);
      first = false;
    }
    out << "} opp={";
    first = true;
    for (long o = 0; o < static_cast<long>(x.set.opp.size()); ++o) {
      if (!x.set.opp[o]) continue;
      if (!first) out << ",";
      bool inner = true;
      for (PlayerId j = 0; j < space_->num_players(); ++j) {
        if (j == p) continue;
        if (!inner) out << "/";
        out << space_->label(x.set.tree, j, space_->opp_sid(x.set.tree, p, o, j));
        inner = false;
      }
      first = false;
    }
    out << "}\n";
  }
  return out.str();
}

}  // namespace unaware
