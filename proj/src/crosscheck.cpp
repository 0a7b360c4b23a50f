#include "unaware/crosscheck.hpp"

#include <sstream>

#include "unaware/normal_form.hpp"

namespace unaware {

namespace {

// Level k of a trace, clamped to the fixed point.
template <typename Seq>
const typename Seq::value_type& at_level(const Seq& levels, int k) {
  int last = static_cast<int>(levels.size()) - 1;
  return levels[k < last ? k : last];
}

IdentityResult compare_base(const std::string& name, const StrategySpace& sp,
                            const EliminationTrace& engine,
                            const LevelTrace& oracle) {
  IdentityResult r;
  r.name = name;
  const GameForest& f = sp.forest();
  TreeId t0 = f.base_tree;
  int depth = static_cast<int>(
      std::max(engine.levels.size(), oracle.levels.size()));
  for (int k = 0; k < depth; ++k) {
    const ExtendedRestriction& y = at_level(engine.levels, k);
    const auto& s = at_level(oracle.levels, k);
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      for (int sid = 0; sid < sp.num_strategies(t0, p); ++sid) {
        if (!!y.y[t0][p][sid] == !!s[p][sid]) continue;
        r.pass = false;
        r.level = k;
        r.player = p;
        r.sid = sid;
        std::ostringstream msg;
        msg << "level " << k << ", " << f.players[p] << " "
            << sp.label(t0, p, sid) << ": elimination "
            << (y.y[t0][p][sid] ? "keeps" : "drops") << ", belief procedure "
            << (s[p][sid] ? "keeps" : "drops");
        r.detail = msg.str();
        return r;
      }
    }
  }
  return r;
}

IdentityResult compare_levels(const std::string& name, const StrategySpace& sp,
                              const LevelTrace& a, const LevelTrace& b) {
  IdentityResult r;
  r.name = name;
  const GameForest& f = sp.forest();
  TreeId t0 = f.base_tree;
  int depth = static_cast<int>(std::max(a.levels.size(), b.levels.size()));
  for (int k = 0; k < depth; ++k) {
    const auto& x = at_level(a.levels, k);
    const auto& y = at_level(b.levels, k);
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      for (int sid = 0; sid < sp.num_strategies(t0, p); ++sid) {
        if (!!x[p][sid] == !!y[p][sid]) continue;
        r.pass = false;
        r.level = k;
        r.player = p;
        r.sid = sid;
        std::ostringstream msg;
        msg << "level " << k << ", " << f.players[p] << " "
            << sp.label(t0, p, sid) << ": " << (x[p][sid] ? "kept" : "dropped")
            << " by the first procedure, " << (y[p][sid] ? "kept" : "dropped")
            << " by the second";
        r.detail = msg.str();
        return r;
      }
    }
  }
  return r;
}

IdentityResult compare_full(const std::string& name, const StrategySpace& sp,
                            const EliminationTrace& a,
                            const EliminationTrace& b) {
  IdentityResult r;
  r.name = name;
  const GameForest& f = sp.forest();
  int depth = static_cast<int>(std::max(a.levels.size(), b.levels.size()));
  for (int k = 0; k < depth; ++k) {
    const ExtendedRestriction& x = at_level(a.levels, k);
    const ExtendedRestriction& y = at_level(b.levels, k);
    for (TreeId t = 0; t < sp.num_trees(); ++t) {
      for (PlayerId p = 0; p < sp.num_players(); ++p) {
        for (int sid = 0; sid < sp.num_strategies(t, p); ++sid) {
          if (!!x.y[t][p][sid] == !!y.y[t][p][sid]) continue;
          r.pass = false;
          r.level = k;
          r.player = p;
          r.sid = sid;
          std::ostringstream msg;
          msg << "level " << k << ", tree " << f.trees[t].name << ", "
              << f.players[p] << " " << sp.label(t, p, sid)
              << ": kept by one operator only";
          r.detail = msg.str();
          return r;
        }
      }
    }
  }
  return r;
}

}  // namespace

CrossCheckReport cross_check(const GameForest& forest,
                             const EngineOptions& engine,
                             const SolveOptions& oracle) {
  StrategySpace sp(forest);
  NormalForm nf(sp);

  EliminationTrace icsd = eliminate(nf, Concept::ICSD, engine);
  EliminationTrace icwd = eliminate(nf, Concept::ICWD, engine);
  EliminationTrace ia = eliminate(nf, Concept::IA, engine);
  LevelTrace efr = efr_levels(sp, oracle);
  LevelTrace pr = pr_levels(sp, oracle);
  LevelTrace prr = prr_levels(sp, oracle);

  CrossCheckReport rep;
  rep.identities.push_back(compare_base("theorem-1", sp, icsd, efr));
  rep.identities.push_back(compare_base("theorem-2", sp, icwd, pr));
  rep.identities.push_back(compare_base("proposition-1", sp, ia, prr));
  rep.identities.push_back(compare_levels("proposition-2", sp, pr, prr));
  rep.identities.push_back(compare_full("corollary-1", sp, ia, icwd));

  // The per-tree admissibility identity without intersecting with the
  // full game's strategies: does every tree component of the
  // admissibility fixed point equal the induced image of the relaxed
  // survivors? Reported, not asserted.
  {
    const GameForest& f = sp.forest();
    TreeId t0 = f.base_tree;
    bool holds = true;
    int depth = static_cast<int>(
        std::max(ia.levels.size(), prr.levels.size()));
    for (int k = 0; k < depth && holds; ++k) {
      const ExtendedRestriction& y = at_level(ia.levels, k);
      const auto& s = at_level(prr.levels, k);
      for (TreeId t : f.partial_trees(t0)) {
        for (PlayerId p = 0; p < sp.num_players(); ++p) {
          std::vector<char> image(sp.num_strategies(t, p), 0);
          for (int sid = 0; sid < sp.num_strategies(t0, p); ++sid)
            if (s[p][sid]) image[sp.induce(t0, p, sid, t)] = 1;
          for (int sid = 0; sid < sp.num_strategies(t, p); ++sid)
            holds = holds && (!!y.y[t][p][sid] == !!image[sid]);
        }
      }
    }
    rep.notes.push_back(std::string("unintersected per-tree form: ") +
                        (holds ? "holds" : "does not hold"));
  }
  for (const std::string& n : pr.notes) rep.notes.push_back(n);

  return rep;
}

}  // namespace unaware
