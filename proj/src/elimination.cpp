#include "unaware/elimination.hpp"

#include <algorithm>

namespace unaware {

namespace {

// Trees whose normal forms the scope-t operator consults, ascending.
std::vector<TreeId> consulted_trees(const GameForest& f, TreeId t,
                                    const EngineOptions& opts) {
  std::vector<TreeId> out;
  for (TreeId u = 0; u < static_cast<TreeId>(f.trees.size()); ++u) {
    if (u == t ? opts.reflexive : (opts.cross_tree && f.reaches[t][u]))
      out.push_back(u);
  }
  return out;
}

bool check_strategy(const NormalForm& nf, Concept mode,
                    const ExtendedRestriction& y, TreeId t, PlayerId p,
                    int sid, const EngineOptions& opts, Removal* out) {
  const StrategySpace& sp = nf.space();
  const GameForest& f = sp.forest();
  for (TreeId u : consulted_trees(f, t, opts)) {
    if (opts.observe) opts.observe(t, u);
    int image = sp.induce(t, p, sid, u);
    if (mode == Concept::IA) {
      const std::vector<TreeId>& own = nf.nf_trees(p);
      if (!std::binary_search(own.begin(), own.end(), u)) continue;
      Restriction r = nf.intersect(nf.full_restriction(u, p), y);
      DominanceWitness w;
      if (weakly_dominated(nf, image, r, &w)) {
        *out = Removal{t, p, sid, u, image, -1, std::move(w)};
        return true;
      }
      continue;
    }
    const std::vector<NFInfoSet>& family = nf.nf_family(p);
    for (int x = 0; x < static_cast<int>(family.size()); ++x) {
      if (family[x].set.tree != u) continue;
      Restriction r = nf.intersect(family[x].set, y);
      DominanceWitness w;
      bool hit = mode == Concept::ICSD
                     ? strictly_dominated(nf, image, r, &w)
                     : weakly_dominated(nf, image, r, &w);
      if (hit) {
        *out = Removal{t, p, sid, u, image, x, std::move(w)};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<Removal> eliminate_step(const NormalForm& nf, Concept mode,
                                    const ExtendedRestriction& y,
                                    const EngineOptions& opts) {
  const StrategySpace& sp = nf.space();
  std::vector<Removal> removals;
  for (TreeId t = 0; t < sp.num_trees(); ++t) {
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      for (int sid = 0; sid < sp.num_strategies(t, p); ++sid) {
        if (!y.y[t][p][sid]) continue;
        Removal r;
        if (check_strategy(nf, mode, y, t, p, sid, opts, &r))
          removals.push_back(std::move(r));
      }
    }
  }
  return removals;
}

ExtendedRestriction apply_removals(const ExtendedRestriction& y,
                                   const std::vector<Removal>& removals) {
  ExtendedRestriction next = y;
  for (const Removal& r : removals) next.y[r.tree][r.player][r.sid] = 0;
  return next;
}

EliminationTrace eliminate(const NormalForm& nf, Concept mode,
                           const EngineOptions& opts) {
  EliminationTrace trace;
  trace.levels.push_back(nf.full());
  for (;;) {
    std::vector<Removal> step =
        eliminate_step(nf, mode, trace.levels.back(), opts);
    if (step.empty()) break;
    trace.levels.push_back(apply_removals(trace.levels.back(), step));
    trace.removals.push_back(std::move(step));
  }
  return trace;
}

}  // namespace unaware
