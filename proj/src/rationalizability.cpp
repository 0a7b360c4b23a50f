#include "unaware/rationalizability.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "unaware/dominance.hpp"

namespace unaware {

namespace {

Rat terminal_payoff(const GameForest& f, TreeId t, NodeId z, PlayerId p) {
  return f.trees[t].nodes[z].payoffs.at(p);
}

// Per-tree images of a survivor set under induction from the full game.
// img[t][j][sid] over t-scope strategy ids; empty for trees outside the
// base tree's partial game.
using Images = std::vector<std::vector<std::vector<char>>>;

Images induced_images(const StrategySpace& sp,
                      const std::vector<std::vector<char>>& surv) {
  const GameForest& f = sp.forest();
  TreeId t0 = f.base_tree;
  Images img(sp.num_trees());
  for (TreeId t : f.partial_trees(t0)) {
    img[t].resize(sp.num_players());
    for (PlayerId j = 0; j < sp.num_players(); ++j) {
      img[t][j].assign(sp.num_strategies(t, j), 0);
      for (int s = 0; s < sp.num_strategies(t0, j); ++s)
        if (surv[j][s]) img[t][j][sp.induce(t0, j, s, t)] = 1;
    }
  }
  return img;
}

bool opp_in_image(const StrategySpace& sp, const Images& img, TreeId t,
                  PlayerId i, long o) {
  for (PlayerId j = 0; j < sp.num_players(); ++j) {
    if (j == i) continue;
    if (!img[t][j][sp.opp_sid(t, i, o, j)]) return false;
  }
  return true;
}

PayoffFn conditional_payoff(const StrategySpace& sp, int h) {
  const GameForest& f = sp.forest();
  PlayerId p = f.infosets[h].player;
  TreeId t = f.infosets[h].tree;
  return [&sp, &f, h, p, t](int cand, long o) {
    return terminal_payoff(f, t, sp.conditional_play(h, cand, o), p);
  };
}

std::vector<std::vector<char>> everything(const StrategySpace& sp, TreeId t0) {
  std::vector<std::vector<char>> all(sp.num_players());
  for (PlayerId p = 0; p < sp.num_players(); ++p)
    all[p].assign(sp.num_strategies(t0, p), 1);
  return all;
}

}  // namespace

Rat expected_payoff_at(const StrategySpace& sp, int h, int own_sid,
                       const Belief& belief) {
  PayoffFn u = conditional_payoff(sp, h);
  Rat total;
  for (const auto& [o, prob] : belief) total += prob * u(own_sid, o);
  return total;
}

LevelTrace efr_levels(const StrategySpace& sp, const SolveOptions& opts) {
  const GameForest& f = sp.forest();
  TreeId t0 = f.base_tree;
  int np = sp.num_players();

  LevelTrace trace;
  trace.scope = t0;
  trace.levels.push_back(everything(sp, t0));
  std::vector<Images> imgs;
  imgs.push_back(induced_images(sp, trace.levels[0]));

  for (int k = 1; k <= opts.max_levels; ++k) {
    std::vector<std::vector<char>> next(np);
    // Belief domain per information set: opponent profiles allowing it
    // drawn from the deepest earlier level still consistent with it.
    std::map<int, std::vector<long>> domain;
    std::map<std::pair<int, int>, char> memo;  // (h, induced sid) -> rational
    for (PlayerId i = 0; i < np; ++i) {
      next[i].assign(sp.num_strategies(t0, i), 0);
      for (int s = 0; s < sp.num_strategies(t0, i); ++s) {
        bool ok = true;
        for (int h : sp.infosets(t0, i)) {
          if (!sp.strategy_allows(t0, i, s, h)) continue;
          TreeId t = f.infosets[h].tree;
          int stil = sp.induce(t0, i, s, t);
          auto mit = memo.find({h, stil});
          if (mit == memo.end()) {
            auto dit = domain.find(h);
            if (dit == domain.end()) {
              std::vector<long> d;
              for (int m = k - 1; m >= 0 && d.empty(); --m) {
                for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
                  if (sp.opp_allows(t, i, o, h) &&
                      opp_in_image(sp, imgs[m], t, i, o))
                    d.push_back(o);
              }
              dit = domain.emplace(h, std::move(d)).first;
            }
            // Still empty after falling back to level 0: no opponent
            // profile at all allows h (the player is unaware of an own
            // action leading there), so no belief is asked for and the
            // information set imposes no constraint.
            if (dit->second.empty()) continue;
            bool rational = exists_justifying_belief(
                stil, sp.replacements(t, i, stil, h), dit->second,
                conditional_payoff(sp, h));
            mit = memo.emplace(std::pair<int, int>{h, stil},
                               static_cast<char>(rational))
                      .first;
          }
          if (!mit->second) {
            ok = false;
            break;
          }
        }
        next[i][s] = ok;
      }
    }
    bool fixed = next == trace.levels.back();
    trace.levels.push_back(std::move(next));
    imgs.push_back(induced_images(sp, trace.levels.back()));
    if (fixed) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

LevelTrace pr_levels(const StrategySpace& sp, const SolveOptions& opts) {
  const GameForest& f = sp.forest();
  TreeId t0 = f.base_tree;
  int np = sp.num_players();

  LevelTrace trace;
  trace.scope = t0;
  trace.levels.push_back(everything(sp, t0));

  for (int k = 1; k <= opts.max_levels; ++k) {
    const std::vector<std::vector<char>>& prev = trace.levels.back();
    Images img = induced_images(sp, prev);
    std::vector<std::vector<char>> next(np);
    std::map<int, std::vector<long>> domain;  // surviving profiles allowing h
    std::map<std::pair<int, int>, char> memo;
    for (PlayerId i = 0; i < np; ++i) {
      next[i].assign(sp.num_strategies(t0, i), 0);
      for (int s = 0; s < sp.num_strategies(t0, i); ++s) {
        if (!prev[i][s]) continue;
        bool ok = true;
        for (int h : sp.infosets(t0, i)) {
          if (!sp.strategy_allows(t0, i, s, h)) continue;
          TreeId t = f.infosets[h].tree;
          int stil = sp.induce(t0, i, s, t);
          auto dit = domain.find(h);
          if (dit == domain.end()) {
            std::vector<long> d;
            for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
              if (sp.opp_allows(t, i, o, h) && opp_in_image(sp, img, t, i, o))
                d.push_back(o);
            dit = domain.emplace(h, std::move(d)).first;
          }
          if (dit->second.empty()) {
            // No surviving opponent profile reaches h: nothing is asked
            // of the belief there.
            if (opts.compare_fallbacks) {
              std::vector<long> allowing;
              for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
                if (sp.opp_allows(t, i, o, h)) allowing.push_back(o);
              if (allowing.empty()) continue;
              if (!exists_justifying_belief(stil,
                                            sp.replacements(t, i, stil, h),
                                            allowing,
                                            conditional_payoff(sp, h))) {
                std::ostringstream msg;
                msg << "level " << k << ": player " << f.players[i]
                    << " strategy " << sp.label(t0, i, s)
                    << " would fail the constrained fallback at an "
                       "unreached information set in "
                    << f.trees[t].name;
                trace.notes.push_back(msg.str());
              }
            }
            continue;
          }
          auto mit = memo.find({h, stil});
          if (mit == memo.end()) {
            bool rational = exists_fullsupport_justifying_belief(
                stil, sp.replacements(t, i, stil, h), dit->second,
                conditional_payoff(sp, h), nullptr, opts.require_positive);
            mit = memo.emplace(std::pair<int, int>{h, stil},
                               static_cast<char>(rational))
                      .first;
          }
          if (!mit->second) {
            ok = false;
            break;
          }
        }
        next[i][s] = ok;
      }
    }
    bool fixed = next == prev;
    trace.levels.push_back(std::move(next));
    if (fixed) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

LevelTrace prr_levels(const StrategySpace& sp, const SolveOptions& opts) {
  const GameForest& f = sp.forest();
  TreeId t0 = f.base_tree;
  int np = sp.num_players();

  LevelTrace trace;
  trace.scope = t0;
  trace.levels.push_back(everything(sp, t0));

  for (int k = 1; k <= opts.max_levels; ++k) {
    const std::vector<std::vector<char>>& prev = trace.levels.back();
    Images img = induced_images(sp, prev);
    std::vector<std::vector<char>> next(np);
    // (tree, player, induced sid) -> relaxed rational; the constraint
    // at an information set depends on it only through its tree: a
    // full-support belief over the surviving opponent profiles of the
    // tree under which the induced strategy is ex-ante optimal.
    std::map<std::tuple<TreeId, PlayerId, int>, char> memo;
    for (PlayerId i = 0; i < np; ++i) {
      next[i].assign(sp.num_strategies(t0, i), 0);
      for (int s = 0; s < sp.num_strategies(t0, i); ++s) {
        if (!prev[i][s]) continue;
        bool ok = true;
        for (int h : sp.infosets(t0, i)) {
          TreeId t = f.infosets[h].tree;
          int stil = sp.induce(t0, i, s, t);
          auto mit = memo.find({t, i, stil});
          if (mit == memo.end()) {
            // Alternatives range over the surviving strategies' images:
            // optimality among them is the exact dual of weak dominance
            // by a mixture drawn from the surviving set.
            std::vector<int> cands;
            for (int c = 0; c < sp.num_strategies(t, i); ++c)
              if (img[t][i][c]) cands.push_back(c);
            PayoffFn u = [&sp, t, i](int cand, long o) {
              return sp.payoff(t, i, sp.combine(t, i, cand, o));
            };
            std::vector<long> d;
            for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
              if (opp_in_image(sp, img, t, i, o)) d.push_back(o);
            bool rational = exists_fullsupport_justifying_belief(
                stil, cands, d, u, nullptr, opts.require_positive);
            mit = memo.emplace(std::tuple<TreeId, PlayerId, int>{t, i, stil},
                               static_cast<char>(rational))
                      .first;
          }
          if (!mit->second) {
            ok = false;
            break;
          }
        }
        next[i][s] = ok;
      }
    }
    bool fixed = next == prev;
    trace.levels.push_back(std::move(next));
    if (fixed) {
      trace.converged = true;
      break;
    }
  }
  return trace;
}

std::vector<BeliefEntry> fixed_point_witnesses(const StrategySpace& sp,
                                               OracleConcept mode,
                                               const LevelTrace& trace,
                                               const SolveOptions& opts) {
  const GameForest& f = sp.forest();
  TreeId t0 = trace.scope;
  const auto& surv = trace.levels.back();
  std::vector<Images> imgs;
  for (const auto& level : trace.levels)
    imgs.push_back(induced_images(sp, level));

  std::vector<BeliefEntry> out;
  for (PlayerId i = 0; i < sp.num_players(); ++i) {
    for (int s = 0; s < sp.num_strategies(t0, i); ++s) {
      if (!surv[i][s]) continue;
      for (int h : sp.infosets(t0, i)) {
        TreeId t = f.infosets[h].tree;
        int stil = sp.induce(t0, i, s, t);
        BeliefWitness w;
        bool have = false;
        if (mode == OracleConcept::PRR) {
          std::vector<int> cands;
          for (int c = 0; c < sp.num_strategies(t, i); ++c)
            if (imgs.back()[t][i][c]) cands.push_back(c);
          PayoffFn u = [&sp, t, i](int cand, long o) {
            return sp.payoff(t, i, sp.combine(t, i, cand, o));
          };
          std::vector<long> d;
          for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
            if (opp_in_image(sp, imgs.back(), t, i, o)) d.push_back(o);
          have = exists_fullsupport_justifying_belief(stil, cands, d, u, &w,
                                                      opts.require_positive);
        } else {
          if (!sp.strategy_allows(t0, i, s, h)) continue;
          std::vector<long> d;
          if (mode == OracleConcept::EFR) {
            // The level-k domain draws on levels up to k-1.
            int top = std::max(0, static_cast<int>(imgs.size()) - 2);
            for (int m = top; m >= 0 && d.empty(); --m)
              for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
                if (sp.opp_allows(t, i, o, h) &&
                    opp_in_image(sp, imgs[m], t, i, o))
                  d.push_back(o);
            if (d.empty()) continue;  // no profile allows h: no constraint
            have = exists_justifying_belief(stil,
                                            sp.replacements(t, i, stil, h), d,
                                            conditional_payoff(sp, h), &w);
          } else {
            for (long o = 0; o < sp.num_opp_profiles(t, i); ++o)
              if (sp.opp_allows(t, i, o, h) &&
                  opp_in_image(sp, imgs.back(), t, i, o))
                d.push_back(o);
            if (d.empty()) continue;  // unreached: no constraint, no witness
            have = exists_fullsupport_justifying_belief(
                stil, sp.replacements(t, i, stil, h), d,
                conditional_payoff(sp, h), &w, opts.require_positive);
          }
        }
        if (have) out.push_back(BeliefEntry{i, s, h, std::move(w.belief)});
      }
    }
  }
  return out;
}

std::map<int, Belief> condition_belief_system(
    const StrategySpace& sp, PlayerId p, const std::map<int, Belief>& base) {
  const GameForest& f = sp.forest();
  // Topological order along the chains: predecessors first.
  std::vector<int> order;
  std::map<int, int> depth;
  for (const auto& [h, b] : base) {
    int d = 0;
    for (const auto& [h2, b2] : base)
      if (h2 != h && f.precedes[h2][h]) ++d;
    depth[h] = d;
    order.push_back(h);
  }
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return std::pair(depth[a], a) < std::pair(depth[b], b); });

  std::map<int, Belief> out;
  for (int h : order) {
    TreeId t = f.infosets[h].tree;
    // Immediate predecessor: the deepest information set preceding h.
    int pred = -1;
    for (int h2 : order)
      if (h2 != h && f.precedes[h2][h] &&
          (pred == -1 || depth[h2] > depth[pred]))
        pred = h2;
    if (pred == -1) {
      out[h] = base.at(h);
      continue;
    }
    Rat mass;
    Belief filtered;
    for (const auto& [o, prob] : out.at(pred)) {
      if (sp.opp_allows(t, p, o, h)) {
        filtered.emplace_back(o, prob);
        mass += prob;
      }
    }
    if (mass > 0) {
      for (auto& [o, prob] : filtered) prob /= mass;
      out[h] = std::move(filtered);
    } else {
      out[h] = base.at(h);
    }
  }
  return out;
}

std::vector<int> rank_partition(const GameForest& f, PlayerId p, TreeId t) {
  std::vector<int> located;
  for (int h : f.player_infosets[p])
    if (f.infosets[h].tree == t) located.push_back(h);
  std::vector<int> out;
  for (int h : located) {
    bool preceded = false;
    for (int h2 : located)
      if (h2 != h && f.precedes[h2][h]) preceded = true;
    if (!preceded) out.push_back(h);
  }
  return out;
}

Belief epsilon_fullsupport_belief(const StrategySpace& sp, int h,
                                  const Belief& bar,
                                  const std::vector<char>& survivors_opp,
                                  const Rat& eps) {
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("eps outside (0,1)");
  const GameForest& f = sp.forest();
  PlayerId p = f.infosets[h].player;
  TreeId t = f.infosets[h].tree;

  std::vector<int> heads = rank_partition(f, p, t);
  std::vector<std::pair<int, std::vector<long>>> blocks;
  for (int g : heads) {
    std::vector<long> block;
    for (long o = 0; o < static_cast<long>(survivors_opp.size()); ++o)
      if (survivors_opp[o] && sp.opp_allows(t, p, o, g)) block.push_back(o);
    if (!block.empty()) blocks.emplace_back(g, std::move(block));
  }
  bool h_is_head = false;
  for (const auto& [g, block] : blocks) h_is_head = h_is_head || g == h;
  if (!h_is_head)
    throw std::invalid_argument(
        "information set is not a head of the reached-profile partition");

  std::vector<char> reached(survivors_opp.size(), 0);
  for (const auto& [g, block] : blocks)
    for (long o : block) reached[o] = 1;
  std::vector<long> excluded;
  for (long o = 0; o < static_cast<long>(survivors_opp.size()); ++o)
    if (survivors_opp[o] && !reached[o]) excluded.push_back(o);

  Rat ng = rat(static_cast<long>(blocks.size()));
  std::map<long, Rat> mass;
  for (const auto& [o, prob] : bar) mass[o] += (1 - eps) / ng * prob;
  for (const auto& [g, block] : blocks) {
    if (g == h) continue;
    Rat share = (1 - eps) / (ng * rat(static_cast<long>(block.size())));
    for (long o : block) mass[o] += share;
  }
  if (!excluded.empty()) {
    Rat share = eps / rat(static_cast<long>(excluded.size()));
    for (long o : excluded) mass[o] = share;
  } else {
    for (auto& [o, prob] : mass) prob /= (1 - eps);
  }

  Rat total;
  Belief out;
  for (const auto& [o, prob] : mass) {
    if (prob <= 0 || !survivors_opp[o])
      throw std::logic_error("belief extension produced an invalid entry");
    total += prob;
    out.emplace_back(o, prob);
  }
  for (long o = 0; o < static_cast<long>(survivors_opp.size()); ++o)
    if (survivors_opp[o] && !mass.count(o))
      throw std::logic_error("belief extension is not full support");
  if (total != 1) throw std::logic_error("belief extension does not sum to 1");
  return out;
}

}  // namespace unaware
