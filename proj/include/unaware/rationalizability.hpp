#pragma once

#include <map>
#include <string>
#include <vector>

#include "unaware/strategy.hpp"

namespace unaware {

// A belief at an information set h: probabilities on opponent profiles
// of the T_h-partial game. Entries are positive and sum to 1, sorted by
// profile id.
using Belief = std::vector<std::pair<long, Rat>>;

struct SolveOptions {
  // Full-support checks degrade to plain feasibility when false; exists
  // for mutation testing only.
  bool require_positive = true;
  int max_levels = 64;
  // At information sets no surviving opponent profile allows, the
  // prudent procedure imposes no constraint. When set, also evaluate
  // the alternative reading (any belief allowing the set) and record a
  // note whenever the two disagree.
  bool compare_fallbacks = false;
};

struct LevelTrace {
  TreeId scope = -1;  // survivors are strategies of this tree's game
  // levels[k][player][sid]; levels[0] is everything, the last two
  // levels coincide (fixed point) unless max_levels was hit.
  std::vector<std::vector<std::vector<char>>> levels;
  std::vector<std::string> notes;
  bool converged = false;

  const std::vector<std::vector<char>>& fixed_point() const {
    return levels.back();
  }
};

// Expected payoff for the owner of h conditional on h having been
// reached, with own play own_sid from h on. Every profile in the belief
// must allow h.
Rat expected_payoff_at(const StrategySpace& sp, int h, int own_sid,
                       const Belief& belief);

// Level sets of extensive-form rationalizability: at each information
// set the player best-responds to a belief concentrated on the deepest
// opponent level still consistent with the information set.
LevelTrace efr_levels(const StrategySpace& sp, const SolveOptions& = {});

// Prudent rationalizability: beliefs have full support on the surviving
// opponent profiles consistent with the information set.
LevelTrace pr_levels(const StrategySpace& sp, const SolveOptions& = {});

// The relaxed prudent variant: beliefs need not respect the information
// set nor conditioning; rationality compares tree-level (root) expected
// payoffs against the surviving alternative strategies of the tree.
LevelTrace prr_levels(const StrategySpace& sp, const SolveOptions& = {});

enum class OracleConcept { EFR, PR, PRR };

struct BeliefEntry {
  PlayerId player = -1;
  int sid = -1;  // surviving full-game strategy
  int infoset = -1;
  Belief belief;
};

// One justifying belief per surviving strategy per information set at
// the trace's fixed point, in canonical (player, strategy, information
// set) order. Information sets imposing no constraint on the strategy
// at that point are skipped.
std::vector<BeliefEntry> fixed_point_witnesses(const StrategySpace& sp,
                                               OracleConcept mode,
                                               const LevelTrace& trace,
                                               const SolveOptions& opts = {});

// Repairs an arbitrary profile of per-information-set beliefs into one
// satisfying the conditioning requirement: along each chain of the
// player's information sets, the belief at a successor is the Bayesian
// update of its predecessor's whenever that update is defined, and the
// supplied belief otherwise. Keys are information-set indices.
std::map<int, Belief> condition_belief_system(const StrategySpace& sp,
                                              PlayerId p,
                                              const std::map<int, Belief>& base);

// The player's chain-initial information sets located in tree t: no
// other of their information sets in t precedes them. Their allowing
// sets partition the opponent profiles reached by some information set.
std::vector<int> rank_partition(const GameForest& f, PlayerId p, TreeId t);

// Extends a belief at h (supported on the surviving opponent profiles
// allowing h) to a full-support belief on all surviving profiles:
// weight (1-eps)/|G| goes to each partition block (h's block via bar,
// other blocks uniformly), weight eps spread uniformly over survivors
// no information set of the player reaches; renormalized when that
// remainder is empty. survivors_opp is indexed by T_h-scope opponent
// profile. Throws std::invalid_argument when h is not one of the
// partition blocks.
Belief epsilon_fullsupport_belief(const StrategySpace& sp, int h,
                                  const Belief& bar,
                                  const std::vector<char>& survivors_opp,
                                  const Rat& eps);

}  // namespace unaware
