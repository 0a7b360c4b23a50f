#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "unaware/game.hpp"

namespace unaware {

// Enumerates pure strategies and strategy profiles of every partial
// game of a forest, and answers play/reachability queries about them.
//
// A t-partial strategy of player p assigns an action to each of p's
// information sets located in the t-partial game (canonical order).
// Strategies and profiles are integers: mixed-radix encodings of these
// assignment vectors, so induction between scopes and restriction to
// opponents are index arithmetic.
class StrategySpace {
 public:
  explicit StrategySpace(const GameForest& forest);

  const GameForest& forest() const { return *forest_; }
  int num_players() const { return static_cast<int>(forest_->players.size()); }
  int num_trees() const { return static_cast<int>(forest_->trees.size()); }

  // H_p^t: p's information sets in the t-partial game, canonical order.
  const std::vector<int>& infosets(TreeId t, PlayerId p) const {
    return scope_[t][p].infosets;
  }
  int num_strategies(TreeId t, PlayerId p) const {
    return scope_[t][p].count;
  }

  std::vector<int> assignment(TreeId t, PlayerId p, int sid) const;
  int strategy_id(TreeId t, PlayerId p, const std::vector<int>& asg) const;

  // Strategy id from action labels, one per information set in scope.
  // Throws std::invalid_argument on unknown labels or wrong arity.
  int strategy_from_actions(TreeId t, PlayerId p,
                            const std::vector<std::string>& labels) const;

  // Rendering: action labels in canonical information-set order, joined
  // without separator when all labels are single characters, with "."
  // otherwise. A player with no information set in scope renders "()".
  std::string label(TreeId t, PlayerId p, int sid) const;

  // The coarser-scope strategy induced by restricting the assignment.
  // Requires coarser to be in the t-partial game.
  int induce(TreeId t, PlayerId p, int sid, TreeId coarser) const;

  // All sids in S_p^t that induce `coarse` in the coarser scope.
  std::vector<int> equivalence_class(TreeId t, PlayerId p, TreeId coarser,
                                     int coarse) const;

  // All strategies agreeing with sid except possibly at information set
  // h and the information sets following it (the h-replacements).
  std::vector<int> replacements(TreeId t, PlayerId p, int sid, int h) const;

  // Profiles of the t-partial game.
  long num_profiles(TreeId t) const { return profiles_[t].count; }
  long num_opp_profiles(TreeId t, PlayerId p) const {
    return profiles_[t].count / scope_[t][p].count;
  }
  long profile_id(TreeId t, const std::vector<int>& sids) const;
  std::vector<int> profile_sids(TreeId t, long pid) const;
  int profile_sid(TreeId t, long pid, PlayerId p) const;
  long opp_of(TreeId t, PlayerId p, long pid) const;
  long combine(TreeId t, PlayerId p, int sid, long opp) const;
  int opp_sid(TreeId t, PlayerId p, long opp, PlayerId j) const;
  long induce_opp(TreeId t, PlayerId p, long opp, TreeId coarser) const;

  // Deterministic play: the terminal reached in tree t.
  NodeId play(TreeId t, long pid) const { return profiles_[t].terminal[pid]; }
  Rat payoff(TreeId t, PlayerId p, long pid) const;

  // Reachability. `h` must be located in the t-partial game; each query
  // is answered in T_h after inducing the relevant (partial) strategy.
  bool profile_allows(TreeId t, long pid, int h) const;
  bool strategy_allows(TreeId t, PlayerId p, int sid, int h) const;
  bool opp_allows(TreeId t, PlayerId p, long opp, int h) const;

  // Play conditional on information set h having been reached: the
  // player's own earlier actions are whatever leads to h (even against
  // own_sid), everyone plays on from there as prescribed. own_sid and
  // opp are T_h-partial. Throws std::logic_error when opp excludes h.
  NodeId conditional_play(int h, int own_sid, long opp) const;

 private:
  struct Scope {
    std::vector<int> infosets;  // H_p^t
    std::vector<int> radix;     // |A_h| per entry
    std::vector<int> stride;
    int count = 1;
  };
  struct ProfileSpace {
    std::vector<long> stride;   // per player
    long count = 1;
    std::vector<NodeId> terminal;
  };

  NodeId walk(TreeId t, const std::vector<int>& sids) const;
  int action_at(TreeId t, PlayerId p, int sid, int h) const;
  bool free_walk(TreeId t, NodeId node, int h, PlayerId free_player,
                 const std::vector<int>& sids, NodeId* found) const;
  NodeId child_by_actions(TreeId t, NodeId node,
                          const std::map<PlayerId, std::string>& move) const;

  const GameForest* forest_;
  std::vector<std::vector<Scope>> scope_;     // [tree][player]
  std::vector<ProfileSpace> profiles_;        // [tree]
  // Position of infoset h inside scope_[t][p].infosets, or -1.
  std::vector<std::vector<std::vector<int>>> pos_;  // [tree][player][h]
};

}  // namespace unaware
