#pragma once

#include <string>
#include <vector>

#include "unaware/strategy.hpp"

namespace unaware {

// A restriction Y ⊆ S^T in product form: a set of own strategies and a
// set of opponent profiles, both within one tree's scope for one player.
struct Restriction {
  TreeId tree = -1;
  PlayerId player = -1;
  std::vector<char> own;  // indexed by sid over S_player^tree
  std::vector<char> opp;  // indexed by opponent profile over tree

  bool own_empty() const {
    for (char c : own)
      if (c) return false;
    return true;
  }
  bool opp_empty() const {
    for (char c : opp)
      if (c) return false;
    return true;
  }
};

// One component per tree and player: the survivors. The union over
// trees of the per-tree products is the extended restriction.
struct ExtendedRestriction {
  std::vector<std::vector<std::vector<char>>> y;  // [tree][player][sid]

  bool operator==(const ExtendedRestriction&) const = default;
};

// A normal-form information set: the restriction S^{T_h}(h) of profiles
// allowing h, with the h's that give rise to it (duplicates from
// distinct information sets are folded together, provenance retained).
struct NFInfoSet {
  Restriction set;
  std::vector<int> sources;  // infoset indices, canonical order
};

// The generalized normal form: per-tree payoff tables over partial
// strategy profiles plus each player's family of normal-form
// information sets.
class NormalForm {
 public:
  explicit NormalForm(const StrategySpace& space);

  const StrategySpace& space() const { return *space_; }

  const Rat& payoff(TreeId t, PlayerId p, long pid) const {
    return u_[t][p][pid];
  }

  // X_p(h) for a single information set h of player p.
  const Restriction& nf_infoset(int h) const { return by_infoset_[h]; }

  // The deduplicated family 𝒳_p, canonical order.
  const std::vector<NFInfoSet>& nf_family(PlayerId p) const {
    return family_[p];
  }

  // Trees of the normal forms in 𝒮_p = { S^{T_h} : h ∈ H_p }, ascending.
  const std::vector<TreeId>& nf_trees(PlayerId p) const {
    return nf_trees_[p];
  }

  ExtendedRestriction full() const;

  // X ∩ Y^{T'}: componentwise product intersection at X's tree.
  Restriction intersect(const Restriction& x,
                        const ExtendedRestriction& y) const;

  // The unrestricted restriction S^t for player p.
  Restriction full_restriction(TreeId t, PlayerId p) const;

  // CSV payoff table of tree t from player p's perspective: rows = p's
  // strategies, columns = opponent profiles, cells = payoff vectors in
  // player order joined by '|'.
  std::string export_csv(TreeId t, PlayerId p) const;

  // Text listing of p's normal-form information sets as strategy names.
  std::string describe_family(PlayerId p) const;

 private:
  const StrategySpace* space_;
  std::vector<std::vector<std::vector<Rat>>> u_;  // [tree][player][pid]
  std::vector<Restriction> by_infoset_;           // [infoset]
  std::vector<std::vector<NFInfoSet>> family_;    // [player]
  std::vector<std::vector<TreeId>> nf_trees_;     // [player]
};

}  // namespace unaware
