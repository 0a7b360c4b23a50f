#pragma once

#include <functional>
#include <vector>

#include "unaware/dominance.hpp"
#include "unaware/normal_form.hpp"

namespace unaware {

enum class Concept {
  ICSD,  // iterated conditional strict dominance
  ICWD,  // iterated conditional weak dominance
  IA,    // iterated admissibility on the player's own normal forms
};

struct EngineOptions {
  // Consult the coarser trees a scope refers to (transitively). Off is
  // for mutation testing only.
  bool cross_tree = true;
  // Consult the scope's own tree. Off is for mutation testing only.
  bool reflexive = true;
  // Called once per (scope tree, consulted tree) pair per strategy
  // check; lets tests pin down which trees an operator touches.
  std::function<void(TreeId scope, TreeId accessed)> observe;
};

struct Removal {
  TreeId tree = -1;      // scope the strategy was removed from
  PlayerId player = -1;
  int sid = -1;
  TreeId via_tree = -1;  // tree where the dominating comparison lives
  int via_sid = -1;      // the strategy's induced image there
  // Index into nf_family(player) of the conditioning information set,
  // or -1 when the comparison is over the whole normal form.
  int via_infoset = -1;
  DominanceWitness witness;
};

struct EliminationTrace {
  // levels[0] is the full extended restriction; levels[k+1] results from
  // applying removals[k] simultaneously.
  std::vector<ExtendedRestriction> levels;
  std::vector<std::vector<Removal>> removals;

  const ExtendedRestriction& fixed_point() const { return levels.back(); }
};

// One simultaneous maximal round of the operator. Removals use the
// first dominating comparison in canonical order (trees ascending, then
// the player's information-set family order).
std::vector<Removal> eliminate_step(const NormalForm& nf, Concept mode,
                                    const ExtendedRestriction& y,
                                    const EngineOptions& opts = {});

// Iterate to the fixed point.
EliminationTrace eliminate(const NormalForm& nf, Concept mode,
                           const EngineOptions& opts = {});

ExtendedRestriction apply_removals(const ExtendedRestriction& y,
                                   const std::vector<Removal>& removals);

}  // namespace unaware
