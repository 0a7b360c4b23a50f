#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "unaware/normal_form.hpp"

namespace unaware {

struct DominanceWitness {
  int dominated = -1;
  // Dominating mixture: (strategy id, weight), weights sum to 1.
  std::vector<std::pair<int, Rat>> mixture;
  bool strict = false;
};

struct BeliefWitness {
  // (opponent profile id, probability), probabilities sum to 1.
  std::vector<std::pair<long, Rat>> belief;
  bool full_support = false;
};

// Payoff of an own candidate against an opponent profile, in whatever
// scope the caller set up (ex-ante tables or conditional-play values).
using PayoffFn = std::function<Rat(int candidate, long opp)>;

// Strict dominance of sid within the restriction y: a mixture over Y_i
// beating sid against every opponent profile in Y_{-i}. False when
// sid ∉ Y_i or Y_{-i} = ∅ (the definitions' guard).
bool strictly_dominated(const NormalForm& nf, int sid, const Restriction& y,
                        DominanceWitness* witness = nullptr);

// Weak dominance: weak inequality everywhere, strict somewhere.
bool weakly_dominated(const NormalForm& nf, int sid, const Restriction& y,
                      DominanceWitness* witness = nullptr);

// Does a belief over `domain` make s_i (weakly) a best response within
// `candidates`? Pearce's Lemma 3 oracle. Throws std::invalid_argument
// on an empty domain.
bool exists_justifying_belief(int s, const std::vector<int>& candidates,
                              const std::vector<long>& domain,
                              const PayoffFn& payoff,
                              BeliefWitness* witness = nullptr);

// Same with a strictly positive probability on every domain element
// (Pearce's Lemma 4 oracle). `require_positive` exists for mutation
// testing only; production callers leave it true.
bool exists_fullsupport_justifying_belief(
    int s, const std::vector<int>& candidates, const std::vector<long>& domain,
    const PayoffFn& payoff, BeliefWitness* witness = nullptr,
    bool require_positive = true);

}  // namespace unaware
