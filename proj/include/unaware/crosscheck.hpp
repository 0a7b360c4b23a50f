#pragma once

#include <string>
#include <vector>

#include "unaware/elimination.hpp"
#include "unaware/rationalizability.hpp"

namespace unaware {

struct IdentityResult {
  std::string name;  // "theorem-1", "theorem-2", ...
  bool pass = true;
  // First divergence, when failing.
  int level = -1;
  PlayerId player = -1;
  int sid = -1;
  std::string detail;
};

struct CrossCheckReport {
  std::vector<IdentityResult> identities;
  // Non-fatal observations (e.g. whether the unintersected form of the
  // per-tree admissibility identity also holds).
  std::vector<std::string> notes;
  // Reproducer, filled in by callers that know where the game came from.
  std::uint64_t seed = 0;
  std::string origin;

  bool pass() const {
    for (const IdentityResult& r : identities)
      if (!r.pass) return false;
    return true;
  }
};

// Runs all six engines on the forest and compares them level by level:
//   theorem-1:      strict-elimination survivors (base scope) vs EFR
//   theorem-2:      weak-elimination survivors (base scope) vs PR
//   proposition-1:  admissibility survivors (base scope) vs relaxed PR
//   proposition-2:  PR vs relaxed PR
//   corollary-1:    admissibility vs weak elimination, all trees
// The engine and oracle options exist so tests can confirm that the
// identities notice a sabotaged engine.
CrossCheckReport cross_check(const GameForest& forest,
                             const EngineOptions& engine = {},
                             const SolveOptions& oracle = {});

}  // namespace unaware
