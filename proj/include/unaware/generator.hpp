#pragma once

#include <cstdint>
#include <string>

#include "unaware/game.hpp"

namespace unaware {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  int players = 2;      // 2..3
  int trees = 2;        // 1..3; tree 0 is the base, the rest prune it
  int max_depth = 2;    // <= 3
  int max_actions = 2;  // per player per node, <= 3
  int payoff_min = -9;  // small integers; ties are wanted, they exercise
  int payoff_max = 9;   // the weak-dominance boundaries
  // Probability that a view is retargeted into a coarser tree, and that
  // two compatible nodes are merged into one information set.
  double density = 0.5;
  // Size caps; a draw exceeding them is rejected.
  int max_nodes = 40;
  int max_strategies = 200;  // per tree and player
  long max_profiles = 5000;  // per tree
  int retries = 500;
};

struct GeneratedGame {
  std::string document;  // the JSON text, parseable by parse_game
  GameForest forest;
  int attempts = 0;  // draws consumed, successful one included
};

// Draws a valid dynamic game with unawareness: a random base tree,
// coarser trees obtained by pruning whole action branches, and views
// retargeted into coarser trees, rejection-sampled until the validator
// accepts. Deterministic in the seed. Throws std::runtime_error when the
// retry budget is exhausted.
GeneratedGame generate(const GeneratorConfig& config);

}  // namespace unaware
