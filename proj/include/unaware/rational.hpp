#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace unaware {

// Exact rational scalar. All payoffs, mixture weights and belief
// probabilities in this library are Rat; there is no floating point
// anywhere in a decision path.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p/q", "p", or "-p/q". Returns nullopt on malformed input.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical "p/q" rendering; integers render without the "/q" part.
std::string format_rational(const Rat& q);

}  // namespace unaware
