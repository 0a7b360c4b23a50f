#pragma once

#include <vector>

#include "unaware/rational.hpp"

namespace unaware::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
  Status status = Status::Infeasible;
  Rat objective;           // valid when Optimal
  std::vector<Rat> x;      // structural variables, valid when Optimal
};

// A linear program over nonnegative variables:
//   maximize c.x  subject to  rows, x >= 0.
// Solved by dense two-phase simplex with Bland's rule, all pivots exact.
// Problems in this library are tiny (tens of variables), so the dense
// exact tableau is the right trade-off.
class Problem {
 public:
  explicit Problem(int num_vars) : num_vars_(num_vars), objective_(num_vars) {}

  void set_objective(std::vector<Rat> c);
  void add_le(std::vector<Rat> a, Rat b);
  void add_ge(std::vector<Rat> a, Rat b);
  void add_eq(std::vector<Rat> a, Rat b);

  Result solve() const;

 private:
  enum class Rel { Le, Ge, Eq };
  struct Row {
    std::vector<Rat> a;
    Rel rel;
    Rat b;
  };

  int num_vars_;
  std::vector<Rat> objective_;
  std::vector<Row> rows_;
};

}  // namespace unaware::lp
