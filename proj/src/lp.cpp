#include "unaware/lp.hpp"

#include <cassert>
#include <stdexcept>

namespace unaware::lp {

void Problem::set_objective(std::vector<Rat> c) {
  assert(static_cast<int>(c.size()) == num_vars_);
  objective_ = std::move(c);
}

void Problem::add_le(std::vector<Rat> a, Rat b) {
  assert(static_cast<int>(a.size()) == num_vars_);
  rows_.push_back(Row{std::move(a), Rel::Le, std::move(b)});
}

void Problem::add_ge(std::vector<Rat> a, Rat b) {
  assert(static_cast<int>(a.size()) == num_vars_);
  rows_.push_back(Row{std::move(a), Rel::Ge, std::move(b)});
}

void Problem::add_eq(std::vector<Rat> a, Rat b) {
  assert(static_cast<int>(a.size()) == num_vars_);
  rows_.push_back(Row{std::move(a), Rel::Eq, std::move(b)});
}

namespace {

// Dense simplex tableau in canonical form. Columns: structural vars,
// slack/surplus vars, artificial vars, then the rhs.
struct Tableau {
  int m = 0;                        // constraint rows
  int n = 0;                        // total columns excluding rhs
  std::vector<std::vector<Rat>> a;  // m rows, each n+1 wide (last = rhs)
  std::vector<Rat> cost;            // n reduced costs (maximization)
  Rat obj_shift;                    // objective value of current basis
  std::vector<int> basis;           // basis variable per row

  void pivot(int row, int col) {
    Rat p = a[row][col];
    for (int j = 0; j <= n; ++j) a[row][j] /= p;
    for (int r = 0; r < m; ++r) {
      if (r == row || a[r][col] == 0) continue;
      Rat f = a[r][col];
      for (int j = 0; j <= n; ++j) a[r][j] -= f * a[row][j];
    }
    if (cost[col] != 0) {
      Rat f = cost[col];
      for (int j = 0; j < n; ++j) cost[j] -= f * a[row][j];
      obj_shift += f * a[row][n];
    }
    basis[row] = col;
  }

  // Bland's rule: entering column is the lowest-index improving one,
  // leaving row breaks ratio ties by lowest basis index. Terminates
  // without cycling.
  Status run(const std::vector<bool>& allowed) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < n; ++j) {
        if (allowed[j] && cost[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Status::Optimal;
      int leave = -1;
      Rat best;
      for (int r = 0; r < m; ++r) {
        if (a[r][enter] <= 0) continue;
        Rat ratio = a[r][n] / a[r][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis[r] < basis[leave])) {
          leave = r;
          best = ratio;
        }
      }
      if (leave < 0) return Status::Unbounded;
      pivot(leave, enter);
    }
  }
};

}  // namespace

Result Problem::solve() const {
  int m = static_cast<int>(rows_.size());
  int n_struct = num_vars_;

  int n_slack = 0;
  for (const Row& r : rows_)
    if (r.rel != Rel::Eq) ++n_slack;

  Tableau t;
  t.m = m;
  t.n = n_struct + n_slack + m;  // one artificial per row, some unused
  t.a.assign(m, std::vector<Rat>(t.n + 1));
  t.basis.assign(m, -1);

  int slack_at = n_struct;
  int art_base = n_struct + n_slack;
  std::vector<int> artificial(m, -1);

  for (int r = 0; r < m; ++r) {
    const Row& row = rows_[r];
    Rat sign = (row.b < 0) ? rat(-1) : rat(1);
    for (int j = 0; j < n_struct; ++j) t.a[r][j] = sign * row.a[j];
    t.a[r][t.n] = sign * row.b;
    if (row.rel != Rel::Eq) {
      Rat s = (row.rel == Rel::Le) ? rat(1) : rat(-1);
      t.a[r][slack_at] = sign * s;
      if (t.a[r][slack_at] == 1) t.basis[r] = slack_at;
      ++slack_at;
    }
    if (t.basis[r] < 0) {
      artificial[r] = art_base + r;
      t.a[r][artificial[r]] = 1;
      t.basis[r] = artificial[r];
    }
  }

  std::vector<bool> allowed(t.n, true);

  bool need_phase1 = false;
  for (int r = 0; r < m; ++r)
    if (artificial[r] >= 0) need_phase1 = true;

  if (need_phase1) {
    // Phase 1: maximize -(sum of artificials).
    t.cost.assign(t.n, Rat());
    t.obj_shift = 0;
    for (int r = 0; r < m; ++r) {
      if (artificial[r] < 0) continue;
      for (int j = 0; j <= t.n; ++j) {
        if (j == t.n)
          t.obj_shift += t.a[r][j];
        else if (j != artificial[r])
          t.cost[j] += t.a[r][j];
      }
    }
    t.obj_shift = -t.obj_shift;
    // cost currently holds sum of artificial rows; maximizing
    // -(sum art) == maximizing sum of those rows over non-artificials.
    Status s1 = t.run(allowed);
    (void)s1;  // phase 1 is always bounded below by 0
    if (t.obj_shift < 0) return Result{Status::Infeasible, {}, {}};
    // Drive any artificial still in the basis out, or zero its row.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < art_base) continue;
      int enter = -1;
      for (int j = 0; j < art_base; ++j) {
        if (t.a[r][j] != 0) {
          enter = j;
          break;
        }
      }
      if (enter >= 0) t.pivot(r, enter);
    }
    for (int j = art_base; j < t.n; ++j) allowed[j] = false;
  }

  // Phase 2.
  t.cost.assign(t.n, Rat());
  t.obj_shift = 0;
  for (int j = 0; j < n_struct; ++j) t.cost[j] = objective_[j];
  for (int r = 0; r < m; ++r) {
    int b = t.basis[r];
    if (b >= art_base) continue;  // degenerate artificial row, all zeros
    if (t.cost[b] == 0) continue;
    Rat f = t.cost[b];
    for (int j = 0; j < t.n; ++j) t.cost[j] -= f * t.a[r][j];
    t.obj_shift += f * t.a[r][t.n];
  }
  Status s2 = t.run(allowed);
  if (s2 == Status::Unbounded) return Result{Status::Unbounded, {}, {}};

  Result res;
  res.status = Status::Optimal;
  res.objective = t.obj_shift;
  res.x.assign(n_struct, Rat());
  for (int r = 0; r < m; ++r)
    if (t.basis[r] < n_struct) res.x[t.basis[r]] = t.a[r][t.n];
  return res;
}

}  // namespace unaware::lp
