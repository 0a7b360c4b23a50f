#include "unaware/dominance.hpp"

#include <stdexcept>

#include "unaware/lp.hpp"

namespace unaware {

namespace {

std::vector<int> restricted_rows(const Restriction& y) {
  std::vector<int> rows;
  for (int k = 0; k < static_cast<int>(y.own.size()); ++k)
    if (y.own[k]) rows.push_back(k);
  return rows;
}

std::vector<long> restricted_cols(const Restriction& y) {
  std::vector<long> cols;
  for (long o = 0; o < static_cast<long>(y.opp.size()); ++o)
    if (y.opp[o]) cols.push_back(o);
  return cols;
}

void verify_mixture(const std::vector<std::pair<int, Rat>>& mix,
                    const std::vector<long>& cols, const PayoffFn& u, int sid,
                    bool strict) {
  Rat total;
  for (const auto& [k, w] : mix) {
    if (w <= 0) throw std::logic_error("dominance witness: weight <= 0");
    total += w;
  }
  if (total != 1) throw std::logic_error("dominance witness: weights != 1");
  bool somewhere = false;
  for (long o : cols) {
    Rat mixed;
    for (const auto& [k, w] : mix) mixed += w * u(k, o);
    Rat gap = mixed - u(sid, o);
    if (gap < 0 || (strict && gap == 0))
      throw std::logic_error("dominance witness fails re-verification");
    if (gap > 0) somewhere = true;
  }
  if (!somewhere) throw std::logic_error("weak dominance witness never strict");
}

}  // namespace

bool strictly_dominated(const NormalForm& nf, int sid, const Restriction& y,
                        DominanceWitness* witness) {
  if (!y.own[sid]) return false;
  std::vector<int> rows = restricted_rows(y);
  std::vector<long> cols = restricted_cols(y);
  if (cols.empty()) return false;
  const StrategySpace& sp = nf.space();
  auto u = [&](int k, long o) {
    return nf.payoff(y.tree, y.player, sp.combine(y.tree, y.player, k, o));
  };

  int n = static_cast<int>(rows.size());
  lp::Problem prob(n + 1);  // sigma weights plus the margin variable
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  prob.set_objective(c);
  for (long o : cols) {
    std::vector<Rat> row(n + 1);
    for (int k = 0; k < n; ++k) row[k] = u(rows[k], o) - u(sid, o);
    row[n] = -1;
    prob.add_ge(row, Rat());
  }
  std::vector<Rat> ones(n + 1);
  for (int k = 0; k < n; ++k) ones[k] = 1;
  prob.add_eq(ones, rat(1));

  lp::Result r = prob.solve();
  if (r.status != lp::Status::Optimal || r.objective <= 0) return false;
  if (witness) {
    witness->dominated = sid;
    witness->strict = true;
    witness->mixture.clear();
    for (int k = 0; k < n; ++k)
      if (r.x[k] > 0) witness->mixture.emplace_back(rows[k], r.x[k]);
    verify_mixture(witness->mixture, cols, u, sid, true);
  }
  return true;
}

bool weakly_dominated(const NormalForm& nf, int sid, const Restriction& y,
                      DominanceWitness* witness) {
  if (!y.own[sid]) return false;
  std::vector<int> rows = restricted_rows(y);
  std::vector<long> cols = restricted_cols(y);
  if (cols.empty()) return false;
  const StrategySpace& sp = nf.space();
  auto u = [&](int k, long o) {
    return nf.payoff(y.tree, y.player, sp.combine(y.tree, y.player, k, o));
  };

  int n = static_cast<int>(rows.size());
  lp::Problem prob(n);
  std::vector<Rat> c(n);  // total slack over all columns
  for (long o : cols)
    for (int k = 0; k < n; ++k) c[k] += u(rows[k], o) - u(sid, o);
  prob.set_objective(c);
  for (long o : cols) {
    std::vector<Rat> row(n);
    for (int k = 0; k < n; ++k) row[k] = u(rows[k], o) - u(sid, o);
    prob.add_ge(row, Rat());
  }
  std::vector<Rat> ones(n, rat(1));
  prob.add_eq(ones, rat(1));

  lp::Result r = prob.solve();
  if (r.status != lp::Status::Optimal || r.objective <= 0) return false;
  if (witness) {
    witness->dominated = sid;
    witness->strict = false;
    witness->mixture.clear();
    for (int k = 0; k < n; ++k)
      if (r.x[k] > 0) witness->mixture.emplace_back(rows[k], r.x[k]);
    verify_mixture(witness->mixture, cols, u, sid, false);
  }
  return true;
}

namespace {

void verify_belief(const BeliefWitness& w, int s,
                   const std::vector<int>& candidates,
                   const std::vector<long>& domain, const PayoffFn& payoff) {
  Rat total;
  for (const auto& [d, p] : w.belief) {
    if (p <= 0) throw std::logic_error("belief witness: probability <= 0");
    total += p;
  }
  if (total != 1) throw std::logic_error("belief witness: probabilities != 1");
  if (w.full_support && w.belief.size() != domain.size())
    throw std::logic_error("belief witness: support not full");
  Rat own;
  for (const auto& [d, p] : w.belief) own += p * payoff(s, d);
  for (int c : candidates) {
    Rat other;
    for (const auto& [d, p] : w.belief) other += p * payoff(c, d);
    if (other > own)
      throw std::logic_error("belief witness fails best-response check");
  }
}

}  // namespace

bool exists_justifying_belief(int s, const std::vector<int>& candidates,
                              const std::vector<long>& domain,
                              const PayoffFn& payoff, BeliefWitness* witness) {
  if (domain.empty()) throw std::invalid_argument("empty belief domain");
  int n = static_cast<int>(domain.size());
  lp::Problem prob(n);
  prob.set_objective(std::vector<Rat>(n));
  std::vector<Rat> ones(n, rat(1));
  prob.add_eq(ones, rat(1));
  for (int c : candidates) {
    std::vector<Rat> row(n);
    for (int d = 0; d < n; ++d)
      row[d] = payoff(s, domain[d]) - payoff(c, domain[d]);
    prob.add_ge(row, Rat());
  }
  lp::Result r = prob.solve();
  if (r.status != lp::Status::Optimal) return false;
  if (witness) {
    witness->full_support = false;
    witness->belief.clear();
    for (int d = 0; d < n; ++d)
      if (r.x[d] > 0) witness->belief.emplace_back(domain[d], r.x[d]);
    verify_belief(*witness, s, candidates, domain, payoff);
  }
  return true;
}

bool exists_fullsupport_justifying_belief(int s,
                                          const std::vector<int>& candidates,
                                          const std::vector<long>& domain,
                                          const PayoffFn& payoff,
                                          BeliefWitness* witness,
                                          bool require_positive) {
  if (domain.empty()) throw std::invalid_argument("empty belief domain");
  if (!require_positive)
    return exists_justifying_belief(s, candidates, domain, payoff, witness);
  int n = static_cast<int>(domain.size());
  lp::Problem prob(n + 1);  // probabilities plus their common lower bound
  std::vector<Rat> c(n + 1);
  c[n] = 1;
  prob.set_objective(c);
  std::vector<Rat> ones(n + 1);
  for (int d = 0; d < n; ++d) ones[d] = 1;
  prob.add_eq(ones, rat(1));
  for (int cand : candidates) {
    std::vector<Rat> row(n + 1);
    for (int d = 0; d < n; ++d)
      row[d] = payoff(s, domain[d]) - payoff(cand, domain[d]);
    prob.add_ge(row, Rat());
  }
  for (int d = 0; d < n; ++d) {
    std::vector<Rat> row(n + 1);
    row[d] = 1;
    row[n] = -1;
    prob.add_ge(row, Rat());
  }
  lp::Result r = prob.solve();
  if (r.status != lp::Status::Optimal || r.objective <= 0) return false;
  if (witness) {
    witness->full_support = true;
    witness->belief.clear();
    for (int d = 0; d < n; ++d) witness->belief.emplace_back(domain[d], r.x[d]);
    verify_belief(*witness, s, candidates, domain, payoff);
  }
  return true;
}

}  // namespace unaware
