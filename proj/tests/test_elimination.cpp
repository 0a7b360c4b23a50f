#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "unaware/elimination.hpp"

using namespace unaware;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "fixture ", name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

GameForest fixture(const std::string& name) { return parse_game(slurp(name)); }

std::set<std::string> labels(const StrategySpace& sp,
                             const ExtendedRestriction& y, TreeId t,
                             PlayerId p) {
  std::set<std::string> out;
  for (int sid = 0; sid < sp.num_strategies(t, p); ++sid)
    if (y.y[t][p][sid]) out.insert(sp.label(t, p, sid));
  return out;
}

using L = std::set<std::string>;

// Re-derives each removal from its recorded witness: the dominating
// mixture must beat the removed strategy's induced image inside the
// recorded conditioning set intersected with the level's survivors.
void replay_removals(const NormalForm& nf, const EliminationTrace& tr) {
  const StrategySpace& sp = nf.space();
  for (std::size_t k = 0; k < tr.removals.size(); ++k) {
    for (const Removal& rm : tr.removals[k]) {
      REQUIRE(tr.levels[k].y[rm.tree][rm.player][rm.sid]);
      CHECK(!tr.levels[k + 1].y[rm.tree][rm.player][rm.sid]);
      CHECK(sp.induce(rm.tree, rm.player, rm.sid, rm.via_tree) == rm.via_sid);
      Restriction x =
          rm.via_infoset >= 0
              ? nf.nf_family(rm.player)[rm.via_infoset].set
              : nf.full_restriction(rm.via_tree, rm.player);
      REQUIRE(x.tree == rm.via_tree);
      Restriction y = nf.intersect(x, tr.levels[k]);
      CHECK(rm.witness.dominated == rm.via_sid);
      Rat total = 0;
      bool strict_somewhere = false;
      for (const auto& [s, w] : rm.witness.mixture) {
        CHECK(w > 0);
        CHECK(y.own[s]);
        total += w;
      }
      CHECK(total == 1);
      for (long o = 0; o < static_cast<long>(y.opp.size()); ++o) {
        if (!y.opp[o]) continue;
        Rat mixed = 0;
        for (const auto& [s, w] : rm.witness.mixture)
          mixed +=
              w * nf.payoff(rm.via_tree, rm.player,
                            sp.combine(rm.via_tree, rm.player, s, o));
        Rat base = nf.payoff(rm.via_tree, rm.player,
                             sp.combine(rm.via_tree, rm.player, rm.via_sid, o));
        if (rm.witness.strict)
          CHECK(mixed > base);
        else
          CHECK(mixed >= base);
        strict_somewhere = strict_somewhere || mixed > base;
      }
      CHECK(strict_somewhere);
    }
    CHECK(apply_removals(tr.levels[k], tr.removals[k]) == tr.levels[k + 1]);
  }
}

void check_nesting(const EliminationTrace& tr) {
  for (std::size_t k = 0; k + 1 < tr.levels.size(); ++k)
    for (std::size_t t = 0; t < tr.levels[k].y.size(); ++t)
      for (std::size_t p = 0; p < tr.levels[k].y[t].size(); ++p) {
        bool nonempty = false;
        for (std::size_t s = 0; s < tr.levels[k].y[t][p].size(); ++s) {
          CHECK(tr.levels[k].y[t][p][s] >= tr.levels[k + 1].y[t][p][s]);
          nonempty = nonempty || tr.levels[k + 1].y[t][p][s];
        }
        CHECK(nonempty);
      }
}

}  // namespace

TEST_CASE("coordination fixture: all three operators, pinned level sets") {
  GameForest f = fixture("g2.game");
  StrategySpace sp(f);
  NormalForm nf(sp);
  TreeId t = *f.tree_index("T");
  TreeId tp = *f.tree_index("Tp");
  PlayerId r = *f.player_index("R");
  PlayerId c = *f.player_index("C");

  for (Concept mode : {Concept::ICSD, Concept::ICWD, Concept::IA}) {
    CAPTURE(static_cast<int>(mode));
    EliminationTrace tr = eliminate(nf, mode);
    REQUIRE(tr.levels.size() >= 3);
    CHECK(labels(sp, tr.levels[1], t, r) ==
          L{"nMBB", "nMBS", "nMSB", "nMSS", "nMMB", "nMMS", "tBMB", "tBMS",
            "tSMB", "tSMS", "tMMB", "tMMS"});
    CHECK(labels(sp, tr.levels[1], t, c) == L{"MB"});
    CHECK(labels(sp, tr.levels[1], tp, c) == L{"B"});
    CHECK(labels(sp, tr.levels[1], tp, r) == L{"B", "S"});
    CHECK(labels(sp, tr.levels[2], t, r) == L{"nMBB", "nMSB", "nMMB"});
    CHECK(labels(sp, tr.levels[2], tp, r) == L{"B"});
    CHECK(tr.fixed_point() == tr.levels[2]);
    replay_removals(nf, tr);
    check_nesting(tr);
  }
}

TEST_CASE("weak and strict elimination differ when ties protect a strategy") {
  GameForest f = fixture("ia_filter.game");
  StrategySpace sp(f);
  NormalForm nf(sp);
  EliminationTrace strict = eliminate(nf, Concept::ICSD);
  EliminationTrace weak = eliminate(nf, Concept::ICWD);
  EliminationTrace adm = eliminate(nf, Concept::IA);
  CHECK(labels(sp, strict.fixed_point(), 0, 0) == L{"U", "D"});
  CHECK(labels(sp, strict.fixed_point(), 0, 1) == L{"L"});
  CHECK(labels(sp, weak.fixed_point(), 0, 0) == L{"U"});
  CHECK(labels(sp, weak.fixed_point(), 0, 1) == L{"L"});
  CHECK(adm.fixed_point() == weak.fixed_point());
}

TEST_CASE("sequential fixtures: conditioning drives the elimination") {
  GameForest cp = fixture("centipede.game");
  StrategySpace sp(cp);
  NormalForm nf(sp);
  // The second mover's choice matters only off the first mover's safe
  // action; conditioning on being reached removes it at round one, which
  // unravels to the backward-induction profile.
  for (Concept mode : {Concept::ICSD, Concept::ICWD, Concept::IA}) {
    EliminationTrace tr = eliminate(nf, mode);
    CHECK(labels(sp, tr.levels[1], 0, 1) == L{"d"});
    CHECK(labels(sp, tr.fixed_point(), 0, 0) == L{"d"});
    replay_removals(nf, tr);
  }

  GameForest ot = fixture("offpath_tie.game");
  StrategySpace sp2(ot);
  NormalForm nf2(sp2);
  // An exact payoff tie on the path: strict conditioning keeps both
  // first-mover strategies, admissibility breaks the tie.
  CHECK(labels(sp2, eliminate(nf2, Concept::ICSD).fixed_point(), 0, 0) ==
        L{"d", "r"});
  CHECK(labels(sp2, eliminate(nf2, Concept::ICWD).fixed_point(), 0, 0) ==
        L{"d"});
  CHECK(labels(sp2, eliminate(nf2, Concept::IA).fixed_point(), 0, 0) ==
        L{"d"});
}

TEST_CASE("three-tree chain: pinned fixed point across all scopes") {
  GameForest f = fixture("chain3.game");
  StrategySpace sp(f);
  NormalForm nf(sp);
  for (Concept mode : {Concept::ICSD, Concept::ICWD, Concept::IA}) {
    EliminationTrace tr = eliminate(nf, mode);
    const ExtendedRestriction& y = tr.fixed_point();
    CHECK(labels(sp, y, 0, 0) == L{"aa"});
    CHECK(labels(sp, y, 0, 1) == L{"aa"});
    CHECK(labels(sp, y, 1, 0) == L{"aa"});
    CHECK(labels(sp, y, 1, 1) == L{"a"});
    CHECK(labels(sp, y, 2, 0) == L{"a"});
    CHECK(labels(sp, y, 2, 1) == L{"a"});
    replay_removals(nf, tr);
    check_nesting(tr);
  }
}

TEST_CASE("games without dominance are fixed points immediately") {
  GameForest f = fixture("matching_pennies.game");
  StrategySpace sp(f);
  NormalForm nf(sp);
  for (Concept mode : {Concept::ICSD, Concept::ICWD, Concept::IA}) {
    EliminationTrace tr = eliminate(nf, mode);
    CHECK(tr.removals.empty());
    CHECK(tr.fixed_point() == nf.full());
  }
}

TEST_CASE("operators only consult trees of the scope's partial game") {
  GameForest f = fixture("g2.game");
  StrategySpace sp(f);
  NormalForm nf(sp);
  EngineOptions opts;
  std::set<std::pair<TreeId, TreeId>> seen;
  opts.observe = [&](TreeId scope, TreeId accessed) {
    seen.insert({scope, accessed});
  };
  eliminate(nf, Concept::IA, opts);
  TreeId t = *f.tree_index("T");
  TreeId tp = *f.tree_index("Tp");
  CHECK(seen.count({t, t}));
  CHECK(seen.count({t, tp}));   // the base scope consults the coarse view
  CHECK(seen.count({tp, tp}));
  CHECK(!seen.count({tp, t}));  // never the other way around
}

TEST_CASE("mutated engines are weaker") {
  GameForest f = fixture("g2.game");
  StrategySpace sp(f);
  NormalForm nf(sp);
  TreeId t = *f.tree_index("T");
  PlayerId c = *f.player_index("C");

  // Without cross-tree propagation, C's base-scope strategies are only
  // filtered through the aware information set, keeping too much.
  EngineOptions no_cross;
  no_cross.cross_tree = false;
  EliminationTrace tr = eliminate(nf, Concept::IA, no_cross);
  CHECK(labels(sp, tr.fixed_point(), t, c) != L{"MB"});

  // Without the scope's own tree, the aware information set disappears.
  EngineOptions no_self;
  no_self.reflexive = false;
  EliminationTrace tr2 = eliminate(nf, Concept::IA, no_self);
  CHECK(tr2.fixed_point() != eliminate(nf, Concept::IA).fixed_point());
}
