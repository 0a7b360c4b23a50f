#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "unaware/crosscheck.hpp"
#include "unaware/elimination.hpp"
#include "unaware/generator.hpp"
#include "unaware/normal_form.hpp"
#include "unaware/rationalizability.hpp"

namespace {

using nlohmann::json;
using namespace unaware;

constexpr int kOk = 0;
constexpr int kDomainError = 1;
constexpr int kUsageError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string infoset_name(const GameForest& f, int h) {
  const InfoSet& x = f.infosets[h];
  std::string name = f.trees[x.tree].name + ":";
  for (std::size_t k = 0; k < x.members.size(); ++k) {
    if (k) name += "+";
    name += f.trees[x.tree].nodes[x.members[k]].name;
  }
  return name;
}

std::string opp_label(const StrategySpace& sp, TreeId t, PlayerId p, long o) {
  std::string out;
  for (PlayerId j = 0; j < sp.num_players(); ++j) {
    if (j == p) continue;
    if (!out.empty()) out += "/";
    out += sp.label(t, j, sp.opp_sid(t, p, o, j));
  }
  return out;
}

std::string mixture_text(const StrategySpace& sp, TreeId t, PlayerId p,
                         const DominanceWitness& w) {
  std::string out;
  for (std::size_t k = 0; k < w.mixture.size(); ++k) {
    if (k) out += " + ";
    out += format_rational(w.mixture[k].second) + "*" +
           sp.label(t, p, w.mixture[k].first);
  }
  return out;
}

// ---------------------------------------------------------------- validate

int run_validate(const std::string& path, const std::string& format) {
  GameForest f;
  try {
    f = parse_game(slurp(path));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  ValidationReport rep = validate_forest(f);
  if (format == "json") {
    json out;
    out["schema"] = 1;
    out["valid"] = rep.valid();
    out["issues"] = json::array();
    for (const ValidationIssue& v : rep.issues)
      out["issues"].push_back({{"code", v.code},
                               {"message", v.message},
                               {"informational", v.informational}});
    std::cout << out.dump(2) << "\n";
  } else {
    for (const ValidationIssue& v : rep.issues)
      std::cout << (v.informational ? "note" : "violation") << " [" << v.code
                << "] " << v.message << "\n";
    std::cout << (rep.valid() ? "valid" : "invalid") << "\n";
  }
  return rep.valid() ? kOk : kDomainError;
}

// --------------------------------------------------------------- export-nf

int run_export(const std::string& path, const std::string& format) {
  GameForest f;
  try {
    f = parse_game(slurp(path));
    ValidationReport rep = validate_forest(f);
    if (!rep.valid()) {
      for (const ValidationIssue& v : rep.issues)
        if (!v.informational)
          std::cerr << "violation [" << v.code << "] " << v.message << "\n";
      return kDomainError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  StrategySpace sp(f);
  NormalForm nf(sp);
  if (format == "json") {
    json out;
    out["schema"] = 1;
    for (TreeId t = 0; t < sp.num_trees(); ++t)
      for (PlayerId p = 0; p < sp.num_players(); ++p)
        out["tables"][f.trees[t].name][f.players[p]] = nf.export_csv(t, p);
    for (PlayerId p = 0; p < sp.num_players(); ++p)
      out["infosets"][f.players[p]] = nf.describe_family(p);
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  for (TreeId t = 0; t < sp.num_trees(); ++t) {
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      std::cout << "# tree " << f.trees[t].name << ", player " << f.players[p]
                << "\n"
                << nf.export_csv(t, p);
    }
  }
  for (PlayerId p = 0; p < sp.num_players(); ++p)
    std::cout << "# normal-form information sets of " << f.players[p] << "\n"
              << nf.describe_family(p);
  return kOk;
}

// -------------------------------------------------------------------- solve

json level_json_elimination(const GameForest& f, const StrategySpace& sp,
                            const ExtendedRestriction& y) {
  json out;
  for (TreeId t = 0; t < sp.num_trees(); ++t)
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      json list = json::array();
      for (int sid = 0; sid < sp.num_strategies(t, p); ++sid)
        if (y.y[t][p][sid]) list.push_back(sp.label(t, p, sid));
      out[f.trees[t].name][f.players[p]] = std::move(list);
    }
  return out;
}

void print_level_elimination(const GameForest& f, const StrategySpace& sp,
                             const ExtendedRestriction& y) {
  for (TreeId t = 0; t < sp.num_trees(); ++t)
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      std::cout << "  " << f.trees[t].name << "/" << f.players[p] << ": {";
      bool first = true;
      for (int sid = 0; sid < sp.num_strategies(t, p); ++sid) {
        if (!y.y[t][p][sid]) continue;
        if (!first) std::cout << ", ";
        std::cout << sp.label(t, p, sid);
        first = false;
      }
      std::cout << "}\n";
    }
}

int solve_elimination(const GameForest& f, Concept concept_name, bool trace,
                      const std::string& format, const std::string& name) {
  StrategySpace sp(f);
  NormalForm nf(sp);
  EliminationTrace tr = eliminate(nf, concept_name);

  if (format == "json") {
    json out;
    out["schema"] = 1;
    out["concept"] = name;
    out["levels"] = json::array();
    for (const ExtendedRestriction& y : tr.levels)
      out["levels"].push_back(level_json_elimination(f, sp, y));
    if (trace) {
      out["removals"] = json::array();
      for (const auto& step : tr.removals) {
        json level = json::array();
        for (const Removal& r : step) {
          json jr;
          jr["tree"] = f.trees[r.tree].name;
          jr["player"] = f.players[r.player];
          jr["strategy"] = sp.label(r.tree, r.player, r.sid);
          jr["via_tree"] = f.trees[r.via_tree].name;
          jr["via_strategy"] = sp.label(r.via_tree, r.player, r.via_sid);
          if (r.via_infoset >= 0) {
            const NFInfoSet& x = nf.nf_family(r.player)[r.via_infoset];
            jr["conditioning"] = infoset_name(f, x.sources.front());
          } else {
            jr["conditioning"] = "normal form";
          }
          json mix = json::array();
          for (const auto& [sid, wt] : r.witness.mixture)
            mix.push_back({sp.label(r.via_tree, r.player, sid),
                           format_rational(wt)});
          jr["mixture"] = std::move(mix);
          level.push_back(std::move(jr));
        }
        out["removals"].push_back(std::move(level));
      }
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }

  std::cout << "concept: " << name << "\n";
  for (std::size_t k = 0; k < tr.levels.size(); ++k) {
    std::cout << "level " << k << ":\n";
    print_level_elimination(f, sp, tr.levels[k]);
    if (trace && k < tr.removals.size()) {
      for (const Removal& r : tr.removals[k]) {
        std::cout << "  - removed " << f.trees[r.tree].name << "/"
                  << f.players[r.player] << " "
                  << sp.label(r.tree, r.player, r.sid) << ": "
                  << sp.label(r.via_tree, r.player, r.via_sid)
                  << " dominated in " << f.trees[r.via_tree].name << " (";
        if (r.via_infoset >= 0) {
          const NFInfoSet& x = nf.nf_family(r.player)[r.via_infoset];
          std::cout << "at " << infoset_name(f, x.sources.front());
        } else {
          std::cout << "whole normal form";
        }
        std::cout << ") by " << mixture_text(sp, r.via_tree, r.player, r.witness)
                  << "\n";
      }
    }
  }
  std::cout << "fixed point after " << tr.removals.size() << " round"
            << (tr.removals.size() == 1 ? "" : "s") << "\n";
  return kOk;
}

int solve_oracle(const GameForest& f, OracleConcept concept_name, bool witness,
                 const std::string& format, const std::string& name) {
  StrategySpace sp(f);
  LevelTrace tr;
  switch (concept_name) {
    case OracleConcept::EFR:
      tr = efr_levels(sp);
      break;
    case OracleConcept::PR:
      tr = pr_levels(sp);
      break;
    case OracleConcept::PRR:
      tr = prr_levels(sp);
      break;
  }
  TreeId t0 = tr.scope;

  if (format == "json") {
    json out;
    out["schema"] = 1;
    out["concept"] = name;
    out["levels"] = json::array();
    for (const auto& level : tr.levels) {
      json jl;
      for (PlayerId p = 0; p < sp.num_players(); ++p) {
        json list = json::array();
        for (int sid = 0; sid < sp.num_strategies(t0, p); ++sid)
          if (level[p][sid]) list.push_back(sp.label(t0, p, sid));
        jl[f.players[p]] = std::move(list);
      }
      out["levels"].push_back(std::move(jl));
    }
    if (witness) {
      out["witnesses"] = json::array();
      for (const BeliefEntry& e :
           fixed_point_witnesses(sp, concept_name, tr)) {
        TreeId t = f.infosets[e.infoset].tree;
        json jw;
        jw["player"] = f.players[e.player];
        jw["strategy"] = sp.label(t0, e.player, e.sid);
        jw["infoset"] = infoset_name(f, e.infoset);
        json b = json::array();
        for (const auto& [o, prob] : e.belief)
          b.push_back({opp_label(sp, t, e.player, o), format_rational(prob)});
        jw["belief"] = std::move(b);
        out["witnesses"].push_back(std::move(jw));
      }
    }
    std::cout << out.dump(2) << "\n";
    return kOk;
  }

  std::cout << "concept: " << name << "\n";
  for (std::size_t k = 0; k < tr.levels.size(); ++k) {
    std::cout << "level " << k << ":\n";
    for (PlayerId p = 0; p < sp.num_players(); ++p) {
      std::cout << "  " << f.players[p] << ": {";
      bool first = true;
      for (int sid = 0; sid < sp.num_strategies(t0, p); ++sid) {
        if (!tr.levels[k][p][sid]) continue;
        if (!first) std::cout << ", ";
        std::cout << sp.label(t0, p, sid);
        first = false;
      }
      std::cout << "}\n";
    }
  }
  std::cout << "fixed point after " << tr.levels.size() - 1 << " level"
            << (tr.levels.size() == 2 ? "" : "s") << "\n";
  if (witness) {
    std::cout << "witnesses:\n";
    for (const BeliefEntry& e : fixed_point_witnesses(sp, concept_name, tr)) {
      TreeId t = f.infosets[e.infoset].tree;
      std::cout << "  " << f.players[e.player] << " "
                << sp.label(t0, e.player, e.sid) << " @ "
                << infoset_name(f, e.infoset) << ":";
      for (const auto& [o, prob] : e.belief)
        std::cout << " " << format_rational(prob) << "*"
                  << opp_label(sp, t, e.player, o);
      std::cout << "\n";
    }
  }
  return kOk;
}

int run_solve(const std::string& path, const std::string& concept_name, bool trace,
              bool witness, const std::string& format) {
  GameForest f;
  try {
    f = parse_game(slurp(path));
    ValidationReport rep = validate_forest(f);
    if (!rep.valid()) {
      for (const ValidationIssue& v : rep.issues)
        if (!v.informational)
          std::cerr << "violation [" << v.code << "] " << v.message << "\n";
      return kDomainError;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  if (concept_name == "icsd") return solve_elimination(f, Concept::ICSD, trace, format, concept_name);
  if (concept_name == "icwd") return solve_elimination(f, Concept::ICWD, trace, format, concept_name);
  if (concept_name == "ia") return solve_elimination(f, Concept::IA, trace, format, concept_name);
  if (concept_name == "efr") return solve_oracle(f, OracleConcept::EFR, witness, format, concept_name);
  if (concept_name == "pr") return solve_oracle(f, OracleConcept::PR, witness, format, concept_name);
  if (concept_name == "prr") return solve_oracle(f, OracleConcept::PRR, witness, format, concept_name);
  std::cerr << "error: unknown concept \"" << concept_name << "\"\n";
  return kUsageError;
}

// --------------------------------------------------------------------- fuzz

int run_fuzz(int games, std::uint64_t seed, const std::string& config_path) {
  GeneratorConfig cfg;
  if (!config_path.empty()) {
    json jc;
    try {
      jc = json::parse(slurp(config_path));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kDomainError;
    }
    if (jc.contains("players")) cfg.players = jc["players"].get<int>();
    if (jc.contains("trees")) cfg.trees = jc["trees"].get<int>();
    if (jc.contains("max_depth")) cfg.max_depth = jc["max_depth"].get<int>();
    if (jc.contains("max_actions"))
      cfg.max_actions = jc["max_actions"].get<int>();
    if (jc.contains("payoff_min")) cfg.payoff_min = jc["payoff_min"].get<int>();
    if (jc.contains("payoff_max")) cfg.payoff_max = jc["payoff_max"].get<int>();
    if (jc.contains("density")) cfg.density = jc["density"].get<double>();
    if (jc.contains("retries")) cfg.retries = jc["retries"].get<int>();
  }

  json report;
  report["schema"] = 1;
  report["games"] = games;
  report["seed"] = seed;
  report["failures"] = json::array();
  int failures = 0;
  for (int g = 0; g < games; ++g) {
    cfg.seed = seed + static_cast<std::uint64_t>(g);
    GeneratedGame game;
    try {
      game = generate(cfg);
    } catch (const std::exception& e) {
      json jf;
      jf["seed"] = cfg.seed;
      jf["identity"] = "generation";
      jf["detail"] = e.what();
      report["failures"].push_back(std::move(jf));
      ++failures;
      continue;
    }
    CrossCheckReport cc = cross_check(game.forest);
    for (const IdentityResult& r : cc.identities) {
      if (r.pass) continue;
      json jf;
      jf["seed"] = cfg.seed;
      jf["identity"] = r.name;
      jf["detail"] = r.detail;
      report["failures"].push_back(std::move(jf));
    }
    if (!cc.pass()) ++failures;
  }
  report["pass"] = failures == 0;
  std::cout << report.dump(2) << "\n";
  std::cerr << games << " games, " << failures << " with failures\n";
  return failures == 0 ? kOk : kDomainError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solver for dynamic games with unawareness"};
  app.require_subcommand(1);

  std::string game_path, format = "text", concept_name = "icsd", config_path;
  bool trace = false, witness = false;
  int games = 100;
  std::uint64_t seed = 0;

  CLI::App* validate = app.add_subcommand("validate", "check a game document");
  validate->add_option("game", game_path, "game file")->required();
  validate->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* exportnf =
      app.add_subcommand("export-nf", "print the per-tree normal forms");
  exportnf->add_option("game", game_path, "game file")->required();
  exportnf->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* solve = app.add_subcommand("solve", "run a solution concept");
  solve->add_option("game", game_path, "game file")->required();
  solve->add_option("--concept", concept_name)
      ->check(CLI::IsMember({"icsd", "icwd", "ia", "efr", "pr", "prr"}));
  solve->add_flag("--trace", trace, "include removal reasons");
  solve->add_flag("--witness", witness, "include justifying beliefs");
  solve->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  CLI::App* fuzz =
      app.add_subcommand("fuzz", "generate random games and cross-check");
  fuzz->add_option("--games", games, "number of games");
  fuzz->add_option("--seed", seed, "base seed");
  fuzz->add_option("--config", config_path, "generator configuration (JSON)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (validate->parsed()) return run_validate(game_path, format);
    if (exportnf->parsed()) return run_export(game_path, format);
    if (solve->parsed())
      return run_solve(game_path, concept_name, trace, witness, format);
    if (fuzz->parsed()) return run_fuzz(games, seed, config_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kUsageError;
}
