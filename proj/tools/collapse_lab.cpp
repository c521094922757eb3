// collapse-lab: command line front end over the collapse_core library.
//
// Exit codes: 0 success, 1 domain failure (cyclic input, exhausted
// budget, engine disagreement), 2 usage error (bad syntax, bad flags,
// unreadable files). With --json every output, including errors, is a
// single JSON document on stdout; identical invocations print identical
// bytes.

#include <algorithm>
#include <array>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "collapse/bisim.hpp"
#include "collapse/constructible.hpp"
#include "collapse/formula.hpp"
#include "collapse/game.hpp"
#include "collapse/hf.hpp"
#include "collapse/prs.hpp"
#include "collapse/relation.hpp"
#include "collapse/tr.hpp"
#include "collapse/tree.hpp"
#include "collapse/truth_trees.hpp"
#include "collapse/veblen.hpp"

using json = nlohmann::json;
using namespace collapse;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

json set_json(const HFSet& x) { return json::parse(hf_to_json(x)); }

// --lambda accepts a decimal k for the finite ordinal order, the token
// reversed-naturals, or a path to an order JSON file.
QuasiOrder lambda_from_spec(const std::string& spec) {
  if (!spec.empty() &&
      std::all_of(spec.begin(), spec.end(),
                  [](unsigned char c) { return std::isdigit(c); }))
    return finite_ordinal_order(std::stoul(spec));
  if (spec == "reversed-naturals") return reversed_naturals();
  return order_from_json(slurp(spec));
}

std::vector<HFSet> parse_sets(const std::vector<std::string>& exprs) {
  std::vector<HFSet> out;
  out.reserve(exprs.size());
  for (const auto& e : exprs) out.push_back(parse_hf(e));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  bool json_mode = false;
  std::size_t max_nodes = 0;
  unsigned long seed = 0;
  int code = 0;

  auto emit = [&](const json& j, const std::string& text) {
    if (json_mode)
      std::cout << j.dump() << "\n";
    else
      std::cout << text;
  };
  auto apply_limits = [&] {
    if (max_nodes) set_hf_node_limit(max_nodes);
  };

  CLI::App app{"finite collapse laboratory"};
  app.require_subcommand(1);
  app.add_flag("--json", json_mode, "emit JSON on stdout");
  app.add_option("--max-nodes", max_nodes, "cap on distinct set nodes");
  app.add_option("--seed", seed, "seed for sampling subcommands");
  auto sub = [&](CLI::App* parent, const std::string& name,
                 const std::string& desc) {
    auto* s = parent->add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };

  // hf eval <expr>
  auto* hf_cmd = sub(&app, "hf", "hereditarily finite sets");
  hf_cmd->require_subcommand(1);
  auto* hf_eval = sub(hf_cmd, "eval", "canonicalize a set expression");
  std::string hf_expr;
  hf_eval->add_option("expr", hf_expr, "set expression, #n for numerals")
      ->required();
  hf_eval->callback([&] {
    apply_limits();
    HFSet x = parse_hf(hf_expr);
    emit(set_json(x), format_hf(x) + "\n");
  });

  // collapse <file>
  auto* col_cmd = sub(&app, "collapse", "collapse a labelled relation");
  std::string col_file;
  col_cmd->add_option("file", col_file, "relation JSON file")->required();
  col_cmd->callback([&] {
    apply_limits();
    CarrierRelation rel = relation_from_json(slurp(col_file));
    auto col = collapse_relation(rel);
    json rows = json::array();
    std::string text;
    for (const auto& [label, value] : col) {
      rows.push_back({{"label", label}, {"value", set_json(value)}});
      text += label + " -> " + format_hf(value) + "\n";
    }
    emit(json{{"collapse", rows}}, text);
  });

  // bisim <treefile> [--check <relationfile>]
  auto* bisim_cmd = sub(&app, "bisim", "bisimulations on finite trees");
  std::string bisim_file, bisim_check;
  bisim_cmd->add_option("treefile", bisim_file, "tree JSON file")->required();
  bisim_cmd->add_option("--check", bisim_check,
                        "verify a relation instead of computing the maximum");
  bisim_cmd->callback([&] {
    apply_limits();
    FiniteTree t = tree_from_json(slurp(bisim_file));
    if (!bisim_check.empty()) {
      NodeRelation b = relation_from_pairs_json(slurp(bisim_check), t);
      bool ok = is_bisimulation(t, b);
      emit(json{{"bisimulation", ok}},
           ok ? "bisimulation\n" : "not a bisimulation\n");
      return;
    }
    NodeRelation m = maximal_bisimulation(t);
    std::string text = "pairs: " + std::to_string(m.size()) + "\n";
    for (const auto& [i, j] : m)
      text += std::to_string(i) + " " + std::to_string(j) + "\n";
    emit(json::parse(relation_pairs_to_json(m)), text);
  });

  // eval --model <setexpr> --formula <fexpr> --assign <setexpr>...
  auto* eval_cmd = sub(&app, "eval", "evaluate a formula in a finite model");
  std::string eval_model, eval_formula_text;
  std::vector<std::string> eval_assign;
  eval_cmd->add_option("--model", eval_model, "the model, a set expression")
      ->required();
  eval_cmd->add_option("--formula", eval_formula_text, "formula s-expression")
      ->required();
  eval_cmd->add_option("--assign", eval_assign,
                       "values for the free variables, in order");
  eval_cmd->callback([&] {
    apply_limits();
    HFSet a = parse_hf(eval_model);
    FormulaPtr f = parse_formula(eval_formula_text);
    bool v = eval_formula(a, f, parse_sets(eval_assign));
    emit(json{{"value", v}}, v ? "true\n" : "false\n");
  });

  // truth --model --formula --assign... [--dump-trees <dir>]
  auto* truth_cmd = sub(&app, "truth", "truth through one tree collapse");
  std::string truth_model, truth_formula, truth_dump;
  std::vector<std::string> truth_assign;
  truth_cmd->add_option("--model", truth_model, "the model, a set expression")
      ->required();
  truth_cmd->add_option("--formula", truth_formula, "formula s-expression")
      ->required();
  truth_cmd->add_option("--assign", truth_assign,
                        "values for the free variables, in order");
  truth_cmd->add_option("--dump-trees", truth_dump,
                        "directory for the constructed trees");
  truth_cmd->callback([&] {
    apply_limits();
    HFSet a = parse_hf(truth_model);
    FormulaPtr f = to_nnf(parse_formula(truth_formula));
    std::vector<HFSet> sigma = parse_sets(truth_assign);
    bool v = truth_via_collapse(a, f, sigma);
    std::string extra;
    if (!truth_dump.empty()) {
      std::filesystem::create_directories(truth_dump);
      auto at = [&](const char* name) {
        return (std::filesystem::path(truth_dump) / name).string();
      };
      spill(at("top.json"), tree_to_json(top_tree(f)));
      spill(at("bot.json"), tree_to_json(bot_tree(f)));
      spill(at("sat.json"), tree_to_json(sat_tree(a, f, sigma)));
      spill(at("combined.json"), tree_to_json(combined_truth_tree(a, f, sigma)));
      extra = "trees written to " + truth_dump + "\n";
    }
    json out{{"value", v}};
    if (!truth_dump.empty()) out["trees"] = truth_dump;
    emit(out, std::string(v ? "true\n" : "false\n") + extra);
  });

  // tr <instancefile> [--engine direct|trees|both]
  auto* tr_cmd = sub(&app, "tr", "recursion along a well founded order");
  std::string tr_file, tr_engine = "both";
  tr_cmd->add_option("instancefile", tr_file, "instance JSON file")->required();
  tr_cmd->add_option("--engine", tr_engine, "direct, trees or both")
      ->check(CLI::IsMember({"direct", "trees", "both"}));
  tr_cmd->callback([&] {
    apply_limits();
    TRInstance inst = tr_instance_from_json(slurp(tr_file));
    if (!validate_instance(inst)) throw UsageError("instance fails validation");
    auto render = [&](const TRResult& r) {
      std::pair<json, std::string> out{json::array(), ""};
      for (const auto& [x, stage] : r.pairs) {
        out.first.push_back(json::array({set_json(x), set_json(stage)}));
        out.second += format_hf(x) + " at " + format_hf(stage) + "\n";
      }
      return out;
    };
    if (tr_engine != "both") {
      TRResult r = tr_engine == "direct" ? tr_direct(inst) : tr_trees(inst);
      auto [ja, text] = render(r);
      emit(json{{"engine", tr_engine}, {"pairs", ja}}, text);
      return;
    }
    TRResult rd = tr_direct(inst);
    TRResult rt = tr_trees(inst);
    if (rd.pairs == rt.pairs) {
      auto [ja, text] = render(rd);
      emit(json{{"agree", true}, {"pairs", ja}}, "ENGINES AGREE\n" + text);
      return;
    }
    auto [jd, td] = render(rd);
    auto [jt, tt] = render(rt);
    emit(json{{"agree", false}, {"direct", jd}, {"trees", jt}},
         "ENGINES DISAGREE\ndirect:\n" + td + "trees:\n" + tt);
    code = 1;
  });

  // game solve <treefile> / game bisim <treefile> --pair i j
  auto* game_cmd = sub(&app, "game", "clopen games on finite trees");
  game_cmd->require_subcommand(1);
  auto render_solution = [&](const GameTree& g, const SolveResult& r,
                             std::string head) {
    json moves = json::array();
    std::string text =
        std::move(head) + "winner: " + player_name(r.winner) + "\n";
    for (const auto& [pos, child] : r.strategy.moves) {
      moves.push_back(json::array({pos, child}));
      text += "  " + std::to_string(pos) + " -> " + std::to_string(child) +
              " (" + g.tree.node(child).back() + ")\n";
    }
    emit(json{{"winner", player_name(r.winner)}, {"strategy", moves}}, text);
  };
  auto* game_solve = sub(game_cmd, "solve", "backward induction on a tree");
  std::string game_file;
  game_solve->add_option("treefile", game_file, "tree JSON file")->required();
  game_solve->callback([&] {
    apply_limits();
    GameTree g{tree_from_json(slurp(game_file))};
    render_solution(g, solve(g), "");
  });
  auto* game_bisim = sub(game_cmd, "bisim", "pairwise bisimulation game");
  std::string game_bisim_file;
  std::vector<std::size_t> game_pair;
  game_bisim->add_option("treefile", game_bisim_file, "tree JSON file")
      ->required();
  game_bisim->add_option("--pair", game_pair, "the two node indexes")
      ->required()
      ->expected(2);
  game_bisim->callback([&] {
    apply_limits();
    FiniteTree t = tree_from_json(slurp(game_bisim_file));
    if (game_pair[0] >= t.size() || game_pair[1] >= t.size())
      throw UsageError("node index out of range");
    GameTree g = bisimulation_game(t, {game_pair[0], game_pair[1]});
    render_solution(g, solve(g),
                    "positions: " + std::to_string(g.tree.size()) + "\n");
  });

  // veblen cmp|nf0|value|descend
  auto* veb_cmd = sub(&app, "veblen", "ordinal notation systems");
  veb_cmd->require_subcommand(1);
  std::size_t veb_alpha = 0;
  std::string veb_lambda;
  auto add_system = [&](CLI::App* s, bool with_alpha) {
    if (with_alpha)
      s->add_option("--alpha", veb_alpha, "number of proper phi levels");
    s->add_option("--lambda", veb_lambda,
                  "k, reversed-naturals, or an order JSON file")
        ->required();
  };
  auto* veb_cmp = sub(veb_cmd, "cmp", "compare two terms");
  std::string veb_t, veb_s;
  veb_cmp->add_option("t", veb_t, "first term")->required();
  veb_cmp->add_option("s", veb_s, "second term")->required();
  add_system(veb_cmp, true);
  veb_cmp->callback([&] {
    VSystem sys{veb_alpha, lambda_from_spec(veb_lambda)};
    VTermPtr t = parse_vterm(veb_t);
    VTermPtr s = parse_vterm(veb_s);
    validate_vterm(sys, t);
    validate_vterm(sys, s);
    bool le = vleq(sys, t, s), ge = vleq(sys, s, t);
    const char* rel = le && ge  ? "equivalent"
                      : le      ? "below"
                      : ge      ? "above"
                                : "incomparable";
    emit(json{{"cmp", rel}}, std::string(rel) + "\n");
  });
  auto* veb_nf0 = sub(veb_cmd, "nf0", "level zero normal form");
  std::string veb_nf_term;
  veb_nf0->add_option("t", veb_nf_term, "term over the level zero system")
      ->required();
  add_system(veb_nf0, false);
  veb_nf0->callback([&] {
    VSystem sys{0, lambda_from_spec(veb_lambda)};
    VTermPtr t = parse_vterm(veb_nf_term);
    validate_vterm(sys, t);
    std::vector<std::string> parts = normal_form0(sys, t);
    VTermPtr canon;
    if (parts.empty()) {
      canon = vzero();
    } else if (parts.size() == 1) {
      canon = vtop(parts[0]);
    } else {
      std::vector<VTermPtr> ps;
      for (const auto& p : parts) ps.push_back(vtop(p));
      canon = vsum(std::move(ps));
    }
    emit(json{{"elements", parts}, {"term", format_vterm(canon)}},
         format_vterm(canon) + "\n");
  });
  auto* veb_value = sub(veb_cmd, "value", "ordinal value of a term");
  std::string veb_value_term;
  veb_value->add_option("t", veb_value_term, "term")->required();
  add_system(veb_value, true);
  veb_value->callback([&] {
    VSystem sys{veb_alpha, lambda_from_spec(veb_lambda)};
    VTermPtr t = parse_vterm(veb_value_term);
    validate_vterm(sys, t);
    std::string v = vnf_to_string(vterm_value(sys, t));
    emit(json{{"value", v}}, v + "\n");
  });
  auto* veb_desc = sub(veb_cmd, "descend", "transfer descent to Lambda");
  std::string veb_input;
  std::size_t veb_lookahead = 0;
  veb_desc->add_option("--input", veb_input, "stream file, one term per line")
      ->required();
  veb_desc->add_option("--lookahead", veb_lookahead, "window length")
      ->required();
  add_system(veb_desc, false);
  veb_desc->callback([&] {
    VSystem sys{0, lambda_from_spec(veb_lambda)};
    std::vector<VTermPtr> stream;
    std::istringstream in(slurp(veb_input));
    for (std::string line; std::getline(in, line);) {
      while (!line.empty() && std::isspace((unsigned char)line.back()))
        line.pop_back();
      if (line.empty()) continue;
      VTermPtr t = parse_vterm(line);
      validate_vterm(sys, t);
      stream.push_back(t);
    }
    DescentResult r = descending_transfer(sys, stream, veb_lookahead);
    std::string text;
    if (!r.resolved) {
      text = "unresolved\n";
    } else {
      text = r.via_diagonal ? "descent (diagonal):\n" : "descent:\n";
      for (const auto& e : r.descent) text += "  " + e + "\n";
    }
    emit(json{{"resolved", r.resolved},
              {"via_diagonal", r.via_diagonal},
              {"descent", r.descent}},
         text);
  });

  // prs eval <program-file> --args ... --bind name=value ...
  auto* prs_cmd = sub(&app, "prs", "primitive recursive set functions");
  prs_cmd->require_subcommand(1);
  auto* prs_eval = sub(prs_cmd, "eval", "run a program on set arguments");
  std::string prs_file;
  std::vector<std::string> prs_args, prs_binds;
  prs_eval->add_option("program-file", prs_file, "program s-expression file")
      ->required();
  prs_eval->add_option("--args", prs_args, "argument set expressions");
  prs_eval->add_option("--bind", prs_binds, "constant bindings, name=value");
  prs_eval->callback([&] {
    apply_limits();
    PrimTermPtr prog = parse_prim(slurp(prs_file));
    std::map<std::string, HFSet> binds;
    for (const auto& b : prs_binds) {
      auto eq = b.find('=');
      if (eq == std::string::npos)
        throw UsageError("--bind expects name=value, got " + b);
      binds[b.substr(0, eq)] = parse_hf(b.substr(eq + 1));
    }
    HFSet v = eval_prim(prog, parse_sets(prs_args), binds);
    emit(set_json(v), format_hf(v) + "\n");
  });

  // lconstr --base <setexpr> --levels n [--audit-def]
  auto* lc_cmd = sub(&app, "lconstr", "definable power levels");
  std::string lc_base;
  std::size_t lc_levels = 0;
  bool lc_audit = false;
  lc_cmd->add_option("--base", lc_base, "starting set expression")->required();
  lc_cmd->add_option("--levels", lc_levels, "number of steps")->required();
  lc_cmd->add_flag("--audit-def", lc_audit,
                   "recompute small levels by formula enumeration");
  lc_cmd->callback([&] {
    apply_limits();
    LevelSequence seq = l_level(parse_hf(lc_base), lc_levels);
    json jl = json::array();
    std::string text;
    for (std::size_t k = 0; k < seq.levels.size(); ++k) {
      const HFSet& level = seq.levels[k];
      text += "level " + std::to_string(k) + ": card " +
              std::to_string(level.card());
      if (level.card() <= 32) text += "  " + format_hf(level);
      text += "\n";
      json row{{"card", level.card()}};
      if (level.card() <= 64) row["value"] = set_json(level);
      jl.push_back(row);
    }
    json out{{"levels", jl}};
    if (lc_audit) {
      json ja = json::array();
      for (std::size_t k = 0; k + 1 < seq.levels.size(); ++k) {
        if (seq.levels[k].card() > 3) {
          text += "audit " + std::to_string(k) + ": skipped, carrier too large\n";
          ja.push_back({{"level", k}, {"status", "skipped"}});
          continue;
        }
        bool match = def_set_enumerated(seq.levels[k], 9) == seq.levels[k + 1];
        text += "audit " + std::to_string(k) + ": " +
                (match ? "definable enumeration saturates" : "MISMATCH") + "\n";
        ja.push_back({{"level", k}, {"status", match ? "saturated" : "mismatch"}});
        if (!match) code = 1;
      }
      out["audit"] = ja;
    }
    emit(out, text);
  });

  // demo addition --k K / demo ackermann --bits B
  auto* demo_cmd = sub(&app, "demo", "worked collapses");
  demo_cmd->require_subcommand(1);
  auto* demo_add = sub(demo_cmd, "addition", "addition as a truncated collapse");
  std::size_t demo_k = 4;
  demo_add->add_option("--k", demo_k, "table bound")->check(CLI::Range(0, 8));
  demo_add->callback([&] {
    apply_limits();
    HFSet graph = addition_graph_via_collapse(demo_k);
    std::vector<std::array<std::size_t, 3>> triples;
    for (const auto& p : graph.elems()) {
      auto outer = kuratowski_decode(p);
      auto inner = kuratowski_decode(outer->first);
      triples.push_back({*as_von_neumann(inner->first),
                         *as_von_neumann(inner->second),
                         *as_von_neumann(outer->second)});
    }
    std::sort(triples.begin(), triples.end());
    json rows = json::array();
    std::string text;
    for (const auto& [n, m, s] : triples) {
      rows.push_back(json::array({n, m, s}));
      text += std::to_string(n) + " + " + std::to_string(m) + " = " +
              std::to_string(s) + "\n";
    }
    text += "pairs: " + std::to_string(triples.size()) + "\n";
    emit(json{{"k", demo_k}, {"pairs", rows}, {"graph", set_json(graph)}},
         text);
  });
  auto* demo_ack = sub(demo_cmd, "ackermann", "bit membership collapse");
  std::size_t demo_bits = 4;
  demo_ack->add_option("--bits", demo_bits, "code width")
      ->check(CLI::Range(0, 6));
  demo_ack->callback([&] {
    apply_limits();
    HFSet image = ackermann_collapse_image(demo_bits);
    std::optional<std::size_t> level;
    for (std::size_t k = 0; k <= 8 && !level; ++k)
      if (image == v_level(k, 8)) level = k;
    std::string text = format_hf(image) + "\ncard: " +
                       std::to_string(image.card()) + "\n";
    if (level)
      text += "matches cumulative level " + std::to_string(*level) + "\n";
    json out{{"bits", demo_bits},
             {"card", image.card()},
             {"image", set_json(image)},
             {"level", level ? json(*level) : json(nullptr)}};
    emit(out, text);
  });

  auto report = [&](const char* kind, const std::string& msg) {
    if (json_mode)
      std::cout << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump()
                << "\n";
    else
      std::cerr << "error: " << msg << "\n";
  };
  try {
    app.parse(argc, argv);
    return code;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    if (json_mode)
      report("usage", e.what());
    else
      app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    report("usage", e.what());
    return 2;
  } catch (const DomainError& e) {
    report("domain", e.what());
    return 1;
  } catch (const std::exception& e) {
    report("internal", e.what());
    return 1;
  }
}
