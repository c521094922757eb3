// Acceptance sweep: ten end to end checks, one line per check, exit
// status counting the failures. Each check pits the library against an
// independently coded oracle; every comparison is exact set or relation
// equality. Checks with a wall clock budget fail when they overrun it.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

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
#include "gen.hpp"

using namespace collapse;
using Seq = FiniteTree::Seq;

namespace {

struct Check {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

int max_var_index(const FormulaPtr& f) {
  int m = std::max(f->i, f->j);
  if (f->a) m = std::max(m, max_var_index(f->a));
  if (f->b) m = std::max(m, max_var_index(f->b));
  return m;
}

HFSet random_carrier(std::mt19937& rng, int max_card) {
  std::uniform_int_distribution<int> card(1, max_card);
  int n = card(rng);
  std::vector<HFSet> xs;
  for (int i = 0; i < n; ++i) xs.push_back(gen::hf(rng, 2, 2));
  return make_set(std::move(xs));
}

std::vector<HFSet> random_assignment(std::mt19937& rng, const HFSet& a,
                                     int len) {
  std::vector<HFSet> elems = a.elems();
  std::uniform_int_distribution<std::size_t> pick(0, elems.size() - 1);
  std::vector<HFSet> sigma;
  for (int i = 0; i < len; ++i) sigma.push_back(elems[pick(rng)]);
  return sigma;
}

// Random formula in negation normal form: negations sit on atoms only,
// quantifier nesting is capped, node count stays within the budget.
FormulaPtr rand_nnf(std::mt19937& rng, int budget, int qdepth,
                    std::vector<int> avail, int next) {
  auto pick = [&](const std::vector<int>& xs) {
    return xs[rng() % xs.size()];
  };
  std::vector<int> opts{0};
  if (budget >= 2) opts.push_back(1);
  if (budget >= 3) {
    opts.push_back(2);
    opts.push_back(2);
  }
  if (budget >= 2 && qdepth > 0) {
    opts.push_back(3);
    opts.push_back(4);
  }
  int o = opts[rng() % opts.size()];
  if (o <= 1) {
    FormulaPtr atom = rng() % 2 ? mk_member(pick(avail), pick(avail))
                                : mk_equal(pick(avail), pick(avail));
    return o == 1 ? mk_not(atom) : atom;
  }
  if (o == 2) {
    int left = 1 + static_cast<int>(rng() % static_cast<unsigned>(budget - 2));
    FormulaPtr a = rand_nnf(rng, left, qdepth, avail, next);
    FormulaPtr b = rand_nnf(rng, budget - 1 - left, qdepth, avail, next);
    return rng() % 2 ? mk_and(a, b) : mk_or(a, b);
  }
  int bound = pick(avail);
  std::vector<int> inner = avail;
  inner.push_back(next);
  FormulaPtr body = rand_nnf(rng, budget - 1, qdepth - 1, inner, next + 1);
  if (o == 3) return rng() % 2 ? mk_exists(next, body) : mk_forall(next, body);
  return rng() % 2 ? mk_exists_in(next, bound, body)
                   : mk_forall_in(next, bound, body);
}

Check check_truth_collapse() {
  Check c;
  std::mt19937 rng(9001);
  for (int round = 0; round < 500; ++round) {
    FormulaPtr f = rand_nnf(rng, 2 + static_cast<int>(rng() % 6), 3, {0, 1}, 2);
    if (!is_nnf(f) || formula_size(f) > 7) {
      c.fail("generator left the contracted shape");
      break;
    }
    HFSet a = random_carrier(rng, 5);
    std::vector<HFSet> sigma =
        random_assignment(rng, a, max_free_var(f) + 1);
    if (truth_via_collapse(a, f, sigma) != eval_formula(a, f, sigma)) {
      c.fail("disagreement on " + format_formula(f) + " over " + format_hf(a));
      break;
    }
  }
  if (c.ok) c.note = "500 random cases";
  return c;
}

Check check_value_distinctness() {
  Check c;
  HFSet vt = make_set({HFSet(), singleton(HFSet())});
  HFSet vb = singleton(singleton(HFSet()));
  if (tree_collapse(top_tree(mk_member(0, 1))) != vt ||
      tree_collapse(bot_tree(mk_member(0, 1))) != vb)
    c.fail("atomic values differ from the frozen prints");
  std::vector<FormulaPtr> corpus;
  for (const FormulaPtr& f : enumerate_formulas(5))
    if (is_nnf(f) && max_var_index(f) <= 1) corpus.push_back(f);
  std::vector<HFSet> tops, bots;
  for (const FormulaPtr& f : corpus) {
    tops.push_back(tree_collapse(top_tree(f)));
    bots.push_back(tree_collapse(bot_tree(f)));
  }
  for (std::size_t i = 0; i < corpus.size() && c.ok; ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j)
      if (tops[i] == bots[j]) {
        c.fail("true value of " + format_formula(corpus[i]) +
               " equals false value of " + format_formula(corpus[j]) +
               " (corpus of " + std::to_string(corpus.size()) + ")");
        break;
      }
  if (c.ok)
    c.note = std::to_string(corpus.size() * corpus.size()) + " pairs distinct";
  return c;
}

Check check_bisim_kernel() {
  Check c;
  std::mt19937 rng(777);
  for (int round = 0; round < 200; ++round) {
    std::uniform_int_distribution<std::size_t> ds(1, 200);
    FiniteTree t = gen::tree(rng, ds(rng));
    if (maximal_bisimulation(t) != collapse_kernel(t)) {
      c.fail("mismatch on a tree of " + std::to_string(t.size()) + " nodes");
      break;
    }
  }
  if (c.ok) c.note = "200 trees up to 200 nodes";
  return c;
}

// Recursion formulas keep the accumulator variable 1 inside membership
// atoms, binders and bounds stay clear of it, negation on atoms only.
FormulaPtr gen_psi(std::mt19937& rng, int size, std::vector<int> avail,
                   int next_binder, int& plain_budget) {
  auto pick = [&](const std::vector<int>& xs) {
    std::uniform_int_distribution<std::size_t> d(0, xs.size() - 1);
    return xs[d(rng)];
  };
  std::uniform_int_distribution<int> coin(0, 1);
  if (size <= 1) {
    std::uniform_int_distribution<int> kind(0, 2);
    FormulaPtr atom;
    switch (kind(rng)) {
      case 0:
        atom = mk_member(pick(avail), 1);
        break;
      case 1:
        atom = mk_member(pick(avail), pick(avail));
        break;
      default:
        atom = mk_equal(pick(avail), pick(avail));
        break;
    }
    return coin(rng) ? mk_not(atom) : atom;
  }
  std::uniform_int_distribution<int> kind(0, 2);
  if (kind(rng) == 0 && size >= 3) {
    std::uniform_int_distribution<int> split(1, size - 2);
    int left = split(rng);
    FormulaPtr a = gen_psi(rng, left, avail, next_binder, plain_budget);
    FormulaPtr b =
        gen_psi(rng, size - 1 - left, avail, next_binder, plain_budget);
    return coin(rng) ? mk_and(a, b) : mk_or(a, b);
  }
  std::vector<int> inner = avail;
  inner.push_back(next_binder);
  bool plain = plain_budget > 0 && coin(rng) == 0;
  if (plain) --plain_budget;
  int bound = plain ? -1 : pick(avail);
  FormulaPtr body = gen_psi(rng, size - 1, inner, next_binder + 1, plain_budget);
  if (plain)
    return coin(rng) ? mk_exists(next_binder, body)
                     : mk_forall(next_binder, body);
  return coin(rng) ? mk_exists_in(next_binder, bound, body)
                   : mk_forall_in(next_binder, bound, body);
}

TRInstance gen_instance(std::mt19937& rng) {
  std::uniform_int_distribution<int> dstages(1, 6);
  std::uniform_int_distribution<int> dsize(1, 6);
  std::uniform_int_distribution<int> da(0, 4);
  std::uniform_int_distribution<int> coin(0, 1);
  std::set<std::uint32_t> seen;
  std::vector<HFSet> stages;
  int want = dstages(rng);
  while (static_cast<int>(stages.size()) < want) {
    HFSet s = gen::hf(rng, 3, 2);
    if (seen.insert(s.id()).second) stages.push_back(s);
  }
  std::vector<std::string> labels;
  for (const HFSet& s : stages) labels.push_back(format_hf(s));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (coin(rng)) edges.push_back({labels[i], labels[j]});
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<HFSet> elems;
  int na = da(rng);
  for (int k = 0; k < na; ++k) elems.push_back(gen::hf(rng, 2, 2));
  int plain_budget = 2;
  TRInstance inst;
  inst.domain_a = make_set(std::move(elems));
  inst.order = make_relation(std::move(labels), std::move(edges));
  inst.psi = gen_psi(rng, dsize(rng), {0, 2}, 3, plain_budget);
  inst.params = {gen::hf(rng, 2, 2)};
  return inst;
}

Check check_tr_engines() {
  Check c;
  std::mt19937 rng(20260823);
  for (int round = 0; round < 200; ++round) {
    TRInstance inst = gen_instance(rng);
    if (!validate_instance(inst)) {
      c.fail("generated instance rejected by validation");
      break;
    }
    TRResult rd = tr_direct(inst);
    TRResult rt = tr_trees(inst);
    if (rd.pairs != rt.pairs) {
      c.fail("engines disagree on " + format_formula(inst.psi));
      break;
    }
    if (!tr_recheck(inst, rd)) {
      c.fail("recursion equation fails a stage on " +
             format_formula(inst.psi));
      break;
    }
  }
  if (c.ok) c.note = "200 instances, both engines, rechecked";
  return c;
}

Check check_bisim_via_tr() {
  Check c;
  std::mt19937 rng(5150);
  for (int round = 0; round < 100; ++round) {
    std::uniform_int_distribution<std::size_t> ds(1, 60);
    FiniteTree t = gen::tree(rng, ds(rng));
    if (bisim_via_tr(t) != maximal_bisimulation(t)) {
      c.fail("mismatch on a tree of " + std::to_string(t.size()) + " nodes");
      break;
    }
  }
  if (c.ok) c.note = "100 trees up to 60 nodes";
  return c;
}

// Strategy space of one player: cross product of child choices over that
// player's non-terminal positions. Replays use table lookup only.
std::vector<Strategy> all_strategies(const GameTree& g, std::size_t parity) {
  std::vector<std::size_t> owned;
  for (std::size_t i = 0; i < g.tree.size(); ++i)
    if (!g.tree.terminal(i) && g.tree.node(i).size() % 2 == parity)
      owned.push_back(i);
  std::vector<Strategy> out(1);
  for (std::size_t p : owned) {
    std::vector<Strategy> next;
    for (const Strategy& s : out)
      for (std::size_t child : g.tree.children(p)) {
        Strategy e = s;
        e.moves[p] = child;
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

std::size_t oracle_play(const GameTree& g, const Strategy& sI,
                        const Strategy& sII) {
  std::size_t pos = g.tree.root();
  while (!g.tree.terminal(pos)) {
    const Strategy& s = g.tree.node(pos).size() % 2 == 0 ? sI : sII;
    pos = s.moves.at(pos);
  }
  return pos;
}

// Winner by minimax over all strategy pairs; empty when the game fails
// determinacy, which itself counts as a violation.
std::optional<Player> oracle_winner(const GameTree& g) {
  std::vector<Strategy> si = all_strategies(g, 0);
  std::vector<Strategy> sii = all_strategies(g, 1);
  auto first_wins = [&](std::size_t terminal) {
    return g.tree.node(terminal).size() % 2 == 1;
  };
  bool one_wins = false;
  for (const Strategy& a : si) {
    bool all = true;
    for (const Strategy& b : sii)
      if (!first_wins(oracle_play(g, a, b))) {
        all = false;
        break;
      }
    if (all) {
      one_wins = true;
      break;
    }
  }
  bool two_wins = false;
  for (const Strategy& b : sii) {
    bool all = true;
    for (const Strategy& a : si)
      if (first_wins(oracle_play(g, a, b))) {
        all = false;
        break;
      }
    if (all) {
      two_wins = true;
      break;
    }
  }
  if (one_wins == two_wins) return std::nullopt;
  return one_wins ? Player::I : Player::II;
}

// Every tree shape with at most `max_nodes` nodes over the labels 0, 1:
// a root with an optional subtree hung under each label.
std::vector<FiniteTree> all_small_trees(std::size_t max_nodes) {
  std::vector<std::vector<std::vector<Seq>>> by_size(max_nodes + 1);
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    for (std::size_t left = 0; left + 1 <= n; ++left) {
      std::size_t right = n - 1 - left;
      auto hang = [](const std::vector<Seq>& sub, const char* label,
                     std::vector<Seq>& into) {
        for (const Seq& s : sub) {
          Seq t{label};
          t.insert(t.end(), s.begin(), s.end());
          into.push_back(std::move(t));
        }
      };
      std::vector<std::vector<Seq>> lefts, rights;
      if (left == 0)
        lefts.push_back({});
      else
        lefts = by_size[left];
      if (right == 0)
        rights.push_back({});
      else
        rights = by_size[right];
      for (const auto& ls : lefts)
        for (const auto& rs : rights) {
          std::vector<Seq> nodes{{}};
          hang(ls, "0", nodes);
          hang(rs, "1", nodes);
          by_size[n].push_back(std::move(nodes));
        }
    }
  }
  std::vector<FiniteTree> out;
  for (std::size_t n = 1; n <= max_nodes; ++n)
    for (auto& nodes : by_size[n])
      out.push_back(FiniteTree::from_nodes(std::move(nodes)));
  return out;
}

GameTree small_game(std::mt19937& rng, std::size_t max_size) {
  while (true) {
    std::uniform_int_distribution<std::size_t> ds(1, max_size);
    GameTree g{gen::tree(rng, ds(rng))};
    std::size_t prod = 1;
    for (std::size_t parity = 0; parity < 2; ++parity) {
      std::size_t cnt = 1;
      for (std::size_t i = 0; i < g.tree.size(); ++i)
        if (!g.tree.terminal(i) && g.tree.node(i).size() % 2 == parity)
          cnt *= g.tree.children(i).size();
      prod *= cnt;
    }
    if (prod <= 5000) return g;
  }
}

Check check_games() {
  Check c;
  std::size_t shapes = 0;
  for (const FiniteTree& t : all_small_trees(6)) {
    GameTree g{t};
    auto want = oracle_winner(g);
    if (!want) {
      c.fail("determinacy violated on an exhaustive shape");
      return c;
    }
    if (solve(g).winner != *want) {
      c.fail("solver disagrees with strategy enumeration on a shape of " +
             std::to_string(t.size()) + " nodes");
      return c;
    }
    ++shapes;
  }
  std::mt19937 rng(161803);
  for (int round = 0; round < 150; ++round) {
    GameTree g = small_game(rng, 15);
    auto want = oracle_winner(g);
    if (!want) {
      c.fail("determinacy violated on a random game");
      return c;
    }
    if (solve(g).winner != *want) {
      c.fail("solver disagrees with strategy enumeration on a game of " +
             std::to_string(g.tree.size()) + " nodes");
      return c;
    }
  }
  for (int round = 0; round < 50; ++round) {
    std::uniform_int_distribution<std::size_t> ds(1, 12);
    FiniteTree t = gen::tree(rng, ds(rng), 2);
    auto [winner, strat] = solve(full_bisimulation_game(t));
    if (winner != Player::II) {
      c.fail("first player won a copying game on " +
             std::to_string(t.size()) + " nodes");
      return c;
    }
    NodeRelation b = bisim_from_strategy(t, strat);
    if (!is_bisimulation(t, b)) {
      c.fail("extracted relation is not a bisimulation");
      return c;
    }
    NodeRelation m = maximal_bisimulation(t);
    for (const auto& p : b)
      if (!m.count(p)) {
        c.fail("extracted relation escapes the maximal bisimulation");
        return c;
      }
  }
  c.note = std::to_string(shapes) +
           " exhaustive shapes, 150 random games, 50 copying games";
  return c;
}

VTermPtr random_vterm(std::mt19937& rng, std::size_t alpha, std::size_t k,
                      std::size_t budget);

VTermPtr random_part(std::mt19937& rng, std::size_t alpha, std::size_t k,
                     std::size_t budget) {
  std::vector<int> opts;
  if (k > 0 && budget >= 2) opts.push_back(0);
  if (alpha > 0 && budget >= 3) opts.push_back(1);
  int o = opts[rng() % opts.size()];
  if (o == 0) return vtop(std::to_string(rng() % k));
  return vlow(rng() % alpha, random_vterm(rng, alpha, k, budget - 2));
}

VTermPtr random_vterm(std::mt19937& rng, std::size_t alpha, std::size_t k,
                      std::size_t budget) {
  std::size_t part_min = k > 0 ? 2 : alpha > 0 ? 3 : 0;
  std::vector<int> opts{0};
  if (k > 0 && budget >= 2) opts.push_back(1);
  if (alpha > 0 && budget >= 3) opts.push_back(2);
  if (part_min > 0 && budget >= 2 * part_min) {
    opts.push_back(3);
    opts.push_back(3);
  }
  int o = opts[rng() % opts.size()];
  if (o == 0) return vzero();
  if (o == 1) return vtop(std::to_string(rng() % k));
  if (o == 2)
    return vlow(rng() % alpha, random_vterm(rng, alpha, k, budget - 2));
  std::size_t parts = budget >= 3 * part_min && rng() % 2 == 1 ? 3 : 2;
  std::vector<VTermPtr> ps;
  for (std::size_t i = 0; i < parts; ++i)
    ps.push_back(random_part(rng, alpha, k, budget / parts));
  return vsum(std::move(ps));
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += xs[i];
  }
  return out;
}

Check check_veblen() {
  Check c;
  std::size_t pair_count = 0;
  for (std::size_t k = 0; k <= 4 && c.ok; ++k) {
    for (std::size_t alpha = 0; alpha <= 3 && c.ok; ++alpha) {
      VSystem sys{alpha, finite_ordinal_order(k)};
      auto corpus = enumerate_vterms(sys, 6);
      std::size_t n = corpus.size();
      std::vector<VNFOrdinal> val;
      val.reserve(n);
      for (const auto& t : corpus) val.push_back(vterm_value(sys, t));
      std::vector<std::vector<char>> leq(n, std::vector<char>(n, 0));
      for (std::size_t i = 0; i < n && c.ok; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          bool by_rules = vleq(sys, corpus[i], corpus[j]);
          bool by_value = vnf_compare(val[i], val[j]) <= 0;
          leq[i][j] = by_rules ? 1 : 0;
          ++pair_count;
          if (by_rules != by_value) {
            c.fail("comparison drifts from the value oracle at " +
                   format_vterm(corpus[i]) + " vs " +
                   format_vterm(corpus[j]) + " (k=" + std::to_string(k) +
                   ", levels=" + std::to_string(alpha) + ")");
            break;
          }
        }
      if (!c.ok) break;
      // Item one: the comparison is a quasi linear order.
      std::size_t words = (n + 63) / 64;
      std::vector<std::vector<std::uint64_t>> row(
          n, std::vector<std::uint64_t>(words, 0));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (leq[i][j]) row[i][j / 64] |= std::uint64_t{1} << (j % 64);
      for (std::size_t i = 0; i < n && c.ok; ++i) {
        if (!leq[i][i]) c.fail("reflexivity fails");
        for (std::size_t j = 0; j < n && c.ok; ++j) {
          if (!leq[i][j] && !leq[j][i]) c.fail("totality fails");
          if (leq[i][j])
            for (std::size_t w = 0; w < words; ++w)
              if (row[j][w] & ~row[i][w]) {
                c.fail("transitivity fails");
                break;
              }
        }
      }
      if (!c.ok) break;
      // Item two: sums of two parts strictly below a phi stay below it.
      std::vector<std::size_t> nonsum, targets;
      for (std::size_t i = 0; i < n; ++i) {
        if (corpus[i]->kind != VKind::Sum && corpus[i]->kind != VKind::Zero)
          nonsum.push_back(i);
        if (corpus[i]->kind == VKind::PhiTop ||
            corpus[i]->kind == VKind::PhiLow)
          targets.push_back(i);
      }
      for (std::size_t tg : targets) {
        std::vector<std::size_t> below;
        for (std::size_t w : nonsum)
          if (leq[w][tg] && !leq[tg][w]) below.push_back(w);
        for (std::size_t a : below) {
          for (std::size_t b : below)
            if (!vlt(sys, vsum({corpus[a], corpus[b]}), corpus[tg])) {
              c.fail("a two part sum under " + format_vterm(corpus[tg]) +
                     " escaped it");
              break;
            }
          if (!c.ok) break;
        }
        if (!c.ok) break;
      }
      if (!c.ok) break;
      // Item three: applying a phi level preserves strict comparisons.
      for (std::size_t i = 0; i < n && c.ok; ++i)
        for (std::size_t j = 0; j < n && c.ok; ++j) {
          if (!(leq[i][j] && !leq[j][i])) continue;
          for (std::size_t beta = 0; beta < alpha; ++beta)
            if (!vlt(sys, vlow(beta, corpus[i]), vlow(beta, corpus[j]))) {
              c.fail("a phi level failed to preserve a strict comparison");
              break;
            }
        }
      if (!c.ok) break;
      // Item four: equivalence classes count the distinct values.
      std::vector<std::size_t> reps;
      for (std::size_t i = 0; i < n; ++i) {
        bool fresh = true;
        for (std::size_t r : reps)
          if (leq[i][r] && leq[r][i]) {
            fresh = false;
            break;
          }
        if (fresh) reps.push_back(i);
      }
      std::vector<VNFOrdinal> sorted = val;
      std::sort(sorted.begin(), sorted.end(),
                [](const VNFOrdinal& a, const VNFOrdinal& b) {
                  return vnf_compare(a, b) < 0;
                });
      std::size_t distinct = 0;
      for (std::size_t i = 0; i < sorted.size(); ++i)
        if (i == 0 || vnf_compare(sorted[i - 1], sorted[i]) != 0) ++distinct;
      if (reps.size() != distinct)
        c.fail("class count " + std::to_string(reps.size()) +
               " differs from " + std::to_string(distinct) +
               " distinct values");
    }
  }
  if (!c.ok) return c;
  // Normal forms: idempotent and equivalence faithful.
  VSystem sys{0, finite_ordinal_order(4)};
  std::mt19937 rng(4450216);
  for (int round = 0; round < 300; ++round) {
    VTermPtr t = random_vterm(rng, 0, 4, 2 + rng() % 13);
    auto nf = normal_form0(sys, t);
    VTermPtr rebuilt;
    if (nf.empty()) {
      rebuilt = vzero();
    } else if (nf.size() == 1) {
      rebuilt = vtop(nf[0]);
    } else {
      std::vector<VTermPtr> ps;
      for (const auto& x : nf) ps.push_back(vtop(x));
      rebuilt = vsum(std::move(ps));
    }
    if (!vequiv(sys, rebuilt, t)) {
      c.fail("normal form of " + format_vterm(t) + " is not equivalent");
      break;
    }
    if (join(normal_form0(sys, rebuilt)) != join(nf)) {
      c.fail("normal form of " + format_vterm(t) + " is not idempotent");
      break;
    }
  }
  if (c.ok)
    c.note = "20 systems, " + std::to_string(pair_count) +
             " compared pairs, 300 normal forms";
  return c;
}

Check check_descent() {
  Check c;
  VSystem sys{0, reversed_naturals()};
  auto strictly_descending = [&](const std::vector<std::string>& xs) {
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      if (!(sys.lambda.leq(xs[i + 1], xs[i]) &&
            !sys.lambda.leq(xs[i], xs[i + 1])))
        return false;
    return true;
  };
  std::vector<VTermPtr> direct;
  for (int n = 0; n < 55; ++n) direct.push_back(vtop(std::to_string(n)));
  std::vector<VTermPtr> settling;
  for (std::size_t n = 0; n < 55; ++n) {
    std::vector<VTermPtr> ps;
    for (std::size_t i = 0; i < n; ++i)
      ps.push_back(vtop(std::to_string(2 * i + 2)));
    ps.push_back(vtop(std::to_string(2 * n + 1)));
    settling.push_back(ps.size() == 1 ? ps[0] : vsum(std::move(ps)));
  }
  std::size_t lens[2] = {0, 0};
  int idx = 0;
  for (const auto* fam : {&direct, &settling}) {
    DescentResult r = descending_transfer(sys, *fam, 50);
    if (!r.resolved) {
      c.fail("window of 50 left a family unresolved");
      return c;
    }
    if (r.descent.size() < 10) {
      c.fail("descent shorter than 10");
      return c;
    }
    if (!strictly_descending(r.descent)) {
      c.fail("emitted list is not strictly descending");
      return c;
    }
    if (descending_transfer(sys, *fam, 1).resolved) {
      c.fail("window of 1 resolved a family");
      return c;
    }
    lens[idx++] = r.descent.size();
  }
  c.note = "descents of " + std::to_string(lens[0]) + " and " +
           std::to_string(lens[1]) + ", window 1 unresolved";
  return c;
}

Check check_demos() {
  Check c;
  for (std::size_t k = 0; k <= 8; ++k) {
    std::vector<HFSet> pairs;
    for (std::size_t n = 0; n < k; ++n)
      for (std::size_t m = 0; m < k; ++m)
        pairs.push_back(kuratowski(kuratowski(von_neumann(n), von_neumann(m)),
                                   von_neumann(n + m)));
    if (addition_graph_via_collapse(k) != make_set(std::move(pairs))) {
      c.fail("addition graph wrong at k=" + std::to_string(k));
      return c;
    }
  }
  if (ackermann_collapse_image(4) != v_level(4)) {
    c.fail("bit membership image differs from the cumulative level");
    return c;
  }
  c.note = "addition up to k=8, bit membership on 16 codes";
  return c;
}

Check check_prs_levels() {
  Check c;
  std::mt19937 rng(31337);
  for (int round = 0; round < 200; ++round) {
    std::vector<HFSet> es;
    std::size_t want = rng() % 6;
    for (std::size_t i = 0; i < want; ++i) es.push_back(gen::hf(rng, 3, 2));
    HFSet x = make_set(std::move(es));
    if (tc_rud(x) != transitive_closure(x)) {
      c.fail("recursive transitive closure differs on " + format_hf(x));
      return c;
    }
    if (pfin_prim(x, x.card()) != finite_powerset(x)) {
      c.fail("recursive powerset differs on " + format_hf(x));
      return c;
    }
  }
  HFSet u;
  HFSet v = singleton(u);
  HFSet two_cycle = make_set({kuratowski(u, v), kuratowski(v, u)});
  if (beta_oracle(make_set({u, v}), two_cycle) != HFSet()) {
    c.fail("a two cycle produced a nonempty collapse");
    return c;
  }
  HFSet a = v_level(3);
  std::vector<HFSet> mem, diag;
  for (const HFSet& p : a.elems()) {
    for (const HFSet& q : a.elems())
      if (q.contains(p)) mem.push_back(kuratowski(p, q));
    diag.push_back(kuratowski(p, p));
  }
  if (beta_oracle(a, make_set(std::move(mem))) != make_set(std::move(diag))) {
    c.fail("membership on a transitive set did not collapse to identity");
    return c;
  }
  for (std::size_t n = 0; n <= 4; ++n)
    if (l_level(HFSet(), n).levels[n] != v_level(n)) {
      c.fail("definable level " + std::to_string(n) +
             " differs from the cumulative one");
      return c;
    }
  c.note = "200 closures and powersets, oracle edge cases, 5 levels";
  return c;
}

}  // namespace

int main() {
  struct Entry {
    const char* label;
    Check (*run)();
    double budget;  // seconds, 0 for none
  };
  const Entry entries[] = {
      {"truth via one collapse agrees with direct evaluation",
       check_truth_collapse, 30},
      {"true and false values stay pairwise distinct over the corpus",
       check_value_distinctness, 0},
      {"maximal bisimulation coincides with the collapse kernel",
       check_bisim_kernel, 20},
      {"both recursion engines agree and satisfy the defining equation",
       check_tr_engines, 60},
      {"staged recursion recovers the maximal bisimulation",
       check_bisim_via_tr, 0},
      {"solver matches strategy enumeration and copying games favor the second player",
       check_games, 0},
      {"notation comparison tracks the ordinal value oracle",
       check_veblen, 120},
      {"term stream descent transfers to the base order",
       check_descent, 0},
      {"addition and bit membership collapse to the advertised graphs",
       check_demos, 0},
      {"recursive set programs and level stacks match the kernel",
       check_prs_levels, 60},
  };
  int failures = 0;
  int idx = 0;
  for (const Entry& e : entries) {
    ++idx;
    auto start = std::chrono::steady_clock::now();
    Check c = e.run();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (e.budget > 0 && secs > e.budget) {
      c.ok = false;
      if (!c.note.empty()) c.note += "; ";
      c.note += "overran the " + std::to_string(static_cast<int>(e.budget)) +
                "s budget";
    }
    if (!c.ok) ++failures;
    std::printf("%2d %s  %s  [%s; %.1fs]\n", idx, c.ok ? "PASS" : "FAIL",
                e.label, c.note.c_str(), secs);
  }
  if (failures) std::printf("%d of 10 checks failed\n", failures);
  return failures;
}
