#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "collapse/hf.hpp"
#include "collapse/prs.hpp"
#include "gen.hpp"

using namespace collapse;

namespace {

HFSet E() { return HFSet(); }

// Union of the members of the members, the candidate pool the displayed
// comprehensions quantify over.
HFSet uu(const HFSet& x) { return set_union_all(set_union_all(x)); }

// Brute-force renditions of the nine basic functions, written from the
// displayed comprehensions alone: explicit loops over the quantifier
// pools, membership tests by constructing the candidate pair.
HFSet oracle_rud(std::size_t i, const HFSet& x, const HFSet& y) {
  std::vector<HFSet> out;
  switch (i) {
    case 0:
      return pair_set(x, y);
    case 1:
      for (const HFSet& u : x.elems())
        if (!y.contains(u)) out.push_back(u);
      break;
    case 2:
      for (const HFSet& u : x.elems())
        for (const HFSet& v : y.elems()) out.push_back(kuratowski(u, v));
      break;
    case 3:
      for (const HFSet& u : uu(y).elems())
        for (const HFSet& v : uu(y).elems())
          if (y.contains(kuratowski(u, v)))
            for (const HFSet& w : x.elems())
              out.push_back(tuple({u, w, v}));
      break;
    case 4:
      for (const HFSet& u : uu(y).elems())
        for (const HFSet& v : uu(y).elems())
          if (y.contains(kuratowski(u, v)))
            for (const HFSet& w : x.elems())
              out.push_back(tuple({u, v, w}));
      break;
    case 5:
      for (const HFSet& u : x.elems())
        for (const HFSet& v : u.elems()) out.push_back(v);
      break;
    case 6:
      for (const HFSet& u : uu(x).elems())
        for (const HFSet& v : uu(x).elems())
          if (x.contains(kuratowski(u, v))) {
            out.push_back(u);
            break;
          }
      break;
    case 7:
      for (const HFSet& u : x.elems())
        for (const HFSet& v : x.elems())
          if (v.contains(u)) out.push_back(kuratowski(u, v));
      break;
    case 8:
      for (const HFSet& z : y.elems()) {
        std::vector<HFSet> ws;
        for (const HFSet& w : uu(x).elems())
          if (x.contains(kuratowski(w, z))) ws.push_back(w);
        out.push_back(make_set(std::move(ws)));
      }
      break;
  }
  return make_set(std::move(out));
}

// Sets whose members are often Kuratowski pairs, so the pair-eating
// functions see matches and not just junk.
HFSet rich(std::mt19937& rng) {
  std::uniform_int_distribution<int> dn(0, 4), coin(0, 3);
  std::vector<HFSet> es;
  int n = dn(rng);
  for (int k = 0; k < n; ++k) {
    HFSet a = gen::hf(rng, 2, 2);
    if (coin(rng) == 0)
      es.push_back(a);
    else
      es.push_back(kuratowski(a, gen::hf(rng, 2, 2)));
  }
  return make_set(std::move(es));
}

// A set with at most five direct members, each one small.
HFSet small_family(std::mt19937& rng, int max_card) {
  std::uniform_int_distribution<int> dn(0, max_card);
  std::vector<HFSet> es;
  int n = dn(rng);
  for (int k = 0; k < n; ++k) es.push_back(gen::hf(rng, 2, 2));
  return make_set(std::move(es));
}

// Collapse of an explicit edge list by direct recursion on indices;
// edges (i, j) read as member i directly below member j.
HFSet collapse_by_hand(const std::vector<HFSet>& mem,
                       const std::vector<std::pair<int, int>>& below) {
  std::vector<std::optional<HFSet>> val(mem.size());
  std::function<HFSet(int)> pi = [&](int j) {
    if (val[static_cast<std::size_t>(j)])
      return *val[static_cast<std::size_t>(j)];
    std::vector<HFSet> cs;
    for (const auto& e : below)
      if (e.second == j) cs.push_back(pi(e.first));
    HFSet c = make_set(std::move(cs));
    val[static_cast<std::size_t>(j)] = c;
    return c;
  };
  std::vector<HFSet> graph;
  for (int j = 0; j < static_cast<int>(mem.size()); ++j)
    graph.push_back(kuratowski(mem[static_cast<std::size_t>(j)], pi(j)));
  return make_set(std::move(graph));
}

}  // namespace

TEST_CASE("basic rudimentary functions match their comprehension oracles") {
  HFSet e = E();
  CHECK(rud(0, e, singleton(e)) == parse_hf("{{} {{}}}"));
  CHECK(rud(5, pair_set(singleton(e), singleton(singleton(e))), e) ==
        parse_hf("{{} {{}}}"));
  CHECK(rud(1, von_neumann(3), von_neumann(2)) == singleton(von_neumann(2)));
  CHECK(rud(2, singleton(e), singleton(e)) == singleton(kuratowski(e, e)));
  CHECK(rud(6, singleton(kuratowski(e, singleton(e))), e) == singleton(e));
  CHECK_THROWS_AS(rud(9, e, e), UsageError);

  std::mt19937 rng(20260823);
  for (int round = 0; round < 100; ++round) {
    HFSet x = gen::hf(rng, 3, 3), y = gen::hf(rng, 3, 3);
    for (std::size_t i = 0; i <= 8; ++i)
      CHECK(rud(i, x, y) == oracle_rud(i, x, y));
  }
  for (int round = 0; round < 60; ++round) {
    HFSet x = rich(rng), y = rich(rng);
    for (std::size_t i = 0; i <= 8; ++i)
      CHECK(rud(i, x, y) == oracle_rud(i, x, y));
  }
}

TEST_CASE("programs evaluate by the defining clauses") {
  HFSet e = E();
  HFSet a = von_neumann(2), b = singleton(singleton(e)), c = von_neumann(1);

  CHECK(eval_prim(prim_proj(1, 3), {a, b, c}) == b);
  CHECK(eval_prim(prim_zero(2), {a, b}) == e);
  CHECK(eval_prim(prim_adjoin(), {e, e}) == singleton(e));
  CHECK(eval_prim(prim_adjoin(), {a, b}) == adjoin(a, b));
  CHECK(eval_prim(prim_cond(), {a, b, e, singleton(e)}) == a);
  CHECK(eval_prim(prim_cond(), {a, b, singleton(e), singleton(e)}) == b);

  auto flip = prim_comp(prim_adjoin(), {prim_proj(1, 2), prim_proj(0, 2)});
  CHECK(eval_prim(flip, {a, b}) == adjoin(b, a));
  CHECK(prim_arity(flip) == std::size_t{2});

  std::map<std::string, HFSet> env{{"w", von_neumann(3)}};
  CHECK(eval_prim(prim_const("w"), {}, env) == von_neumann(3));
  CHECK(eval_prim(prim_const("w"), {a, b}, env) == von_neumann(3));
  CHECK(!prim_arity(prim_const("w")).has_value());
  CHECK_THROWS_AS(eval_prim(prim_const("missing"), {}, env), UsageError);

  auto both = prim_comp(prim_adjoin(), {prim_const("w"), prim_const("w")});
  CHECK(!prim_arity(both).has_value());
  CHECK(eval_prim(both, {}, env) == adjoin(von_neumann(3), von_neumann(3)));
  CHECK(eval_prim(both, {a}, env) == adjoin(von_neumann(3), von_neumann(3)));

  // f(x) = h(union of f over the members, x) with h the adjunction:
  // accumulates the braced second argument, so f(x) is TC(x) with x on
  // top. On numerals that is the successor.
  auto accum = prim_primrec(prim_adjoin());
  CHECK(prim_arity(accum) == std::size_t{1});
  CHECK(eval_prim(accum, {e}) == singleton(e));
  CHECK(eval_prim(accum, {singleton(e)}) == parse_hf("{{} {{}}}"));
  CHECK(eval_prim(accum, {singleton(singleton(e))}) ==
        parse_hf("{{} {{}} {{{}}}}"));
  for (std::size_t n = 0; n <= 4; ++n)
    CHECK(eval_prim(accum, {von_neumann(n)}) == von_neumann(n + 1));

  CHECK_THROWS_AS(prim_proj(3, 3), UsageError);
  CHECK_THROWS_AS(prim_proj(0, 0), UsageError);
  CHECK_THROWS_AS(prim_comp(prim_adjoin(), {prim_proj(0, 1)}), UsageError);
  CHECK_THROWS_AS(
      prim_comp(prim_proj(0, 2), {prim_proj(0, 2), prim_proj(0, 3)}),
      UsageError);
  CHECK_THROWS_AS(prim_comp(prim_adjoin(), {}), UsageError);
  CHECK_THROWS_AS(prim_primrec(prim_proj(0, 1)), UsageError);
  CHECK_THROWS_AS(prim_primrec(prim_const("w")), UsageError);
  CHECK_THROWS_AS(prim_rud(9), UsageError);
  CHECK_THROWS_AS(eval_prim(prim_adjoin(), {a}), UsageError);
  CHECK_THROWS_AS(eval_prim(flip, {a, b, c}), UsageError);
}

TEST_CASE("recursions memoize shared structure") {
  // Each step doubles the naive call tree; only the memoized recursion
  // finishes this within any budget.
  HFSet x = E();
  for (int k = 0; k < 40; ++k) x = pair_set(x, singleton(x));
  auto accum = prim_primrec(prim_adjoin());
  CHECK(eval_prim(accum, {x}) == adjoin(transitive_closure(x), x));
}

TEST_CASE("derived image programs list the pointwise values") {
  HFSet e = E();
  auto grow = prim_comp(prim_adjoin(), {prim_proj(1, 2), prim_proj(0, 2)});
  auto img = prim_image(grow);
  CHECK(prim_arity(img) == std::size_t{2});
  CHECK(eval_prim(img, {e, e}) == e);
  CHECK(eval_prim(img, {von_neumann(2), e}) ==
        pair_set(singleton(e), singleton(singleton(e))));

  auto boxed = prim_comp(prim_rud(0), {prim_proj(0, 1), prim_proj(0, 1)});
  auto img1 = prim_image(boxed);

  std::mt19937 rng(411);
  for (int round = 0; round < 25; ++round) {
    HFSet x = gen::hf(rng, 3, 3), c = gen::hf(rng, 2, 2);
    std::vector<HFSet> grown, boxes, pieces;
    for (const HFSet& z : x.elems()) {
      grown.push_back(adjoin(c, z));
      boxes.push_back(singleton(z));
      pieces.push_back(adjoin(c, z));
    }
    CHECK(eval_prim(img, {x, c}) == make_set(grown));
    CHECK(eval_prim(img1, {x}) == make_set(boxes));
    CHECK(eval_prim(prim_union_image(grow), {x, c}) ==
          set_union_all(make_set(pieces)));
  }

  CHECK_THROWS_AS(prim_image(prim_const("w")), UsageError);
}

TEST_CASE("the transitive closure program agrees with the kernel") {
  CHECK(prim_arity(tc_program()) == std::size_t{1});
  CHECK(tc_rud(E()) == E());
  CHECK(tc_rud(parse_hf("{{{}}}")) == parse_hf("{{{}} {}}"));

  std::mt19937 rng(52);
  for (int round = 0; round < 200; ++round) {
    HFSet x = gen::hf(rng, 4, 3);
    CHECK(tc_rud(x) == transitive_closure(x));
  }
}

TEST_CASE("the powerset recursion reaches every subset") {
  HFSet e = E();
  CHECK(prim_arity(pfin_program()) == std::size_t{2});
  CHECK(pfin_prim(e, 0) == singleton(e));
  CHECK(pfin_prim(von_neumann(2), 2) == finite_powerset(von_neumann(2)));
  CHECK(pfin_prim(von_neumann(2), 2).card() == 4);

  std::mt19937 rng(77);
  for (int round = 0; round < 100; ++round) {
    HFSet x = small_family(rng, 5);
    CHECK(pfin_prim(x, x.card()) == finite_powerset(x));
    CHECK(!pfin_truncated(x, x.card()));
  }
  for (int round = 0; round < 10; ++round) {
    HFSet x = small_family(rng, 4);
    CHECK(pfin_prim(x, x.card() + 2) == finite_powerset(x));
  }

  // Short numerals stop at the subsets of that many elements.
  HFSet x = make_set({e, singleton(e), von_neumann(2)});
  std::vector<HFSet> bounded;
  for (const HFSet& s : finite_powerset(x).elems())
    if (s.card() <= 2) bounded.push_back(s);
  CHECK(pfin_prim(x, 2) == make_set(bounded));
  CHECK(pfin_truncated(x, 2));
  CHECK(pfin_prim(x, 0) == singleton(e));
}

TEST_CASE("the oracle collapses well founded relations and rejects the rest") {
  HFSet e = E();
  CHECK(beta_oracle(e, e) == e);
  CHECK(beta_oracle(singleton(e), e) == singleton(kuratowski(e, e)));

  // Membership on a transitive carrier collapses to the identity.
  HFSet a = v_level(3);
  HFSet member = rud(7, a, e);
  std::vector<HFSet> ident;
  for (const HFSet& u : a.elems()) ident.push_back(kuratowski(u, u));
  CHECK(beta_oracle(a, member) == make_set(ident));

  HFSet two = pair_set(e, singleton(e));
  HFSet cyc = pair_set(kuratowski(e, singleton(e)), kuratowski(singleton(e), e));
  CHECK(beta_oracle(two, cyc) == e);
  CHECK(beta_oracle(singleton(e), singleton(kuratowski(e, e))) == e);
  CHECK(beta_oracle(two, adjoin(singleton(kuratowski(e, singleton(e))), e)) == e);
  CHECK(beta_oracle(singleton(e), singleton(kuratowski(singleton(e), e))) == e);

  std::mt19937 rng(9001);
  std::uniform_int_distribution<int> coin(0, 4);
  for (int round = 0; round < 30; ++round) {
    HFSet carrier = small_family(rng, 5);
    const std::vector<HFSet>& mem = carrier.elems();
    std::vector<std::pair<int, int>> below;
    std::vector<HFSet> pairs;
    for (int i = 0; i < static_cast<int>(mem.size()); ++i)
      for (int j = i + 1; j < static_cast<int>(mem.size()); ++j)
        if (coin(rng) < 2) {
          below.emplace_back(i, j);
          pairs.push_back(kuratowski(mem[static_cast<std::size_t>(i)],
                                     mem[static_cast<std::size_t>(j)]));
        }
    CHECK(beta_oracle(carrier, make_set(pairs)) ==
          collapse_by_hand(mem, below));
  }

  // A three element cycle with a well founded tail hanging off it.
  HFSet m0 = e, m1 = singleton(e), m2 = von_neumann(2), m3 = singleton(m2);
  HFSet a4 = make_set({m0, m1, m2, m3});
  HFSet r4 = make_set({kuratowski(m0, m1), kuratowski(m1, m2),
                       kuratowski(m2, m0), kuratowski(m0, m3)});
  CHECK(beta_oracle(a4, r4) == e);
}

TEST_CASE("rank emerges from collapsing reachability") {
  auto rk = rank_program();
  CHECK(prim_arity(rk) == std::size_t{1});
  CHECK(eval_prim(rk, {E()}) == von_neumann(0));
  CHECK(eval_prim(rk, {singleton(singleton(E()))}) == von_neumann(2));
  for (std::size_t n = 0; n <= 4; ++n)
    CHECK(eval_prim(rk, {von_neumann(n)}) == von_neumann(n));

  std::mt19937 rng(6);
  for (int round = 0; round < 30; ++round) {
    HFSet x = gen::hf(rng, 4, 3);
    CHECK(as_von_neumann(eval_prim(rk, {x})) == std::size_t{hf_rank(x)});
  }
}

TEST_CASE("programs read and print as s-expressions") {
  CHECK(format_prim(prim_adjoin()) == "adjoin");
  CHECK(format_prim(prim_cond()) == "cond");
  CHECK(format_prim(prim_oracle_b()) == "oracle-b");
  CHECK(format_prim(prim_proj(0, 2)) == "(proj 0 2)");
  CHECK(format_prim(prim_zero(3)) == "(zero 3)");
  CHECK(format_prim(prim_rud(7)) == "(rud 7)");
  CHECK(format_prim(prim_const("omega")) == "(const omega)");
  CHECK(format_prim(prim_primrec(prim_adjoin())) == "(primrec adjoin)");
  CHECK(format_prim(prim_comp(prim_adjoin(),
                              {prim_proj(1, 2), prim_proj(0, 2)})) ==
        "(comp adjoin (proj 1 2) (proj 0 2))");

  auto flip = parse_prim(" (comp adjoin\n\t(proj 1 2) (proj 0 2)) ");
  CHECK(eval_prim(flip, {E(), von_neumann(1)}) == adjoin(von_neumann(1), E()));

  auto accum = parse_prim("(primrec adjoin)");
  CHECK(eval_prim(accum, {von_neumann(2)}) == von_neumann(3));

  for (const auto& prog : {tc_program(), pfin_program(), rank_program()}) {
    std::string text = format_prim(prog);
    CHECK(format_prim(parse_prim(text)) == text);
  }

  CHECK_THROWS_AS(parse_prim(""), ParseError);
  CHECK_THROWS_AS(parse_prim("()"), ParseError);
  CHECK_THROWS_AS(parse_prim("(frob 1)"), ParseError);
  CHECK_THROWS_AS(parse_prim("oracle"), ParseError);
  CHECK_THROWS_AS(parse_prim("(proj 1)"), ParseError);
  CHECK_THROWS_AS(parse_prim("(zero)"), ParseError);
  CHECK_THROWS_AS(parse_prim("(primrec)"), ParseError);
  CHECK_THROWS_AS(parse_prim("(comp adjoin"), ParseError);
  CHECK_THROWS_AS(parse_prim("adjoin cond"), ParseError);
  CHECK_THROWS_AS(parse_prim("(proj 2 2)"), UsageError);
  CHECK_THROWS_AS(parse_prim("(rud 9)"), UsageError);
  CHECK_THROWS_AS(parse_prim("(comp adjoin)"), UsageError);

  bool position_mentioned = false;
  try {
    parse_prim("(comp adjoin (proj 1 2) (proj 0 2)");
  } catch (const ParseError& err) {
    position_mentioned =
        std::string(err.what()).find("position") != std::string::npos;
  }
  CHECK(position_mentioned);
}
