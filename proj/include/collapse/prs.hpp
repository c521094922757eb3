#ifndef COLLAPSE_PRS_HPP
#define COLLAPSE_PRS_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "collapse/hf.hpp"

namespace collapse {

// Program terms for primitive recursive set functions over hereditarily
// finite sets, extended with the nine basic rudimentary functions, named
// constants bound at evaluation time, and the collapse oracle. Every term
// denotes a total function of a fixed arity; arities are checked when
// terms are built, so an ill-typed program never reaches evaluation.
enum class PrimKind {
  Proj,        // x0,...,xn-1 -> xi
  ZeroFn,      // x0,...,xn-1 -> {}
  Adjoin,      // x, y -> x together with {y}
  Cond,        // x, y, u, v -> x if u in v, else y
  Comp,        // g0(g1(xs), ..., gk(xs))
  PrimRec,     // f(x, ys) = h(union of f(z, ys) over z in x, x, ys)
  RudBasic,    // the basic rudimentary function of the stored index
  OracleB,     // a, r -> collapse of r on a, or {} when ill founded
  ConstParam,  // named constant supplied through the bindings
};

struct PrimTerm;
using PrimTermPtr = std::shared_ptr<const PrimTerm>;

struct PrimTerm {
  PrimKind kind;
  std::size_t index = 0;              // Proj position, RudBasic index
  std::size_t arity = 0;              // Proj and ZeroFn declared arity
  std::string name;                   // ConstParam
  std::vector<PrimTermPtr> children;  // Comp: g0 then g1..gk; PrimRec: h
};

// Constructors validate on the spot: projections need i < arity, a
// composition needs arity(g0) = k with all gi of one common arity, a
// recursion body needs arity at least two. Violations raise UsageError.
PrimTermPtr prim_proj(std::size_t i, std::size_t arity);
PrimTermPtr prim_zero(std::size_t arity);
PrimTermPtr prim_adjoin();
PrimTermPtr prim_cond();
PrimTermPtr prim_comp(PrimTermPtr g0, std::vector<PrimTermPtr> gs);
PrimTermPtr prim_primrec(PrimTermPtr h);
PrimTermPtr prim_rud(std::size_t i);
PrimTermPtr prim_oracle_b();
PrimTermPtr prim_const(std::string name);

// The declared arity. Constants adapt to any arity and report nothing;
// so does a composition whose inner terms are all constants.
std::optional<std::size_t> prim_arity(const PrimTermPtr& t);

// Concrete syntax, one s-expression per program: (proj i n), (zero n),
// adjoin, cond, (comp g0 g1 ...), (primrec h), (rud i), oracle-b,
// (const name). parse_prim raises ParseError with a position on junk.
PrimTermPtr parse_prim(const std::string& text);
std::string format_prim(const PrimTermPtr& t);

// Runs a program on the given arguments. The argument count must match
// the term's arity (constants accept any). Recursions memoize on the
// term and full argument list for the duration of this call; a global
// step budget turns runaway evaluations into SizeLimitError.
HFSet eval_prim(const PrimTermPtr& t, const std::vector<HFSet>& args,
                const std::map<std::string, HFSet>& bindings = {});

// The nine basic rudimentary functions, all binary:
//   0 {x,y}            1 x minus y        2 x cross y (Kuratowski)
//   3 <u,w,v> for w in x, <u,v> in y      4 <u,v,w> likewise
//   5 union of x       6 domain of x      7 <u,v> in x squared with u in v
//   8 the sets {w : <w,z> in x} for z in y
// Tuples are right nested, <x0,x1,x2> = <x0,<x1,x2>>.
HFSet rud(std::size_t i, const HFSet& x, const HFSet& y);

// Derived program builders. Both recurse on their first argument and
// thread the remaining ones through: prim_image(g) computes the set of
// g(z, ys) over z in x, prim_union_image(g) its union. Built from the
// recursion scheme by accumulating the value-keyed graph of g, so the
// results are honest program terms, not new primitives.
PrimTermPtr prim_image(const PrimTermPtr& g);
PrimTermPtr prim_union_image(const PrimTermPtr& g);

// Transitive closure as the one-line recursion TC(x) = union of TC(y)
// over y in x, together with x. tc_rud runs it through eval_prim.
PrimTermPtr tc_program();
HFSet tc_rud(const HFSet& x);

// Finite powerset by iterating f(x,y) = x with {u with {v} : u in x,
// v in y} adjoined, along a von Neumann numeral. The program has arity
// two (the base set and the seed {{}}) and reads its numeral from the
// binding "omega"; pfin_prim binds von_neumann(n). When n is at least
// |x| the result is the full powerset; a smaller n yields exactly the
// subsets of at most n elements, and pfin_truncated reports that case.
PrimTermPtr pfin_program();
HFSet pfin_prim(const HFSet& x, std::size_t n);
bool pfin_truncated(const HFSet& x, std::size_t n);

// The collapse oracle on set arguments. r must be a set of Kuratowski
// pairs with both components in a, read as <below, above>; anything else
// counts as not a relation and yields {}. On a well founded relation the
// result is the graph of its collapsing function, the pairs <u, c(u)>
// with c(u) the set of c(w) over w directly below u. Cycles yield {}.
HFSet beta_oracle(const HFSet& a, const HFSet& r);

// Rank through the oracle, as a unary program: form TC({x}), feed its
// membership-reachability relation to the oracle, and join the range of
// the returned graph. The value is the von Neumann ordinal of the rank
// of x, checkable against hf_rank.
PrimTermPtr rank_program();

}  // namespace collapse

#endif
