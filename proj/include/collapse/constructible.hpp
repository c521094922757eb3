#ifndef COLLAPSE_CONSTRUCTIBLE_HPP
#define COLLAPSE_CONSTRUCTIBLE_HPP

#include <map>
#include <vector>

#include "collapse/formula.hpp"
#include "collapse/hf.hpp"

namespace collapse {

// The subset of a cut out by f over the structure (a, membership): the
// members s with f true under the assignment [s, params...]. Parameters
// must be members of a and must cover the free variables past 0.
HFSet definable_subset(const HFSet& a, const FormulaPtr& f,
                       const std::vector<HFSet>& params);

// Every subset definable over (a, membership) with parameters. On a
// finite structure parameters flatten the hierarchy: {p1,...,pk} is cut
// out by x0=p1 or ... or x0=pk, so this is the whole powerset, computed
// that way. Guarded like finite_powerset.
HFSet def_set(const HFSet& a);

// The audit for the shortcut: collect subsets the slow way, evaluating
// every enumerated formula up to the size bound under every parameter
// assignment into a. Stops early once nothing new can appear. Guarded:
// refuses |a| > 3 or a bound over 9.
HFSet def_set_enumerated(const HFSet& a, std::size_t max_size);

// Finite levels over a base: levels[0] is the transitive closure of b,
// each later level the definable subsets of the one before. Every level
// is transitive and contains the previous one.
struct LevelSequence {
  std::vector<HFSet> levels;
};

// The sequence through level n. The guard on def_set applies per level,
// so the doubling exponent stops this well before memory does.
LevelSequence l_level(const HFSet& b, std::size_t n);

// The rank function on TC({x}): collapse the transitively closed
// membership relation on it. Every member maps to the von Neumann
// ordinal of its rank.
std::map<HFSet, HFSet> rank_function(const HFSet& x);

}  // namespace collapse

#endif
