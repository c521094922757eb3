#ifndef COLLAPSE_TR_HPP
#define COLLAPSE_TR_HPP

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "collapse/bisim.hpp"
#include "collapse/formula.hpp"
#include "collapse/relation.hpp"
#include "collapse/tree.hpp"

namespace collapse {

// Stagewise recursion: over a carrier a and a well founded stage order
// (X, <), an NNF formula psi decides membership of c in the slice H_s
// from the accumulated earlier slices. Variable 0 of psi is the probe u,
// variable 1 the accumulator v (legal only inside membership atoms
// "x in v" / "x notin v"), and variable i+2 is bound to params[i].
struct TRInstance {
  HFSet domain_a;
  CarrierRelation order;  // carrier labels are set expressions
  FormulaPtr psi;
  std::vector<HFSet> params;
};

TRInstance tr_instance_from_json(const std::string& text);
std::string tr_instance_to_json(const TRInstance& inst);

// H as a set of (element, stage) pairs; both components are the actual
// sets the instance denotes.
struct TRResult {
  std::set<std::pair<HFSet, HFSet>> pairs;
};

// True iff the v-occurrence restriction holds, the order is acyclic, and
// the carrier labels denote pairwise distinct sets.
bool validate_instance(const TRInstance& inst);

// H_s; H_{<s} as the set of Kuratowski pairs <c,t> with t < s; X_{<s}.
HFSet tr_slice(const TRResult& res, const HFSet& s);
HFSet tr_before(const TRInstance& inst, const TRResult& res, const HFSet& s);
HFSet tr_stages_before(const TRInstance& inst, const HFSet& s);

// Direct recursion along a topological order of the stages; psi is
// evaluated with v materialized as the set H_{<s} over a transitive
// universe containing a, a x X, the stages, and the parameters.
TRResult tr_direct(const TRInstance& inst);

// The same H read off per-stage truth value trees: every stage carries
// its own true/false/satisfaction trees, membership atoms on v embed the
// earlier stages' trees, and one bottom-up collapse of the shared forest
// decides all memberships.
TRResult tr_trees(const TRInstance& inst);

// Independent re-verification of the recursion equation at every stage.
bool tr_recheck(const TRInstance& inst, const TRResult& res);

// The maximal bisimulation of a finite tree obtained by running the
// stage recursion on componentwise child pairs and reading the diagonal.
NodeRelation bisim_via_tr(const FiniteTree& t);

}  // namespace collapse

#endif
