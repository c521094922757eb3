#ifndef COLLAPSE_TRUTH_TREES_HPP
#define COLLAPSE_TRUTH_TREES_HPP

#include <string>
#include <vector>

#include "collapse/formula.hpp"
#include "collapse/tree.hpp"

namespace collapse {

// Truth-value trees: for each NNF formula f two structure-independent
// trees whose collapses play the roles of "true" and "false", and for
// each assignment a satisfaction tree whose collapse lands on exactly one
// of them. Node labels are tagged strings:
//   atomic subtree steps           "0", "1"
//   binary branch (value tree)     "c:<formula>:<b0><b1>"
//   binary branch (sat tree)       "cs:<formula>:<sig>:<b0><b1>"
//   quantifier stem (value tree)   "q:<formula>" then "1" / "0"
//   quantifier stem (sat tree)     "qs:<formula>:<sig>" then "1" / "0" /
//                                  "w:<element>"
//   pair encoding steps            "0", "1"
//   combined-tree roots            "top:<formula>", "bot:<formula>",
//                                  "sat:<formula>:<sig>"
// where <sig> serializes an assignment as "[v0 v1 ...]".

std::string assignment_sig(const std::vector<HFSet>& sigma);
std::vector<HFSet> parse_assignment_sig(const std::string& text);

FiniteTree top_tree(const FormulaPtr& f);
FiniteTree bot_tree(const FormulaPtr& f);

// Satisfaction tree for f under sigma; plain quantifiers branch over the
// members of a, bounded quantifiers over the members of the bound's
// value. Requires NNF and an assignment covering the free variables.
FiniteTree sat_tree(const HFSet& a, const FormulaPtr& f,
                    const std::vector<HFSet>& sigma);

// One tree holding, as root branches, the value trees of every
// subformula of f and the satisfaction trees of every
// (subformula, assignment) pair the construction reaches from (f, sigma).
FiniteTree combined_truth_tree(const HFSet& a, const FormulaPtr& f,
                               const std::vector<HFSet>& sigma);

// Collapses the combined tree once and compares the satisfaction value
// against the "true" value. Also checks the collapse landed on exactly
// one of the two values.
bool truth_via_collapse(const HFSet& a, const FormulaPtr& f,
                        const std::vector<HFSet>& sigma);

// True iff no "true" value of any corpus formula coincides with a
// "false" value of any other, and tree heights agree exactly with the
// formulas' logical ranks.
bool truth_distinctness(const std::vector<FormulaPtr>& corpus);

// Logical rank: 2 for (possibly negated) atoms, 3 + max over a binary
// connective, 2 + rank under a quantifier. Equals the height of the
// value trees.
std::size_t formula_rank(const FormulaPtr& f);
std::size_t tree_height(const FiniteTree& t);

// Local membership test: decides from the label path alone whether a
// sequence belongs to the combined tree over (a, corpus of root
// branches), re-deriving the construction rules step by step.
bool truth_path_ok(const HFSet& a, const FiniteTree::Seq& path);

}  // namespace collapse

#endif
