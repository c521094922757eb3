#ifndef COLLAPSE_BISIM_HPP
#define COLLAPSE_BISIM_HPP

#include <set>
#include <utility>

#include "collapse/tree.hpp"

namespace collapse {

// A binary relation on the nodes of one tree, by node index.
using NodeRelation = std::set<std::pair<std::size_t, std::size_t>>;

NodeRelation relation_from_pairs_json(const std::string& text,
                                      const FiniteTree& t);
std::string relation_pairs_to_json(const NodeRelation& b);

// Forth and back over immediate successors: whenever (s, t) is related,
// every child of s matches some child of t under the relation, and
// conversely.
bool is_bisimulation(const FiniteTree& t, const NodeRelation& b);

// Greatest fixpoint: start from all pairs with equal terminal status and
// refine away violations.
NodeRelation maximal_bisimulation(const FiniteTree& t);

// Pairs whose collapse values coincide. On finite trees this is exactly
// the maximal bisimulation.
NodeRelation collapse_kernel(const FiniteTree& t);

// The tree translations of equality and membership, read through the
// maximal bisimulation of the joined tree.
bool trees_equal_star(const FiniteTree& t, const FiniteTree& s);
bool tree_member_star(const FiniteTree& t, const FiniteTree& s);

}  // namespace collapse

#endif
