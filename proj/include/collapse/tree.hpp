#ifndef COLLAPSE_TREE_HPP
#define COLLAPSE_TREE_HPP

#include <string>
#include <vector>

#include "collapse/hf.hpp"

namespace collapse {

// A finite tree of sequences: a prefix closed set of label sequences with
// the empty sequence as root. Nodes are stored sorted (shorter first,
// then lexicographic), so node indexes are stable and serialization is
// byte stable.
class FiniteTree {
 public:
  using Seq = std::vector<std::string>;

  // Validates prefix closure and deduplicates. The empty node set is
  // rejected; the smallest tree is {()}.
  static FiniteTree from_nodes(std::vector<Seq> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<Seq>& nodes() const { return nodes_; }
  const Seq& node(std::size_t i) const { return nodes_[i]; }

  // Index of a sequence, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t index_of(const Seq& s) const;

  const std::vector<std::size_t>& children(std::size_t i) const {
    return children_[i];
  }
  bool terminal(std::size_t i) const { return children_[i].empty(); }
  std::size_t root() const { return 0; }

  // The subtree {t : node(i) + t in tree}, re-rooted.
  FiniteTree subtree(std::size_t i) const;

 private:
  std::vector<Seq> nodes_;
  std::vector<std::vector<std::size_t>> children_;
};

FiniteTree tree_from_json(const std::string& text);
std::string tree_to_json(const FiniteTree& t);

// The collapse of the immediate successor relation: value(n) is the set
// of values of n's children. Returned per node, root at index 0.
std::vector<HFSet> tree_collapse_all(const FiniteTree& t);
HFSet tree_collapse(const FiniteTree& t);

// prefix_tree(l, t): every node of t prefixed with label l, together with
// the root. pair_tree joins two trees under labels "0" and "1", and
// opair_tree is Pair(Pair(t0,t0), Pair(t0,t1)), whose collapse is the
// Kuratowski pair of the two collapses.
FiniteTree prefix_tree(const std::string& label, const FiniteTree& t);
FiniteTree pair_tree(const FiniteTree& t0, const FiniteTree& t1);
FiniteTree opair_tree(const FiniteTree& t0, const FiniteTree& t1);
FiniteTree merge_trees(const std::vector<FiniteTree>& ts);

}  // namespace collapse

#endif
