#ifndef TESTS_GEN_HPP
#define TESTS_GEN_HPP

// Hand-rolled random generators shared by the property style tests.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "collapse/hf.hpp"
#include "collapse/tree.hpp"

namespace gen {

// Random hereditarily finite set, at most `depth` levels deep and `width`
// children per node.
inline collapse::HFSet hf(std::mt19937& rng, int depth, int width) {
  if (depth <= 0) return collapse::HFSet();
  std::uniform_int_distribution<int> dw(0, width);
  int n = dw(rng);
  std::vector<collapse::HFSet> es;
  es.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) es.push_back(hf(rng, depth - 1, width));
  return collapse::make_set(std::move(es));
}

// Re-extracts the extension of x and rebuilds it with the elements in a
// random order and a few duplicated, exercising canonicalization.
inline collapse::HFSet rebuild_shuffled(std::mt19937& rng, const collapse::HFSet& x) {
  std::vector<collapse::HFSet> es;
  for (const collapse::HFSet& e : x.elems()) es.push_back(rebuild_shuffled(rng, e));
  if (!es.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
    es.push_back(es[pick(rng)]);
    std::shuffle(es.begin(), es.end(), rng);
  }
  return collapse::make_set(std::move(es));
}

// Random tree over a small label alphabet, grown by attaching children to
// already present nodes. Always contains the root; size is exact.
inline collapse::FiniteTree tree(std::mt19937& rng, std::size_t size,
                                 int alphabet = 3) {
  std::vector<collapse::FiniteTree::Seq> nodes;
  nodes.push_back({});
  std::uniform_int_distribution<int> dl(0, alphabet - 1);
  while (nodes.size() < size) {
    std::uniform_int_distribution<std::size_t> dn(0, nodes.size() - 1);
    collapse::FiniteTree::Seq s = nodes[dn(rng)];
    s.push_back(std::to_string(dl(rng)));
    if (std::find(nodes.begin(), nodes.end(), s) == nodes.end())
      nodes.push_back(std::move(s));
  }
  return collapse::FiniteTree::from_nodes(std::move(nodes));
}

}  // namespace gen

#endif
