#include "collapse/tree.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace collapse {

namespace {

bool seq_less(const FiniteTree::Seq& a, const FiniteTree::Seq& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace

FiniteTree FiniteTree::from_nodes(std::vector<Seq> nodes) {
  std::sort(nodes.begin(), nodes.end(), seq_less);
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  if (nodes.empty() || !nodes[0].empty()) {
    throw UsageError("tree must contain the empty sequence");
  }

  FiniteTree t;
  t.nodes_ = std::move(nodes);
  t.children_.resize(t.nodes_.size());

  std::map<Seq, std::size_t> pos;
  for (std::size_t i = 0; i < t.nodes_.size(); ++i) pos[t.nodes_[i]] = i;
  for (std::size_t i = 1; i < t.nodes_.size(); ++i) {
    Seq parent = t.nodes_[i];
    parent.pop_back();
    auto it = pos.find(parent);
    if (it == pos.end()) {
      std::string repr;
      for (const auto& l : t.nodes_[i]) repr += (repr.empty() ? "" : ".") + l;
      throw UsageError("tree is not prefix closed at node (" + repr + ")");
    }
    t.children_[it->second].push_back(i);
  }
  return t;
}

std::size_t FiniteTree::index_of(const Seq& s) const {
  auto it = std::lower_bound(nodes_.begin(), nodes_.end(), s, seq_less);
  if (it != nodes_.end() && *it == s) {
    return static_cast<std::size_t>(it - nodes_.begin());
  }
  return npos;
}

FiniteTree FiniteTree::subtree(std::size_t i) const {
  const Seq& base = nodes_[i];
  std::vector<Seq> out;
  for (const auto& n : nodes_) {
    if (n.size() >= base.size() &&
        std::equal(base.begin(), base.end(), n.begin())) {
      out.emplace_back(n.begin() + static_cast<long>(base.size()), n.end());
    }
  }
  return from_nodes(std::move(out));
}

FiniteTree tree_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree json: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("tree json: expected a list of label arrays");
  std::vector<FiniteTree::Seq> nodes;
  for (const auto& seq : j) {
    if (!seq.is_array()) throw ParseError("tree json: each node is a label array");
    FiniteTree::Seq s;
    for (const auto& l : seq) {
      if (l.is_string()) {
        s.push_back(l.get<std::string>());
      } else if (l.is_number_integer()) {
        s.push_back(std::to_string(l.get<long long>()));
      } else {
        throw ParseError("tree json: labels must be strings or integers");
      }
    }
    nodes.push_back(std::move(s));
  }
  return FiniteTree::from_nodes(std::move(nodes));
}

std::string tree_to_json(const FiniteTree& t) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& n : t.nodes()) j.push_back(n);
  return j.dump();
}

std::vector<HFSet> tree_collapse_all(const FiniteTree& t) {
  std::vector<HFSet> val(t.size());
  // Nodes are sorted shorter-first, so reverse order visits children
  // before parents.
  for (std::size_t i = t.size(); i-- > 0;) {
    std::vector<HFSet> members;
    members.reserve(t.children(i).size());
    for (auto c : t.children(i)) members.push_back(val[c]);
    val[i] = make_set(std::move(members));
  }
  return val;
}

HFSet tree_collapse(const FiniteTree& t) { return tree_collapse_all(t)[0]; }

FiniteTree prefix_tree(const std::string& label, const FiniteTree& t) {
  std::vector<FiniteTree::Seq> nodes;
  nodes.push_back({});
  for (const auto& n : t.nodes()) {
    FiniteTree::Seq s{label};
    s.insert(s.end(), n.begin(), n.end());
    nodes.push_back(std::move(s));
  }
  return FiniteTree::from_nodes(std::move(nodes));
}

FiniteTree merge_trees(const std::vector<FiniteTree>& ts) {
  std::vector<FiniteTree::Seq> nodes;
  for (const auto& t : ts) {
    nodes.insert(nodes.end(), t.nodes().begin(), t.nodes().end());
  }
  return FiniteTree::from_nodes(std::move(nodes));
}

FiniteTree pair_tree(const FiniteTree& t0, const FiniteTree& t1) {
  return merge_trees({prefix_tree("0", t0), prefix_tree("1", t1)});
}

FiniteTree opair_tree(const FiniteTree& t0, const FiniteTree& t1) {
  return pair_tree(pair_tree(t0, t0), pair_tree(t0, t1));
}

}  // namespace collapse
