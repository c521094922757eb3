#include "collapse/bisim.hpp"

#include <algorithm>

#include "json.hpp"

namespace collapse {

NodeRelation relation_from_pairs_json(const std::string& text,
                                      const FiniteTree& t) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("relation json: ") + e.what());
  }
  if (!j.is_array()) throw ParseError("node relation: expected [[i,j],...]");
  NodeRelation b;
  for (const auto& p : j) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_unsigned() ||
        !p[1].is_number_unsigned()) {
      throw ParseError("node relation: each entry is a pair of node indexes");
    }
    std::size_t x = p[0].get<std::size_t>();
    std::size_t y = p[1].get<std::size_t>();
    if (x >= t.size() || y >= t.size()) {
      throw UsageError("node relation: index out of range");
    }
    b.emplace(x, y);
  }
  return b;
}

std::string relation_pairs_to_json(const NodeRelation& b) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [x, y] : b) j.push_back(nlohmann::json::array({x, y}));
  return j.dump();
}

namespace {

bool pair_ok(const FiniteTree& t, const NodeRelation& b, std::size_t s,
             std::size_t u) {
  for (auto cs : t.children(s)) {
    bool matched = false;
    for (auto cu : t.children(u)) {
      if (b.count({cs, cu})) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  for (auto cu : t.children(u)) {
    bool matched = false;
    for (auto cs : t.children(s)) {
      if (b.count({cs, cu})) {
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

}  // namespace

bool is_bisimulation(const FiniteTree& t, const NodeRelation& b) {
  for (const auto& [s, u] : b) {
    if (s >= t.size() || u >= t.size()) return false;
    if (!pair_ok(t, b, s, u)) return false;
  }
  return true;
}

NodeRelation maximal_bisimulation(const FiniteTree& t) {
  NodeRelation b;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (t.terminal(i) == t.terminal(j)) b.emplace(i, j);
    }
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = b.begin(); it != b.end();) {
      if (!pair_ok(t, b, it->first, it->second)) {
        it = b.erase(it);
        changed = true;
      } else {
        ++it;
      }
    }
  }
  return b;
}

NodeRelation collapse_kernel(const FiniteTree& t) {
  auto vals = tree_collapse_all(t);
  NodeRelation b;
  for (std::size_t i = 0; i < t.size(); ++i) {
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (vals[i] == vals[j]) b.emplace(i, j);
    }
  }
  return b;
}

bool trees_equal_star(const FiniteTree& t, const FiniteTree& s) {
  FiniteTree joined = pair_tree(t, s);
  auto b = maximal_bisimulation(joined);
  std::size_t left = joined.index_of({"0"});
  std::size_t right = joined.index_of({"1"});
  return b.count({left, right}) > 0;
}

bool tree_member_star(const FiniteTree& t, const FiniteTree& s) {
  FiniteTree joined = pair_tree(t, s);
  auto b = maximal_bisimulation(joined);
  std::size_t left = joined.index_of({"0"});
  std::size_t right = joined.index_of({"1"});
  for (auto c : joined.children(right)) {
    if (b.count({left, c})) return true;
  }
  return false;
}

}  // namespace collapse
