#include "collapse/relation.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_map>

#include "json.hpp"

namespace collapse {

namespace {

using Index = std::unordered_map<std::string, std::size_t>;

Index index_of(const CarrierRelation& r) {
  Index idx;
  for (std::size_t i = 0; i < r.carrier.size(); ++i) idx[r.carrier[i]] = i;
  return idx;
}

// below[u] lists the indexes directly below u.
std::vector<std::vector<std::size_t>> below_lists(const CarrierRelation& r,
                                                  const Index& idx) {
  std::vector<std::vector<std::size_t>> below(r.carrier.size());
  for (const auto& [v, u] : r.edges) {
    below[idx.at(u)].push_back(idx.at(v));
  }
  for (auto& bs : below) {
    std::sort(bs.begin(), bs.end());
    bs.erase(std::unique(bs.begin(), bs.end()), bs.end());
  }
  return below;
}

}  // namespace

CarrierRelation make_relation(
    std::vector<std::string> carrier,
    std::vector<std::pair<std::string, std::string>> edges) {
  std::set<std::string> seen;
  for (const auto& c : carrier) {
    if (!seen.insert(c).second) {
      throw UsageError("duplicate carrier label: " + c);
    }
  }
  for (const auto& [v, u] : edges) {
    if (!seen.count(v) || !seen.count(u)) {
      throw UsageError("edge endpoint outside carrier: [" + v + ", " + u + "]");
    }
  }
  return CarrierRelation{std::move(carrier), std::move(edges)};
}

CarrierRelation relation_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("relation json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("carrier") || !j.contains("edges")) {
    throw ParseError("relation json: expected {\"carrier\":[...],\"edges\":[...]}");
  }
  auto label_of = [](const nlohmann::json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw ParseError("relation json: labels must be strings or integers");
  };
  std::vector<std::string> carrier;
  for (const auto& c : j["carrier"]) carrier.push_back(label_of(c));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j["edges"]) {
    if (!e.is_array() || e.size() != 2) {
      throw ParseError("relation json: each edge must be a [below, above] pair");
    }
    edges.emplace_back(label_of(e[0]), label_of(e[1]));
  }
  return make_relation(std::move(carrier), std::move(edges));
}

std::string relation_to_json(const CarrierRelation& r) {
  nlohmann::json j;
  j["carrier"] = r.carrier;
  j["edges"] = nlohmann::json::array();
  for (const auto& [v, u] : r.edges) {
    j["edges"].push_back(nlohmann::json::array({v, u}));
  }
  return j.dump();
}

bool is_well_founded(const CarrierRelation& r) { return least_cycle(r).empty(); }

std::vector<std::string> least_cycle(const CarrierRelation& r) {
  Index idx = index_of(r);
  auto below = below_lists(r, idx);
  std::size_t n = r.carrier.size();

  // Sorted label order drives determinism.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.carrier[a] < r.carrier[b];
  });

  std::vector<std::vector<std::size_t>> above(n);
  for (std::size_t u = 0; u < n; ++u) {
    for (auto v : below[u]) above[v].push_back(u);
  }

  std::vector<std::string> best;
  for (auto s : order) {
    // Shortest path s -> s following "above" steps gives a cycle
    // s, u1, ..., uk with each step one edge.
    std::vector<int> prev(n, -1);
    std::vector<int> dist(n, -1);
    std::deque<std::size_t> q{s};
    dist[s] = 0;
    bool found = false;
    while (!q.empty() && !found) {
      std::size_t x = q.front();
      q.pop_front();
      for (auto y : above[x]) {
        if (y == s) {
          // Reconstruct the cycle through x: the prev chain runs back to
          // s, so the reversed path starts at s and the closing step
          // repeats it at the end.
          std::vector<std::string> cyc;
          for (int c = static_cast<int>(x); c != -1; c = prev[c]) {
            cyc.push_back(r.carrier[c]);
          }
          std::reverse(cyc.begin(), cyc.end());
          cyc.push_back(r.carrier[s]);
          if (best.empty() || cyc.size() < best.size() ||
              (cyc.size() == best.size() && cyc < best)) {
            best = cyc;
          }
          found = true;
          break;
        }
        if (dist[y] == -1) {
          dist[y] = dist[x] + 1;
          prev[y] = static_cast<int>(x);
          q.push_back(y);
        }
      }
    }
  }
  return best;
}

std::vector<std::pair<std::string, HFSet>> collapse_relation(
    const CarrierRelation& r) {
  auto cyc = least_cycle(r);
  if (!cyc.empty()) {
    std::string w;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      if (i) w += " -> ";
      w += cyc[i];
    }
    throw DomainError("relation is not well founded; cycle: " + w);
  }

  Index idx = index_of(r);
  auto below = below_lists(r, idx);
  std::size_t n = r.carrier.size();

  // Kahn order over the dependency "u needs everything below it first".
  std::vector<std::size_t> pending(n, 0);
  std::vector<std::vector<std::size_t>> above(n);
  for (std::size_t u = 0; u < n; ++u) {
    pending[u] = below[u].size();
    for (auto v : below[u]) above[v].push_back(u);
  }
  std::deque<std::size_t> ready;
  for (std::size_t u = 0; u < n; ++u) {
    if (pending[u] == 0) ready.push_back(u);
  }
  std::vector<HFSet> pi(n);
  std::size_t done = 0;
  while (!ready.empty()) {
    std::size_t u = ready.front();
    ready.pop_front();
    std::vector<HFSet> members;
    members.reserve(below[u].size());
    for (auto v : below[u]) members.push_back(pi[v]);
    pi[u] = make_set(std::move(members));
    ++done;
    for (auto w : above[u]) {
      if (--pending[w] == 0) ready.push_back(w);
    }
  }
  if (done != n) {
    throw DomainError("relation is not well founded");
  }
  std::vector<std::pair<std::string, HFSet>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(r.carrier[i], pi[i]);
  return out;
}

namespace {

std::string triple_label(std::size_t c, std::size_t n, std::size_t m) {
  return std::to_string(c) + "," + std::to_string(n) + "," + std::to_string(m);
}

}  // namespace

CarrierRelation addition_relation(std::size_t k) {
  std::vector<std::string> carrier;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t c = 0; c < 8; ++c) {
    for (std::size_t n = 0; n < k; ++n) {
      for (std::size_t m = 0; m < k; ++m) {
        carrier.push_back(triple_label(c, n, m));
      }
    }
  }
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t m = 0; m < k; ++m) {
      edges.emplace_back(triple_label(1, n, m), triple_label(0, 0, 0));
      edges.emplace_back(triple_label(2, n, m), triple_label(1, n, m));
      edges.emplace_back(triple_label(3, n, m), triple_label(1, n, m));
      edges.emplace_back(triple_label(4, n, m), triple_label(2, n, m));
      edges.emplace_back(triple_label(4, n, m), triple_label(3, n, m));
      edges.emplace_back(triple_label(7, n, m), triple_label(3, n, m));
      edges.emplace_back(triple_label(5, n, 0), triple_label(4, n, m));
      edges.emplace_back(triple_label(6, n, m), triple_label(4, n, m));
      edges.emplace_back(triple_label(7, n, 0), triple_label(6, n, m));
      edges.emplace_back(triple_label(7, m, 0), triple_label(6, n, m));
      for (std::size_t i = 0; i < n; ++i) {
        edges.emplace_back(triple_label(7, i, 0), triple_label(7, n, m));
      }
      for (std::size_t j = 0; j < m; ++j) {
        edges.emplace_back(triple_label(7, n, j), triple_label(7, n, m));
      }
    }
    edges.emplace_back(triple_label(7, n, 0), triple_label(5, n, 0));
  }
  return make_relation(std::move(carrier), std::move(edges));
}

HFSet addition_graph_via_collapse(std::size_t k) {
  if (k == 0) return HFSet();
  auto pi = collapse_relation(addition_relation(k));
  std::unordered_map<std::string, HFSet> m;
  for (auto& [l, s] : pi) m.emplace(l, s);
  return m.at(triple_label(0, 0, 0));
}

HFSet addition_graph_direct(std::size_t k) {
  std::vector<HFSet> entries;
  for (std::size_t n = 0; n < k; ++n) {
    for (std::size_t m = 0; m < k; ++m) {
      entries.push_back(kuratowski(kuratowski(von_neumann(n), von_neumann(m)),
                                   von_neumann(n + m)));
    }
  }
  return make_set(std::move(entries));
}

CarrierRelation ackermann_relation(std::size_t bits) {
  if (bits > 6) {
    throw SizeLimitError("ackermann relation refused for bits > 6");
  }
  std::size_t n = std::size_t{1} << bits;
  std::vector<std::string> carrier;
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t j = 0; j < n; ++j) carrier.push_back(std::to_string(j));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < bits; ++i) {
      if (j & (std::size_t{1} << i)) {
        edges.emplace_back(std::to_string(i), std::to_string(j));
      }
    }
  }
  return make_relation(std::move(carrier), std::move(edges));
}

HFSet ackermann_collapse_image(std::size_t bits) {
  auto pi = collapse_relation(ackermann_relation(bits));
  std::vector<HFSet> image;
  image.reserve(pi.size());
  for (auto& [l, s] : pi) image.push_back(s);
  return make_set(std::move(image));
}

}  // namespace collapse
