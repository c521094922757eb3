#include "collapse/hf.hpp"

#include <algorithm>
#include <cstddef>
#include <deque>
#include <mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace collapse {

namespace {

struct Node {
  std::vector<HFSet> elems;  // canonical order
  std::uint32_t rank;
};

struct KeyHash {
  std::size_t operator()(const std::vector<std::uint32_t>& key) const {
    std::size_t h = 0x9e3779b97f4a7c15ull;
    for (auto id : key) {
      h ^= id + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Append-only store. The deque keeps node references stable, so reads
// need no lock once an id has been handed out; the mutex makes
// insert-or-get linearizable.
struct Store {
  std::deque<Node> nodes;
  std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, KeyHash> index;
  std::mutex mu;
  std::size_t limit = 1000000;

  Store() {
    nodes.push_back(Node{{}, 0});
    index.emplace(std::vector<std::uint32_t>{}, 0);
  }
};

Store& store() {
  static Store* s = new Store();  // intentionally leaked, handles never dangle
  return *s;
}

const Node& node(std::uint32_t id) { return store().nodes[id]; }

}  // namespace

HFSet::HFSet() : id_(0) {}

std::size_t HFSet::card() const { return node(id_).elems.size(); }

std::uint32_t HFSet::rank() const { return node(id_).rank; }

const std::vector<HFSet>& HFSet::elems() const { return node(id_).elems; }

int hf_compare(const HFSet& a, const HFSet& b) {
  if (a.id() == b.id()) return 0;
  if (a.rank() != b.rank()) return a.rank() < b.rank() ? -1 : 1;
  if (a.card() != b.card()) return a.card() < b.card() ? -1 : 1;
  const auto& xs = a.elems();
  const auto& ys = b.elems();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    int c = hf_compare(xs[i], ys[i]);
    if (c != 0) return c;
  }
  return 0;
}

bool HFSet::operator<(const HFSet& o) const { return hf_compare(*this, o) < 0; }

bool HFSet::contains(const HFSet& x) const {
  const auto& xs = elems();
  // Elements are sorted canonically; binary search by structural order.
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  return it != xs.end() && *it == x;
}

HFSet make_set(std::vector<HFSet> elems) {
  std::sort(elems.begin(), elems.end(),
            [](const HFSet& a, const HFSet& b) { return hf_compare(a, b) < 0; });
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

  std::vector<std::uint32_t> key;
  key.reserve(elems.size());
  std::uint32_t rank = 0;
  for (const auto& e : elems) {
    key.push_back(e.id());
    rank = std::max(rank, e.rank() + 1);
  }

  Store& s = store();
  std::lock_guard<std::mutex> lock(s.mu);
  auto it = s.index.find(key);
  if (it != s.index.end()) return HFSet(it->second);
  if (s.nodes.size() >= s.limit) {
    throw SizeLimitError("hf store ceiling reached (" +
                         std::to_string(s.limit) + " nodes)");
  }
  auto id = static_cast<std::uint32_t>(s.nodes.size());
  s.nodes.push_back(Node{std::move(elems), rank});
  s.index.emplace(std::move(key), id);
  return HFSet(id);
}

HFSet adjoin(const HFSet& a, const HFSet& x) {
  if (a.contains(x)) return a;
  std::vector<HFSet> es = a.elems();
  es.push_back(x);
  return make_set(std::move(es));
}

HFSet set_union(const HFSet& a, const HFSet& b) {
  if (a == b || b.empty()) return a;
  if (a.empty()) return b;
  std::vector<HFSet> es = a.elems();
  const auto& bs = b.elems();
  es.insert(es.end(), bs.begin(), bs.end());
  return make_set(std::move(es));
}

HFSet set_union_all(const HFSet& a) {
  std::vector<HFSet> es;
  for (const auto& m : a.elems()) {
    const auto& ms = m.elems();
    es.insert(es.end(), ms.begin(), ms.end());
  }
  return make_set(std::move(es));
}

HFSet set_intersection(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> es;
  for (const auto& e : a.elems()) {
    if (b.contains(e)) es.push_back(e);
  }
  return make_set(std::move(es));
}

HFSet set_difference(const HFSet& a, const HFSet& b) {
  std::vector<HFSet> es;
  for (const auto& e : a.elems()) {
    if (!b.contains(e)) es.push_back(e);
  }
  return make_set(std::move(es));
}

HFSet singleton(const HFSet& x) { return make_set({x}); }

HFSet pair_set(const HFSet& x, const HFSet& y) { return make_set({x, y}); }

HFSet kuratowski(const HFSet& x, const HFSet& y) {
  return pair_set(singleton(x), pair_set(x, y));
}

std::optional<std::pair<HFSet, HFSet>> kuratowski_decode(const HFSet& p) {
  const auto& ms = p.elems();
  if (ms.size() == 1) {
    // {{x}} encodes <x,x>.
    if (ms[0].card() != 1) return std::nullopt;
    HFSet x = ms[0].elems()[0];
    return std::make_pair(x, x);
  }
  if (ms.size() != 2) return std::nullopt;
  // Canonical order puts the singleton {x} before {x,y} (smaller card).
  const HFSet& a = ms[0];
  const HFSet& b = ms[1];
  if (a.card() != 1 || b.card() != 2) return std::nullopt;
  HFSet x = a.elems()[0];
  if (!b.contains(x)) return std::nullopt;
  HFSet y = b.elems()[0] == x ? b.elems()[1] : b.elems()[0];
  return std::make_pair(x, y);
}

bool is_kuratowski_pair(const HFSet& p) {
  return kuratowski_decode(p).has_value();
}

HFSet tuple(const std::vector<HFSet>& xs) {
  if (xs.empty()) return HFSet();
  HFSet acc = xs.back();
  for (std::size_t i = xs.size() - 1; i-- > 0;) {
    acc = kuratowski(xs[i], acc);
  }
  return acc;
}

HFSet transitive_closure(const HFSet& a) {
  // The membership graph shares substructure aggressively; without the
  // visited filter this walk is exponential on chains of shared nodes.
  std::vector<HFSet> acc;
  std::vector<HFSet> work = a.elems();
  std::unordered_set<std::uint32_t> seen;
  while (!work.empty()) {
    HFSet x = work.back();
    work.pop_back();
    if (!seen.insert(x.id()).second) continue;
    acc.push_back(x);
    for (const auto& m : x.elems()) work.push_back(m);
  }
  return make_set(std::move(acc));
}

HFSet von_neumann(std::size_t n) {
  HFSet acc;
  for (std::size_t i = 0; i < n; ++i) acc = adjoin(acc, acc);
  return acc;
}

std::optional<std::size_t> as_von_neumann(const HFSet& x) {
  // n's elements are exactly 0..n-1, which in canonical order are the
  // sets of rank 0..n-1; checking ranks suffices once each element is
  // itself von Neumann shaped, which the recursion below confirms by
  // comparing against a rebuilt ordinal.
  std::size_t n = x.card();
  if (x != von_neumann(n)) return std::nullopt;
  return n;
}

HFSet finite_powerset(const HFSet& a) {
  const auto& es = a.elems();
  if (es.size() > 20) {
    throw SizeLimitError("powerset refused for cardinality " +
                         std::to_string(es.size()));
  }
  std::vector<HFSet> subsets{HFSet()};
  for (const auto& e : es) {
    std::size_t n = subsets.size();
    for (std::size_t i = 0; i < n; ++i) {
      subsets.push_back(adjoin(subsets[i], e));
    }
  }
  return make_set(std::move(subsets));
}

HFSet v_level(std::size_t n, std::size_t bound) {
  if (n > bound) {
    throw SizeLimitError("v_level bound exceeded: " + std::to_string(n) +
                         " > " + std::to_string(bound));
  }
  HFSet acc;
  for (std::size_t i = 0; i < n; ++i) acc = finite_powerset(acc);
  return acc;
}

std::uint32_t hf_rank(const HFSet& x) { return x.rank(); }

std::size_t hf_store_size() { return store().nodes.size(); }

std::size_t hf_node_limit() { return store().limit; }

void set_hf_node_limit(std::size_t limit) {
  Store& s = store();
  std::lock_guard<std::mutex> lock(s.mu);
  s.limit = limit;
}

namespace {

void format_rec(const HFSet& x, std::string& out) {
  out.push_back('{');
  const auto& es = x.elems();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0) out.push_back(' ');
    format_rec(es[i], out);
  }
  out.push_back('}');
}

struct Parser {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' ||
            text[pos] == '\r')) {
      ++pos;
    }
  }

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("hf syntax error at offset " + std::to_string(pos) +
                     ": " + msg);
  }

  HFSet parse_set() {
    skip_ws();
    if (pos >= text.size()) fail("unexpected end of input");
    char c = text[pos];
    if (c == '#') {
      ++pos;
      if (pos >= text.size() || !isdigit(static_cast<unsigned char>(text[pos])))
        fail("expected digits after '#'");
      std::size_t n = 0;
      while (pos < text.size() &&
             isdigit(static_cast<unsigned char>(text[pos]))) {
        n = n * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (n > 100000) fail("von Neumann index too large");
        ++pos;
      }
      return von_neumann(n);
    }
    if (c != '{') fail(std::string("expected '{' or '#', got '") + c + "'");
    ++pos;
    std::vector<HFSet> es;
    while (true) {
      skip_ws();
      if (pos >= text.size()) fail("unterminated set");
      if (text[pos] == '}') {
        ++pos;
        return make_set(std::move(es));
      }
      es.push_back(parse_set());
    }
  }
};

}  // namespace

std::string format_hf(const HFSet& x) {
  std::string out;
  format_rec(x, out);
  return out;
}

HFSet parse_hf(const std::string& text) {
  Parser p{text};
  HFSet r = p.parse_set();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

std::string hf_to_json(const HFSet& x) {
  std::string out;
  out.push_back('[');
  const auto& es = x.elems();
  for (std::size_t i = 0; i < es.size(); ++i) {
    if (i > 0) out.push_back(',');
    out += hf_to_json(es[i]);
  }
  out.push_back(']');
  return out;
}

}  // namespace collapse
