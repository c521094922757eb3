#ifndef COLLAPSE_HF_HPP
#define COLLAPSE_HF_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace collapse {

// Error taxonomy shared by all modules. The CLI maps UsageError to exit
// code 2 and DomainError (including size limits) to exit code 1.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string& what) : Error(what) {}
};

class ParseError : public UsageError {
 public:
  explicit ParseError(const std::string& what) : UsageError(what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

class SizeLimitError : public DomainError {
 public:
  explicit SizeLimitError(const std::string& what) : DomainError(what) {}
};

// Canonical hereditarily finite sets, hash-consed in a process-wide store.
// Equal sets always receive the same handle, so extensional equality is
// handle equality. Handles are trivially copyable and never dangle; the
// store only grows (up to the configurable node ceiling).
class HFSet {
 public:
  // The empty set.
  HFSet();

  bool operator==(const HFSet& o) const { return id_ == o.id_; }
  bool operator!=(const HFSet& o) const { return id_ != o.id_; }
  // Canonical structural order: by rank, then cardinality, then
  // lexicographically on the ordered element lists. Used for element
  // ordering inside sets and for all serialized output.
  bool operator<(const HFSet& o) const;

  std::size_t card() const;
  std::uint32_t rank() const;
  bool empty() const { return card() == 0; }
  // Elements in canonical order.
  const std::vector<HFSet>& elems() const;
  bool contains(const HFSet& x) const;

  // Stable id within this process; exposed for hashing.
  std::uint32_t id() const { return id_; }

 private:
  friend HFSet make_set(std::vector<HFSet> elems);
  explicit HFSet(std::uint32_t id) : id_(id) {}
  std::uint32_t id_;
};

// Three-way canonical comparison, negative/zero/positive.
int hf_compare(const HFSet& a, const HFSet& b);

// Builds the set with the given elements (order and duplicates ignored).
HFSet make_set(std::vector<HFSet> elems);

HFSet adjoin(const HFSet& a, const HFSet& x);     // a together with {x}
HFSet set_union(const HFSet& a, const HFSet& b);
HFSet set_union_all(const HFSet& a);              // union of the members
HFSet set_intersection(const HFSet& a, const HFSet& b);
HFSet set_difference(const HFSet& a, const HFSet& b);
HFSet singleton(const HFSet& x);
HFSet pair_set(const HFSet& x, const HFSet& y);   // {x, y}

// Kuratowski pair {{x},{x,y}} and its decoding. decode returns nothing if
// the set is not a pair.
HFSet kuratowski(const HFSet& x, const HFSet& y);
std::optional<std::pair<HFSet, HFSet>> kuratowski_decode(const HFSet& p);
bool is_kuratowski_pair(const HFSet& p);

// Right-nested tuple <x0,...,xn> = <x0,<x1,...>>; a single element is
// itself, and the empty tuple is the empty set.
HFSet tuple(const std::vector<HFSet>& xs);

// Members of a, their members, and so on; the result is transitive.
HFSet transitive_closure(const HFSet& a);

// Von Neumann natural n.
HFSet von_neumann(std::size_t n);
// Inverse of von_neumann when defined.
std::optional<std::size_t> as_von_neumann(const HFSet& x);

// All subsets. Guarded: refuses |a| > 20.
HFSet finite_powerset(const HFSet& a);

// n-fold powerset of the empty set. Guarded: refuses n > bound (default 5).
HFSet v_level(std::size_t n, std::size_t bound = 5);

// Set-theoretic rank (depth of nesting).
std::uint32_t hf_rank(const HFSet& x);

// Store introspection and the node ceiling (default 10^6 distinct sets).
std::size_t hf_store_size();
std::size_t hf_node_limit();
void set_hf_node_limit(std::size_t limit);

// Concrete syntax: "{}" is empty, "{a b c}" lists elements, "#n" is the
// von Neumann natural n. Formatting always uses canonical element order
// and plain braces.
std::string format_hf(const HFSet& x);
HFSet parse_hf(const std::string& text);

// JSON rendition: nested arrays in canonical order.
std::string hf_to_json(const HFSet& x);

}  // namespace collapse

#endif
