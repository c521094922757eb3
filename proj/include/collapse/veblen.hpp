#ifndef COLLAPSE_VEBLEN_HPP
#define COLLAPSE_VEBLEN_HPP

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "collapse/hf.hpp"

namespace collapse {

// A quasi linear order: reflexive, transitive, every two elements
// comparable; antisymmetry is not assumed. Elements are opaque strings.
// Finite orders list their elements; lazy orders leave `elements` empty
// and answer through `leq` and `contains` alone.
struct QuasiOrder {
  std::function<bool(const std::string&, const std::string&)> leq;
  std::optional<std::vector<std::string>> elements;
  std::function<bool(const std::string&)> contains;

  bool finite() const { return elements.has_value(); }
  bool has(const std::string& x) const;
};

// The von Neumann ordinal k as an order: elements "0".."k-1" numerically.
QuasiOrder finite_ordinal_order(std::size_t k);
// The naturals with the comparison reversed: "0" on top, no least
// element. Lazy; every decimal numeral is an element.
QuasiOrder reversed_naturals();
// {"elements": [...], "leq": row-major boolean matrix}.
QuasiOrder order_from_json(const std::string& text);
std::string order_to_json(const QuasiOrder& q);
// Reflexivity, transitivity and totality over the given sample (use the
// element list itself for finite orders).
bool check_quasi_linear(const QuasiOrder& q,
                        const std::vector<std::string>& sample);

// Notation terms over a system (alpha, Lambda): 0; phi(alpha, x) for x
// in Lambda, written with the level marker T; phi(beta, t) for beta <
// alpha and t a term; and sums of at least two non-sum terms.
enum class VKind { Zero, PhiTop, PhiLow, Sum };

struct VTerm;
using VTermPtr = std::shared_ptr<const VTerm>;

struct VTerm {
  VKind kind;
  std::string x;               // PhiTop
  std::size_t level = 0;       // PhiLow
  VTermPtr arg;                // PhiLow
  std::vector<VTermPtr> parts; // Sum
};

VTermPtr vzero();
VTermPtr vtop(std::string x);
VTermPtr vlow(std::size_t level, VTermPtr t);
VTermPtr vsum(std::vector<VTermPtr> parts);
bool same_vterm(const VTermPtr& a, const VTermPtr& b);

// Symbol count: 0 and each Lambda element or level weigh one, each phi
// weighs one; sum signs are free. Drives the exhaustive enumerations.
std::size_t vterm_size(const VTermPtr& t);

struct VSystem {
  std::size_t alpha = 0;
  QuasiOrder lambda;
};

// Membership of the term in O(alpha, Lambda); throws UsageError.
void validate_vterm(const VSystem& sys, const VTermPtr& t);

// Grammar: `0 | phi(<level>|T, <arg>) | t + t + ...`; the argument of a
// T-level phi is a quoted element, e.g. phi(T, 'a').
VTermPtr parse_vterm(const std::string& text);
std::string format_vterm(const VTermPtr& t);

// The largest element of Lambda heading a top-level phi anywhere inside
// t, or nothing when no such phi occurs.
std::optional<std::string> h_lambda(const VSystem& sys, const VTermPtr& t);

// The comparison calculus of the notation system, by structural
// recursion over the four rules; vlt and vequiv are the derived strict
// and two-sided forms.
bool vleq(const VSystem& sys, const VTermPtr& t, const VTermPtr& s);
bool vlt(const VSystem& sys, const VTermPtr& t, const VTermPtr& s);
bool vequiv(const VSystem& sys, const VTermPtr& t, const VTermPtr& s);

// Ordinals below Gamma_0 in Veblen normal form: a weakly decreasing sum
// of terms phi(a, b), empty for zero. In normal form b is never a fixed
// point of a higher-level phi, so structural equality is value equality.
struct VNFOrdinal {
  struct Term;
  std::vector<Term> sum;
};
struct VNFOrdinal::Term {
  VNFOrdinal a, b;
};

VNFOrdinal vnf_nat(std::size_t n);
int vnf_compare(const VNFOrdinal& x, const VNFOrdinal& y);
// Left absorbing ordinal addition.
VNFOrdinal vnf_add(const VNFOrdinal& x, const VNFOrdinal& y);
// phi(a, b), normalized: returns b itself when b is already a fixed
// point of level a.
VNFOrdinal vnf_phi(const VNFOrdinal& a, const VNFOrdinal& b);
std::string vnf_to_string(const VNFOrdinal& x);

// Semantic value of a term; requires Lambda to be a finite ordinal
// order so elements read as ordinals.
VNFOrdinal vterm_value(const VSystem& sys, const VTermPtr& t);

// Every zero-summand-free O(0, Lambda) term is equivalent to a unique
// weakly decreasing sum phi(0,l_0)+...+phi(0,l_n); returns the l_i,
// empty for zero. Sums carrying a zero summand are rejected: past the
// front the advancement clause pins such a term strictly between two
// normal forms, so no equivalent exists.
std::vector<std::string> normal_form0(const VSystem& sys, const VTermPtr& t);

// Windowed transfer of descent from O(0, Lambda) to Lambda. The first
// `lookahead` stream terms must be strictly descending (checked). A
// coordinate trace still strictly descending at the window's edge after
// descending at least twice is taken as non-stabilizing and its visible
// descent is returned; otherwise every trace is presumed stabilized and
// the diagonal of the stabilization points is returned. When neither
// yields at least two elements the window was too small.
struct DescentResult {
  bool resolved = false;
  bool via_diagonal = false;
  std::vector<std::string> descent;
};
DescentResult descending_transfer(const VSystem& sys,
                                  const std::vector<VTermPtr>& stream,
                                  std::size_t lookahead);

// All terms of the system with vterm_size <= max_size, smaller sizes
// first, deterministic order within a size. Sum summands range over the
// non-sum, non-zero terms; requires a finite Lambda.
std::vector<VTermPtr> enumerate_vterms(const VSystem& sys,
                                       std::size_t max_size);

// Terms strictly below phi(alpha, x) are exactly the terms over the
// restricted order Lambda-below-x, syntax unchanged. Returns both
// enumerations up to the size bound for comparison.
struct RestrictIso {
  QuasiOrder restricted;
  std::vector<VTermPtr> below;
  std::vector<VTermPtr> over;
};
RestrictIso restrict_iso(const VSystem& sys, const std::string& x,
                         std::size_t max_size);

}  // namespace collapse

#endif
