#ifndef COLLAPSE_FORMULA_HPP
#define COLLAPSE_FORMULA_HPP

#include <memory>
#include <string>
#include <vector>

#include "collapse/hf.hpp"

namespace collapse {

// First-order formulas over membership and equality with numbered
// variables. Quantifiers come in two forms: plain (ranging over the
// structure's carrier) and bounded (ranging over the members of the
// value of another variable). The bounded forms extend the base grammar;
// everything else matches it.
enum class FormulaKind {
  Member,    // x_i in x_j
  Equal,     // x_i = x_j
  Not,
  And,
  Or,
  Exists,    // (ex i f)
  Forall,    // (all i f)
  ExistsIn,  // (ex i in j f)
  ForallIn,  // (all i in j f)
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind;
  int i = -1;  // atom left variable, or the quantified variable
  int j = -1;  // atom right variable, or the quantifier bound variable
  FormulaPtr a;  // first operand
  FormulaPtr b;  // second operand
};

FormulaPtr mk_member(int i, int j);
FormulaPtr mk_equal(int i, int j);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_or(FormulaPtr a, FormulaPtr b);
FormulaPtr mk_exists(int i, FormulaPtr f);
FormulaPtr mk_forall(int i, FormulaPtr f);
FormulaPtr mk_exists_in(int i, int j, FormulaPtr f);
FormulaPtr mk_forall_in(int i, int j, FormulaPtr f);

// S-expression syntax: (in i j), (eq i j), (not f), (and f g), (or f g),
// (ex i f), (all i f), (ex i in j f), (all i in j f).
FormulaPtr parse_formula(const std::string& text);
std::string format_formula(const FormulaPtr& f);

std::size_t formula_size(const FormulaPtr& f);
// Largest free variable index, or -1 if the formula is closed.
int max_free_var(const FormulaPtr& f);
// Not appears only directly above atoms.
bool is_nnf(const FormulaPtr& f);
FormulaPtr to_nnf(const FormulaPtr& f);

// Tarski evaluation over the structure (a, membership). Plain
// quantifiers range over the elements of a; atoms are absolute, so
// assignment values outside a are fine. The assignment must cover every
// free variable.
bool eval_formula(const HFSet& a, const FormulaPtr& f,
                  const std::vector<HFSet>& assignment);

// All formulas of AST size <= max_size in canonical variable numbering
// (variables renumbered by first occurrence, binders included), using
// only the base grammar (plain quantifiers). Deterministic order: by
// size, then by construction order.
std::vector<FormulaPtr> enumerate_formulas(std::size_t max_size);

// As above but atoms use membership only; used where equality is treated
// as an abbreviation.
std::vector<FormulaPtr> enumerate_formulas_no_eq(std::size_t max_size);

// The finite theory of (a, membership): every pair of an enumerated
// formula and an assignment of its free variables into a that holds.
struct TheoryEntry {
  FormulaPtr formula;
  std::vector<HFSet> assignment;
};
std::vector<TheoryEntry> theory(const HFSet& a, std::size_t max_size);

// Equality written out as extensionality relative to the structure:
// forall z (z in x_i <-> z in x_j), with z fresh.
FormulaPtr equality_as_abbreviation(int i, int j, int fresh);

}  // namespace collapse

#endif
