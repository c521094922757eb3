#include "collapse/formula.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace collapse {

namespace {

FormulaPtr node(FormulaKind k, int i, int j, FormulaPtr a, FormulaPtr b) {
  auto f = std::make_shared<Formula>();
  f->kind = k;
  f->i = i;
  f->j = j;
  f->a = std::move(a);
  f->b = std::move(b);
  return f;
}

void require_var(int v, const char* where) {
  if (v < 0) throw UsageError(std::string("negative variable index in ") + where);
}

}  // namespace

FormulaPtr mk_member(int i, int j) {
  require_var(i, "member");
  require_var(j, "member");
  return node(FormulaKind::Member, i, j, nullptr, nullptr);
}

FormulaPtr mk_equal(int i, int j) {
  require_var(i, "equal");
  require_var(j, "equal");
  return node(FormulaKind::Equal, i, j, nullptr, nullptr);
}

FormulaPtr mk_not(FormulaPtr f) {
  return node(FormulaKind::Not, -1, -1, std::move(f), nullptr);
}

FormulaPtr mk_and(FormulaPtr a, FormulaPtr b) {
  return node(FormulaKind::And, -1, -1, std::move(a), std::move(b));
}

FormulaPtr mk_or(FormulaPtr a, FormulaPtr b) {
  return node(FormulaKind::Or, -1, -1, std::move(a), std::move(b));
}

FormulaPtr mk_exists(int i, FormulaPtr f) {
  require_var(i, "exists");
  return node(FormulaKind::Exists, i, -1, std::move(f), nullptr);
}

FormulaPtr mk_forall(int i, FormulaPtr f) {
  require_var(i, "forall");
  return node(FormulaKind::Forall, i, -1, std::move(f), nullptr);
}

FormulaPtr mk_exists_in(int i, int j, FormulaPtr f) {
  require_var(i, "exists-in");
  require_var(j, "exists-in");
  return node(FormulaKind::ExistsIn, i, j, std::move(f), nullptr);
}

FormulaPtr mk_forall_in(int i, int j, FormulaPtr f) {
  require_var(i, "forall-in");
  require_var(j, "forall-in");
  return node(FormulaKind::ForallIn, i, j, std::move(f), nullptr);
}

namespace {

struct FormulaParser {
  const std::string& text;
  std::size_t pos = 0;

  explicit FormulaParser(const std::string& t) : text(t) {}

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError("formula parse error at offset " + std::to_string(pos) +
                     ": " + msg);
  }

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  std::string symbol() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) fail("expected a symbol");
    return text.substr(start, pos - start);
  }

  int var() {
    std::string s = symbol();
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail("variable index must be a nonnegative integer, got '" + s + "'");
    if (s.size() > 6) fail("variable index too large");
    return std::stoi(s);
  }

  FormulaPtr form() {
    expect('(');
    std::string head = symbol();
    FormulaPtr out;
    if (head == "in") {
      int i = var(), j = var();
      out = mk_member(i, j);
    } else if (head == "eq") {
      int i = var(), j = var();
      out = mk_equal(i, j);
    } else if (head == "not") {
      out = mk_not(form());
    } else if (head == "and") {
      FormulaPtr a = form();
      out = mk_and(std::move(a), form());
    } else if (head == "or") {
      FormulaPtr a = form();
      out = mk_or(std::move(a), form());
    } else if (head == "ex" || head == "all") {
      int i = var();
      skip_ws();
      // Lookahead for the bounded form: "(ex i in j f)".
      if (pos < text.size() && text[pos] != '(') {
        std::size_t mark = pos;
        std::string kw = symbol();
        if (kw != "in") {
          pos = mark;
          fail("expected 'in' or a subformula after the quantified variable");
        }
        int j = var();
        FormulaPtr body = form();
        out = head == "ex" ? mk_exists_in(i, j, std::move(body))
                           : mk_forall_in(i, j, std::move(body));
      } else {
        FormulaPtr body = form();
        out = head == "ex" ? mk_exists(i, std::move(body))
                           : mk_forall(i, std::move(body));
      }
    } else {
      fail("unknown operator '" + head + "'");
    }
    expect(')');
    return out;
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text) {
  FormulaParser p(text);
  FormulaPtr f = p.form();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input after formula");
  return f;
}

std::string format_formula(const FormulaPtr& f) {
  if (!f) throw UsageError("null formula");
  std::ostringstream out;
  switch (f->kind) {
    case FormulaKind::Member:
      out << "(in " << f->i << " " << f->j << ")";
      break;
    case FormulaKind::Equal:
      out << "(eq " << f->i << " " << f->j << ")";
      break;
    case FormulaKind::Not:
      out << "(not " << format_formula(f->a) << ")";
      break;
    case FormulaKind::And:
      out << "(and " << format_formula(f->a) << " " << format_formula(f->b) << ")";
      break;
    case FormulaKind::Or:
      out << "(or " << format_formula(f->a) << " " << format_formula(f->b) << ")";
      break;
    case FormulaKind::Exists:
      out << "(ex " << f->i << " " << format_formula(f->a) << ")";
      break;
    case FormulaKind::Forall:
      out << "(all " << f->i << " " << format_formula(f->a) << ")";
      break;
    case FormulaKind::ExistsIn:
      out << "(ex " << f->i << " in " << f->j << " " << format_formula(f->a) << ")";
      break;
    case FormulaKind::ForallIn:
      out << "(all " << f->i << " in " << f->j << " " << format_formula(f->a) << ")";
      break;
  }
  return out.str();
}

std::size_t formula_size(const FormulaPtr& f) {
  if (!f) throw UsageError("null formula");
  std::size_t n = 1;
  if (f->a) n += formula_size(f->a);
  if (f->b) n += formula_size(f->b);
  return n;
}

namespace {

void free_vars_into(const FormulaPtr& f, std::set<int>& bound, std::set<int>& out) {
  switch (f->kind) {
    case FormulaKind::Member:
    case FormulaKind::Equal:
      if (!bound.count(f->i)) out.insert(f->i);
      if (!bound.count(f->j)) out.insert(f->j);
      break;
    case FormulaKind::Not:
      free_vars_into(f->a, bound, out);
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      free_vars_into(f->a, bound, out);
      free_vars_into(f->b, bound, out);
      break;
    case FormulaKind::ExistsIn:
    case FormulaKind::ForallIn:
      if (!bound.count(f->j)) out.insert(f->j);
      [[fallthrough]];
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool was_bound = bound.count(f->i) > 0;
      bound.insert(f->i);
      free_vars_into(f->a, bound, out);
      if (!was_bound) bound.erase(f->i);
      break;
    }
  }
}

std::set<int> free_vars(const FormulaPtr& f) {
  std::set<int> bound, out;
  free_vars_into(f, bound, out);
  return out;
}

}  // namespace

int max_free_var(const FormulaPtr& f) {
  if (!f) throw UsageError("null formula");
  std::set<int> fv = free_vars(f);
  return fv.empty() ? -1 : *fv.rbegin();
}

bool is_nnf(const FormulaPtr& f) {
  if (!f) throw UsageError("null formula");
  switch (f->kind) {
    case FormulaKind::Member:
    case FormulaKind::Equal:
      return true;
    case FormulaKind::Not:
      return f->a->kind == FormulaKind::Member || f->a->kind == FormulaKind::Equal;
    case FormulaKind::And:
    case FormulaKind::Or:
      return is_nnf(f->a) && is_nnf(f->b);
    case FormulaKind::Exists:
    case FormulaKind::Forall:
    case FormulaKind::ExistsIn:
    case FormulaKind::ForallIn:
      return is_nnf(f->a);
  }
  return false;
}

namespace {

FormulaPtr nnf(const FormulaPtr& f, bool negated) {
  switch (f->kind) {
    case FormulaKind::Member:
    case FormulaKind::Equal: {
      FormulaPtr atom = node(f->kind, f->i, f->j, nullptr, nullptr);
      return negated ? mk_not(atom) : atom;
    }
    case FormulaKind::Not:
      return nnf(f->a, !negated);
    case FormulaKind::And: {
      FormulaPtr a = nnf(f->a, negated), b = nnf(f->b, negated);
      return negated ? mk_or(a, b) : mk_and(a, b);
    }
    case FormulaKind::Or: {
      FormulaPtr a = nnf(f->a, negated), b = nnf(f->b, negated);
      return negated ? mk_and(a, b) : mk_or(a, b);
    }
    case FormulaKind::Exists: {
      FormulaPtr a = nnf(f->a, negated);
      return negated ? mk_forall(f->i, a) : mk_exists(f->i, a);
    }
    case FormulaKind::Forall: {
      FormulaPtr a = nnf(f->a, negated);
      return negated ? mk_exists(f->i, a) : mk_forall(f->i, a);
    }
    case FormulaKind::ExistsIn: {
      FormulaPtr a = nnf(f->a, negated);
      return negated ? mk_forall_in(f->i, f->j, a) : mk_exists_in(f->i, f->j, a);
    }
    case FormulaKind::ForallIn: {
      FormulaPtr a = nnf(f->a, negated);
      return negated ? mk_exists_in(f->i, f->j, a) : mk_forall_in(f->i, f->j, a);
    }
  }
  throw UsageError("unreachable formula kind");
}

}  // namespace

FormulaPtr to_nnf(const FormulaPtr& f) {
  if (!f) throw UsageError("null formula");
  return nnf(f, false);
}

namespace {

bool eval_rec(const std::vector<HFSet>& carrier, const FormulaPtr& f,
              std::vector<HFSet>& env) {
  auto value = [&](int v) -> const HFSet& {
    if (v < 0 || static_cast<std::size_t>(v) >= env.size())
      throw DomainError("assignment does not cover variable " + std::to_string(v));
    return env[static_cast<std::size_t>(v)];
  };
  switch (f->kind) {
    case FormulaKind::Member:
      return value(f->j).contains(value(f->i));
    case FormulaKind::Equal:
      return value(f->i) == value(f->j);
    case FormulaKind::Not:
      return !eval_rec(carrier, f->a, env);
    case FormulaKind::And:
      return eval_rec(carrier, f->a, env) && eval_rec(carrier, f->b, env);
    case FormulaKind::Or:
      return eval_rec(carrier, f->a, env) || eval_rec(carrier, f->b, env);
    case FormulaKind::Exists:
    case FormulaKind::Forall: {
      bool is_ex = f->kind == FormulaKind::Exists;
      std::size_t slot = static_cast<std::size_t>(f->i);
      if (env.size() <= slot) env.resize(slot + 1, HFSet());
      HFSet saved = env[slot];
      bool out = !is_ex;
      for (const HFSet& e : carrier) {
        env[slot] = e;
        bool v = eval_rec(carrier, f->a, env);
        if (v == is_ex) {
          out = is_ex;
          break;
        }
      }
      env[slot] = saved;
      return out;
    }
    case FormulaKind::ExistsIn:
    case FormulaKind::ForallIn: {
      bool is_ex = f->kind == FormulaKind::ExistsIn;
      HFSet range = value(f->j);
      std::size_t slot = static_cast<std::size_t>(f->i);
      if (env.size() <= slot) env.resize(slot + 1, HFSet());
      HFSet saved = env[slot];
      bool out = !is_ex;
      for (const HFSet& e : range.elems()) {
        env[slot] = e;
        bool v = eval_rec(carrier, f->a, env);
        if (v == is_ex) {
          out = is_ex;
          break;
        }
      }
      env[slot] = saved;
      return out;
    }
  }
  throw UsageError("unreachable formula kind");
}

}  // namespace

bool eval_formula(const HFSet& a, const FormulaPtr& f,
                  const std::vector<HFSet>& assignment) {
  if (!f) throw UsageError("null formula");
  int mfv = max_free_var(f);
  if (mfv >= 0 && static_cast<std::size_t>(mfv) >= assignment.size())
    throw DomainError("assignment of length " + std::to_string(assignment.size()) +
                      " does not cover free variable " + std::to_string(mfv));
  std::vector<HFSet> env = assignment;
  return eval_rec(a.elems(), f, env);
}

namespace {

// Enumeration in canonical numbering: at any point during a left-to-right
// traversal, a variable position may reuse any index already seen or
// introduce the next fresh one. Binders count as occurrences. Results of
// gen(s, used) carry the seen-count after the subformula so that sibling
// subformulas continue the numbering.
struct GenEntry {
  FormulaPtr f;
  int used_after;
};

using GenKey = std::pair<std::size_t, int>;

const std::vector<GenEntry>& gen(std::size_t size, int used, bool with_eq,
                                 std::map<GenKey, std::vector<GenEntry>>& memo,
                                 std::map<GenKey, std::vector<GenEntry>>& memo_ne) {
  auto& table = with_eq ? memo : memo_ne;
  auto it = table.find({size, used});
  if (it != table.end()) return it->second;
  std::vector<GenEntry> out;
  if (size == 1) {
    for (int i = 0; i <= used; ++i) {
      int u1 = std::max(used, i + 1);
      for (int j = 0; j <= u1; ++j) {
        int u2 = std::max(u1, j + 1);
        out.push_back({mk_member(i, j), u2});
        if (with_eq) out.push_back({mk_equal(i, j), u2});
      }
    }
  } else {
    // not
    for (const GenEntry& e : gen(size - 1, used, with_eq, memo, memo_ne))
      out.push_back({mk_not(e.f), e.used_after});
    // and / or
    for (std::size_t sa = 1; sa + 1 < size; ++sa) {
      std::size_t sb = size - 1 - sa;
      for (const GenEntry& ea : gen(sa, used, with_eq, memo, memo_ne))
        for (const GenEntry& eb : gen(sb, ea.used_after, with_eq, memo, memo_ne)) {
          out.push_back({mk_and(ea.f, eb.f), eb.used_after});
          out.push_back({mk_or(ea.f, eb.f), eb.used_after});
        }
    }
    // ex / all
    for (int v = 0; v <= used; ++v) {
      int u1 = std::max(used, v + 1);
      for (const GenEntry& e : gen(size - 1, u1, with_eq, memo, memo_ne)) {
        out.push_back({mk_exists(v, e.f), e.used_after});
        out.push_back({mk_forall(v, e.f), e.used_after});
      }
    }
  }
  return table.emplace(GenKey{size, used}, std::move(out)).first->second;
}

std::vector<FormulaPtr> enumerate_impl(std::size_t max_size, bool with_eq) {
  if (max_size > 9)
    throw SizeLimitError("formula enumeration bound " + std::to_string(max_size) +
                         " exceeds the supported maximum 9");
  std::map<GenKey, std::vector<GenEntry>> memo, memo_ne;
  std::vector<FormulaPtr> out;
  for (std::size_t s = 1; s <= max_size; ++s)
    for (const GenEntry& e : gen(s, 0, with_eq, memo, memo_ne))
      out.push_back(e.f);
  return out;
}

}  // namespace

std::vector<FormulaPtr> enumerate_formulas(std::size_t max_size) {
  return enumerate_impl(max_size, true);
}

std::vector<FormulaPtr> enumerate_formulas_no_eq(std::size_t max_size) {
  return enumerate_impl(max_size, false);
}

std::vector<TheoryEntry> theory(const HFSet& a, std::size_t max_size) {
  std::vector<TheoryEntry> out;
  const std::vector<HFSet>& elems = a.elems();
  for (const FormulaPtr& f : enumerate_formulas(max_size)) {
    std::set<int> fv = free_vars(f);
    std::vector<int> vars(fv.begin(), fv.end());
    std::size_t len = vars.empty() ? 0 : static_cast<std::size_t>(vars.back()) + 1;
    std::vector<HFSet> assignment(len, HFSet());
    if (vars.empty()) {
      if (eval_formula(a, f, assignment)) out.push_back({f, assignment});
      continue;
    }
    if (elems.empty()) continue;
    // Odometer over assignments of the free variables into a, in carrier
    // order, last variable fastest.
    std::vector<std::size_t> idx(vars.size(), 0);
    bool exhausted = false;
    while (!exhausted) {
      for (std::size_t k = 0; k < vars.size(); ++k)
        assignment[static_cast<std::size_t>(vars[k])] = elems[idx[k]];
      if (eval_formula(a, f, assignment)) out.push_back({f, assignment});
      std::size_t k = vars.size();
      while (true) {
        if (k == 0) {
          exhausted = true;
          break;
        }
        --k;
        if (++idx[k] < elems.size()) break;
        idx[k] = 0;
      }
    }
  }
  return out;
}

FormulaPtr equality_as_abbreviation(int i, int j, int fresh) {
  if (fresh == i || fresh == j)
    throw UsageError("fresh variable collides with an equality argument");
  FormulaPtr both = mk_and(mk_or(mk_not(mk_member(fresh, i)), mk_member(fresh, j)),
                           mk_or(mk_not(mk_member(fresh, j)), mk_member(fresh, i)));
  return mk_forall(fresh, both);
}

}  // namespace collapse
