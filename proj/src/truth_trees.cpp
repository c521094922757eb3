#include "collapse/truth_trees.hpp"

#include <map>
#include <utility>

namespace collapse {
namespace {

using Seq = FiniteTree::Seq;

// Budget on the total label count across emitted sequences; bounds both
// node count and memory.
constexpr std::size_t kWeightBudget = 4000000;

struct Emitter {
  std::vector<Seq> nodes;
  std::size_t weight = 0;
  void push(Seq s) {
    weight += s.size() + 1;
    if (weight > kWeightBudget)
      throw SizeLimitError("truth tree exceeds the node budget");
    nodes.push_back(std::move(s));
  }
};

Seq extend(const Seq& p, std::string label) {
  Seq q = p;
  q.push_back(std::move(label));
  return q;
}

// Atoms and negated atoms share one subtree shape; only the presence of
// the "1" node distinguishes true from false.
bool atom_shaped(const FormulaPtr& f) {
  if (f->kind == FormulaKind::Member || f->kind == FormulaKind::Equal)
    return true;
  return f->kind == FormulaKind::Not &&
         (f->a->kind == FormulaKind::Member || f->a->kind == FormulaKind::Equal);
}

bool binary_kind(FormulaKind k) {
  return k == FormulaKind::And || k == FormulaKind::Or;
}

bool universal_kind(FormulaKind k) {
  return k == FormulaKind::Forall || k == FormulaKind::ForallIn;
}

void require_nnf(const FormulaPtr& f) {
  if (!is_nnf(f))
    throw UsageError("formula must be in negation normal form");
}

// Branch tags of the binary value trees: the true tree of a conjunction
// keeps all four outcome branches, the false one drops "11"; dually for
// a disjunction.
std::vector<std::string> value_bits(FormulaKind k, bool top) {
  if (k == FormulaKind::And)
    return top ? std::vector<std::string>{"11", "10", "01", "00"}
               : std::vector<std::string>{"10", "01", "00"};
  return top ? std::vector<std::string>{"11", "10", "01"}
             : std::vector<std::string>{"11", "10", "01", "00"};
}

// What a pair component under a branch holds: a value tree of a
// subformula or a satisfaction tree.
struct Spec {
  int mode;  // 0 true-value, 1 false-value, 2 satisfaction
  FormulaPtr g;
  std::vector<HFSet> sigma;
};

void emit_value(Emitter& em, bool top, const FormulaPtr& f, const Seq& prefix);
void emit_sat(Emitter& em, const HFSet& a, const FormulaPtr& f,
              const std::vector<HFSet>& sigma, const Seq& prefix);

void emit_spec(Emitter& em, const HFSet& a, const Spec& s, const Seq& prefix) {
  if (s.mode == 2)
    emit_sat(em, a, s.g, s.sigma, prefix);
  else
    emit_value(em, s.mode == 0, s.g, prefix);
}

// OPair(L, R) = Pair(Pair(L, L), Pair(L, R)); collapses to the
// Kuratowski pair of the two component collapses.
void emit_opair(Emitter& em, const HFSet& a, const Seq& prefix, const Spec& l,
                const Spec& r) {
  em.push(prefix);
  Seq zero = extend(prefix, "0");
  em.push(zero);
  emit_spec(em, a, l, extend(zero, "0"));
  emit_spec(em, a, l, extend(zero, "1"));
  Seq one = extend(prefix, "1");
  em.push(one);
  emit_spec(em, a, l, extend(one, "0"));
  emit_spec(em, a, r, extend(one, "1"));
}

void emit_value(Emitter& em, bool top, const FormulaPtr& f, const Seq& prefix) {
  em.push(prefix);
  if (atom_shaped(f)) {
    Seq zero = extend(prefix, "0");
    em.push(zero);
    em.push(extend(zero, "0"));
    if (top) em.push(extend(prefix, "1"));
    return;
  }
  if (binary_kind(f->kind)) {
    std::string head = "c:" + format_formula(f) + ":";
    for (const std::string& bits : value_bits(f->kind, top)) {
      Spec l{bits[0] == '1' ? 0 : 1, f->a, {}};
      Spec r{bits[1] == '1' ? 0 : 1, f->b, {}};
      emit_opair(em, HFSet(), extend(prefix, head + bits), l, r);
    }
    return;
  }
  Seq stem = extend(prefix, "q:" + format_formula(f));
  em.push(stem);
  if (universal_kind(f->kind)) {
    emit_value(em, true, f->a, extend(stem, "1"));
    if (!top) emit_value(em, false, f->a, extend(stem, "0"));
  } else {
    emit_value(em, false, f->a, extend(stem, "0"));
    if (top) emit_value(em, true, f->a, extend(stem, "1"));
  }
}

std::vector<HFSet> assign_update(const std::vector<HFSet>& sigma, int i,
                                 const HFSet& s) {
  std::vector<HFSet> out = sigma;
  if (i < static_cast<int>(out.size()))
    out[static_cast<std::size_t>(i)] = s;
  else
    out.resize(static_cast<std::size_t>(i) + 1, s);
  return out;
}

std::vector<HFSet> witness_pool(const HFSet& a, const FormulaPtr& f,
                                const std::vector<HFSet>& sigma) {
  if (f->kind == FormulaKind::Exists || f->kind == FormulaKind::Forall)
    return a.elems();
  if (f->j < 0 || f->j >= static_cast<int>(sigma.size()))
    throw DomainError("assignment too short for bounded quantifier");
  return sigma[static_cast<std::size_t>(f->j)].elems();
}

void emit_sat(Emitter& em, const HFSet& a, const FormulaPtr& f,
              const std::vector<HFSet>& sigma, const Seq& prefix) {
  if (atom_shaped(f)) {
    emit_value(em, eval_formula(a, f, sigma), f, prefix);
    return;
  }
  em.push(prefix);
  std::string fmt = format_formula(f);
  std::string sig = assignment_sig(sigma);
  if (binary_kind(f->kind)) {
    std::string special = f->kind == FormulaKind::And ? "11" : "00";
    std::string head = "cs:" + fmt + ":" + sig + ":";
    for (const std::string& bits : {std::string("11"), std::string("10"),
                                    std::string("01"), std::string("00")}) {
      Seq branch = extend(prefix, head + bits);
      if (bits == special) {
        emit_opair(em, a, branch, Spec{2, f->a, sigma}, Spec{2, f->b, sigma});
      } else {
        Spec l{bits[0] == '1' ? 0 : 1, f->a, {}};
        Spec r{bits[1] == '1' ? 0 : 1, f->b, {}};
        emit_opair(em, a, branch, l, r);
      }
    }
    return;
  }
  Seq stem = extend(prefix, "qs:" + fmt + ":" + sig);
  em.push(stem);
  if (universal_kind(f->kind))
    emit_value(em, true, f->a, extend(stem, "1"));
  else
    emit_value(em, false, f->a, extend(stem, "0"));
  for (const HFSet& s : witness_pool(a, f, sigma))
    emit_sat(em, a, f->a, assign_update(sigma, f->i, s),
             extend(stem, "w:" + format_hf(s)));
}

void check_assignment(const FormulaPtr& f, const std::vector<HFSet>& sigma) {
  if (max_free_var(f) >= static_cast<int>(sigma.size()))
    throw DomainError("assignment too short for formula");
}

// Subformulas whose value trees the combined tree carries; negated atoms
// count as units.
void collect_subs(const FormulaPtr& f,
                  std::map<std::string, FormulaPtr>& subs) {
  subs.emplace(format_formula(f), f);
  if (atom_shaped(f)) return;
  collect_subs(f->a, subs);
  if (binary_kind(f->kind)) collect_subs(f->b, subs);
}

// (formula, assignment) pairs whose satisfaction trees the construction
// reaches from the initial pair.
void collect_demand(
    const HFSet& a, const FormulaPtr& f, const std::vector<HFSet>& sigma,
    std::map<std::string, std::pair<FormulaPtr, std::vector<HFSet>>>& sats) {
  std::string key = format_formula(f) + ":" + assignment_sig(sigma);
  if (!sats.emplace(key, std::make_pair(f, sigma)).second) return;
  if (atom_shaped(f)) return;
  if (binary_kind(f->kind)) {
    collect_demand(a, f->a, sigma, sats);
    collect_demand(a, f->b, sigma, sats);
    return;
  }
  for (const HFSet& s : witness_pool(a, f, sigma))
    collect_demand(a, f->a, assign_update(sigma, f->i, s), sats);
}

}  // namespace

std::string assignment_sig(const std::vector<HFSet>& sigma) {
  std::string out = "[";
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    if (i) out += ' ';
    out += format_hf(sigma[i]);
  }
  return out + "]";
}

std::vector<HFSet> parse_assignment_sig(const std::string& text) {
  if (text.size() < 2 || text.front() != '[' || text.back() != ']')
    throw ParseError("assignment must be bracketed");
  std::vector<HFSet> out;
  std::size_t i = 1;
  std::size_t end = text.size() - 1;
  while (i < end) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '{') throw ParseError("assignment entry must be a set");
    std::size_t start = i;
    int depth = 0;
    while (i < end) {
      if (text[i] == '{') ++depth;
      if (text[i] == '}' && --depth == 0) {
        ++i;
        break;
      }
      ++i;
    }
    if (depth != 0) throw ParseError("unbalanced assignment entry");
    out.push_back(parse_hf(text.substr(start, i - start)));
  }
  return out;
}

FiniteTree top_tree(const FormulaPtr& f) {
  require_nnf(f);
  Emitter em;
  emit_value(em, true, f, {});
  return FiniteTree::from_nodes(std::move(em.nodes));
}

FiniteTree bot_tree(const FormulaPtr& f) {
  require_nnf(f);
  Emitter em;
  emit_value(em, false, f, {});
  return FiniteTree::from_nodes(std::move(em.nodes));
}

FiniteTree sat_tree(const HFSet& a, const FormulaPtr& f,
                    const std::vector<HFSet>& sigma) {
  require_nnf(f);
  check_assignment(f, sigma);
  Emitter em;
  emit_sat(em, a, f, sigma, {});
  return FiniteTree::from_nodes(std::move(em.nodes));
}

FiniteTree combined_truth_tree(const HFSet& a, const FormulaPtr& f,
                               const std::vector<HFSet>& sigma) {
  require_nnf(f);
  check_assignment(f, sigma);
  std::map<std::string, FormulaPtr> subs;
  collect_subs(f, subs);
  std::map<std::string, std::pair<FormulaPtr, std::vector<HFSet>>> sats;
  collect_demand(a, f, sigma, sats);
  Emitter em;
  em.push({});
  for (const auto& [fmt, g] : subs) {
    emit_value(em, true, g, {"top:" + fmt});
    emit_value(em, false, g, {"bot:" + fmt});
  }
  for (const auto& [key, p] : sats)
    emit_sat(em, a, p.first, p.second, {"sat:" + key});
  return FiniteTree::from_nodes(std::move(em.nodes));
}

bool truth_via_collapse(const HFSet& a, const FormulaPtr& f,
                        const std::vector<HFSet>& sigma) {
  FiniteTree t = combined_truth_tree(a, f, sigma);
  std::vector<HFSet> vals = tree_collapse_all(t);
  auto at = [&](const std::string& label) {
    std::size_t i = t.index_of({label});
    if (i == FiniteTree::npos)
      throw Error("combined tree misses root branch " + label);
    return vals[i];
  };
  std::string fmt = format_formula(f);
  HFSet sat = at("sat:" + fmt + ":" + assignment_sig(sigma));
  HFSet top = at("top:" + fmt);
  HFSet bot = at("bot:" + fmt);
  if ((sat == top) == (sat == bot))
    throw Error("satisfaction collapse missed the two truth values");
  return sat == top;
}

bool truth_distinctness(const std::vector<FormulaPtr>& corpus) {
  std::vector<HFSet> tops;
  std::vector<HFSet> bots;
  std::vector<std::size_t> ranks;
  std::vector<std::size_t> heights;
  for (const FormulaPtr& f : corpus) {
    FiniteTree tt = top_tree(f);
    FiniteTree bt = bot_tree(f);
    std::size_t h = tree_height(tt);
    if (tree_height(bt) != h) return false;
    tops.push_back(tree_collapse(tt));
    bots.push_back(tree_collapse(bt));
    ranks.push_back(formula_rank(f));
    heights.push_back(h);
  }
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j) {
      if (tops[i] == bots[j]) return false;
      if ((ranks[i] == ranks[j]) != (heights[i] == heights[j])) return false;
    }
  return true;
}

std::size_t formula_rank(const FormulaPtr& f) {
  if (atom_shaped(f)) return 2;
  if (binary_kind(f->kind))
    return 3 + std::max(formula_rank(f->a), formula_rank(f->b));
  return 2 + formula_rank(f->a);
}

std::size_t tree_height(const FiniteTree& t) {
  std::size_t h = 0;
  for (const Seq& s : t.nodes()) h = std::max(h, s.size());
  return h;
}

namespace {

std::vector<std::string> split_label(const std::string& l) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= l.size(); ++i)
    if (i == l.size() || l[i] == ':') {
      parts.push_back(l.substr(start, i - start));
      start = i + 1;
    }
  return parts;
}

bool valid_bits(FormulaKind k, int mode, const std::string& bits) {
  if (bits.size() != 2 || (bits[0] != '0' && bits[0] != '1') ||
      (bits[1] != '0' && bits[1] != '1'))
    return false;
  if (mode == 2) return true;
  if (k == FormulaKind::And) return mode == 1 ? bits != "11" : true;
  return mode == 0 ? bits != "00" : true;
}

}  // namespace

bool truth_path_ok(const HFSet& a, const FiniteTree::Seq& path) {
  if (path.empty()) return true;
  try {
    Spec st;
    {
      const std::string& r = path[0];
      if (r.rfind("top:", 0) == 0) {
        st = Spec{0, parse_formula(r.substr(4)), {}};
      } else if (r.rfind("bot:", 0) == 0) {
        st = Spec{1, parse_formula(r.substr(4)), {}};
      } else if (r.rfind("sat:", 0) == 0) {
        std::string rest = r.substr(4);
        std::size_t cut = rest.find(':');
        if (cut == std::string::npos) return false;
        st = Spec{2, parse_formula(rest.substr(0, cut)),
                  parse_assignment_sig(rest.substr(cut + 1))};
        if (max_free_var(st.g) >= static_cast<int>(st.sigma.size()))
          return false;
      } else {
        return false;
      }
      if (!is_nnf(st.g)) return false;
    }
    std::size_t i = 1;
    while (i < path.size()) {
      if (atom_shaped(st.g)) {
        bool truth = st.mode == 2 ? eval_formula(a, st.g, st.sigma)
                                  : st.mode == 0;
        std::size_t rest = path.size() - i;
        if (rest == 1) return path[i] == "0" || (truth && path[i] == "1");
        return rest == 2 && path[i] == "0" && path[i + 1] == "0";
      }
      if (binary_kind(st.g->kind)) {
        std::vector<std::string> parts = split_label(path[i]);
        std::string fmt = format_formula(st.g);
        Spec l, r;
        if (st.mode == 2) {
          if (parts.size() != 4 || parts[0] != "cs" || parts[1] != fmt ||
              parts[2] != assignment_sig(st.sigma) ||
              !valid_bits(st.g->kind, 2, parts[3]))
            return false;
        } else {
          if (parts.size() != 3 || parts[0] != "c" || parts[1] != fmt ||
              !valid_bits(st.g->kind, st.mode, parts[2]))
            return false;
        }
        const std::string& bits = parts.back();
        std::string special = st.g->kind == FormulaKind::And ? "11" : "00";
        if (st.mode == 2 && bits == special) {
          l = Spec{2, st.g->a, st.sigma};
          r = Spec{2, st.g->b, st.sigma};
        } else {
          l = Spec{bits[0] == '1' ? 0 : 1, st.g->a, {}};
          r = Spec{bits[1] == '1' ? 0 : 1, st.g->b, {}};
        }
        ++i;
        if (i == path.size()) return true;
        if (path[i] != "0" && path[i] != "1") return false;
        bool right_pair = path[i] == "1";
        ++i;
        if (i == path.size()) return true;
        if (path[i] != "0" && path[i] != "1") return false;
        st = (right_pair && path[i] == "1") ? r : l;
        ++i;
        continue;
      }
      // quantifier stem
      {
        std::vector<std::string> parts = split_label(path[i]);
        std::string fmt = format_formula(st.g);
        if (st.mode == 2) {
          if (parts.size() != 3 || parts[0] != "qs" || parts[1] != fmt ||
              parts[2] != assignment_sig(st.sigma))
            return false;
        } else {
          if (parts.size() != 2 || parts[0] != "q" || parts[1] != fmt)
            return false;
        }
        ++i;
        if (i == path.size()) return true;
        const std::string& step = path[i];
        bool uni = universal_kind(st.g->kind);
        if (st.mode == 0) {
          if (uni ? step != "1" : (step != "1" && step != "0")) return false;
          st = Spec{step == "1" ? 0 : 1, st.g->a, {}};
        } else if (st.mode == 1) {
          if (uni ? (step != "1" && step != "0") : step != "0") return false;
          st = Spec{step == "1" ? 0 : 1, st.g->a, {}};
        } else {
          if (step.rfind("w:", 0) == 0) {
            HFSet s = parse_hf(step.substr(2));
            std::vector<HFSet> pool = witness_pool(a, st.g, st.sigma);
            bool found = false;
            for (const HFSet& p : pool) found = found || p == s;
            if (!found) return false;
            st = Spec{2, st.g->a, assign_update(st.sigma, st.g->i, s)};
          } else if (uni ? step == "1" : step == "0") {
            st = Spec{uni ? 0 : 1, st.g->a, {}};
          } else {
            return false;
          }
        }
        ++i;
      }
    }
    return true;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace collapse
