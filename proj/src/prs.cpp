#include "collapse/prs.hpp"

#include <cctype>
#include <utility>

#include "collapse/relation.hpp"

namespace collapse {

namespace {

PrimTermPtr node(PrimTerm t) {
  return std::make_shared<const PrimTerm>(std::move(t));
}

std::string arity_word(std::size_t n) { return std::to_string(n); }

}  // namespace

PrimTermPtr prim_proj(std::size_t i, std::size_t arity) {
  if (arity == 0) throw UsageError("projection needs a positive arity");
  if (i >= arity)
    throw UsageError("projection index " + std::to_string(i) +
                     " out of range for arity " + arity_word(arity));
  PrimTerm t;
  t.kind = PrimKind::Proj;
  t.index = i;
  t.arity = arity;
  return node(std::move(t));
}

PrimTermPtr prim_zero(std::size_t arity) {
  PrimTerm t;
  t.kind = PrimKind::ZeroFn;
  t.arity = arity;
  return node(std::move(t));
}

PrimTermPtr prim_adjoin() {
  PrimTerm t;
  t.kind = PrimKind::Adjoin;
  return node(std::move(t));
}

PrimTermPtr prim_cond() {
  PrimTerm t;
  t.kind = PrimKind::Cond;
  return node(std::move(t));
}

PrimTermPtr prim_comp(PrimTermPtr g0, std::vector<PrimTermPtr> gs) {
  if (gs.empty()) throw UsageError("composition needs at least one inner term");
  auto outer = prim_arity(g0);
  if (outer && *outer != gs.size())
    throw UsageError("outer term of arity " + arity_word(*outer) +
                     " applied to " + std::to_string(gs.size()) +
                     " inner terms");
  std::optional<std::size_t> common;
  for (const auto& g : gs) {
    auto a = prim_arity(g);
    if (!a) continue;
    if (common && *common != *a)
      throw UsageError("inner terms disagree on arity: " +
                       arity_word(*common) + " and " + arity_word(*a));
    common = a;
  }
  PrimTerm t;
  t.kind = PrimKind::Comp;
  t.children.push_back(std::move(g0));
  for (auto& g : gs) t.children.push_back(std::move(g));
  return node(std::move(t));
}

PrimTermPtr prim_primrec(PrimTermPtr h) {
  auto a = prim_arity(h);
  if (!a) throw UsageError("recursion body needs a known arity");
  if (*a < 2) throw UsageError("recursion body needs arity at least two");
  PrimTerm t;
  t.kind = PrimKind::PrimRec;
  t.children.push_back(std::move(h));
  return node(std::move(t));
}

PrimTermPtr prim_rud(std::size_t i) {
  if (i > 8) throw UsageError("no basic function " + std::to_string(i));
  PrimTerm t;
  t.kind = PrimKind::RudBasic;
  t.index = i;
  return node(std::move(t));
}

PrimTermPtr prim_oracle_b() {
  PrimTerm t;
  t.kind = PrimKind::OracleB;
  return node(std::move(t));
}

PrimTermPtr prim_const(std::string name) {
  if (name.empty()) throw UsageError("constant needs a name");
  PrimTerm t;
  t.kind = PrimKind::ConstParam;
  t.name = std::move(name);
  return node(std::move(t));
}

std::optional<std::size_t> prim_arity(const PrimTermPtr& t) {
  switch (t->kind) {
    case PrimKind::Proj:
    case PrimKind::ZeroFn:
      return t->arity;
    case PrimKind::Adjoin:
    case PrimKind::RudBasic:
    case PrimKind::OracleB:
      return std::size_t{2};
    case PrimKind::Cond:
      return std::size_t{4};
    case PrimKind::ConstParam:
      return std::nullopt;
    case PrimKind::Comp:
      for (std::size_t k = 1; k < t->children.size(); ++k)
        if (auto a = prim_arity(t->children[k])) return a;
      return std::nullopt;
    case PrimKind::PrimRec:
      return *prim_arity(t->children[0]) - 1;
  }
  return std::nullopt;
}

HFSet rud(std::size_t i, const HFSet& x, const HFSet& y) {
  std::vector<HFSet> out;
  switch (i) {
    case 0:
      return pair_set(x, y);
    case 1:
      return set_difference(x, y);
    case 2:
      for (const HFSet& u : x.elems())
        for (const HFSet& v : y.elems()) out.push_back(kuratowski(u, v));
      return make_set(std::move(out));
    case 3:
      for (const HFSet& p : y.elems())
        if (auto uv = kuratowski_decode(p))
          for (const HFSet& w : x.elems())
            out.push_back(tuple({uv->first, w, uv->second}));
      return make_set(std::move(out));
    case 4:
      for (const HFSet& p : y.elems())
        if (auto uv = kuratowski_decode(p))
          for (const HFSet& w : x.elems())
            out.push_back(tuple({uv->first, uv->second, w}));
      return make_set(std::move(out));
    case 5:
      return set_union_all(x);
    case 6:
      for (const HFSet& p : x.elems())
        if (auto uv = kuratowski_decode(p)) out.push_back(uv->first);
      return make_set(std::move(out));
    case 7:
      for (const HFSet& u : x.elems())
        for (const HFSet& v : x.elems())
          if (v.contains(u)) out.push_back(kuratowski(u, v));
      return make_set(std::move(out));
    case 8:
      for (const HFSet& z : y.elems()) {
        std::vector<HFSet> ws;
        for (const HFSet& p : x.elems())
          if (auto uv = kuratowski_decode(p))
            if (uv->second == z) ws.push_back(uv->first);
        out.push_back(make_set(std::move(ws)));
      }
      return make_set(std::move(out));
    default:
      throw UsageError("no basic function " + std::to_string(i));
  }
}

namespace {

// One evaluation: a fresh memo table keyed by recursion node and full
// argument list, and a step budget against runaway programs.
struct Evaluator {
  const std::map<std::string, HFSet>& bindings;
  std::map<std::pair<const PrimTerm*, std::vector<std::uint32_t>>, HFSet> memo;
  long long steps = 0;
  static constexpr long long kBudget = 50000000;

  void tick() {
    if (++steps > kBudget)
      throw SizeLimitError("evaluation budget exceeded");
  }

  HFSet run(const PrimTermPtr& t, const std::vector<HFSet>& args) {
    tick();
    if (auto a = prim_arity(t); a && *a != args.size())
      throw UsageError("term of arity " + std::to_string(*a) +
                       " applied to " + std::to_string(args.size()) +
                       " arguments");
    switch (t->kind) {
      case PrimKind::Proj:
        return args[t->index];
      case PrimKind::ZeroFn:
        return HFSet();
      case PrimKind::Adjoin:
        return adjoin(args[0], args[1]);
      case PrimKind::Cond:
        return args[3].contains(args[2]) ? args[0] : args[1];
      case PrimKind::Comp: {
        std::vector<HFSet> inner;
        inner.reserve(t->children.size() - 1);
        for (std::size_t k = 1; k < t->children.size(); ++k)
          inner.push_back(run(t->children[k], args));
        return run(t->children[0], inner);
      }
      case PrimKind::PrimRec:
        return recurse(t, args);
      case PrimKind::RudBasic:
        return rud(t->index, args[0], args[1]);
      case PrimKind::OracleB:
        return beta_oracle(args[0], args[1]);
      case PrimKind::ConstParam: {
        auto it = bindings.find(t->name);
        if (it == bindings.end())
          throw UsageError("unbound constant " + t->name);
        return it->second;
      }
    }
    throw UsageError("malformed program term");
  }

  HFSet recurse(const PrimTermPtr& t, const std::vector<HFSet>& args) {
    std::vector<std::uint32_t> ids;
    ids.reserve(args.size());
    for (const HFSet& a : args) ids.push_back(a.id());
    auto key = std::make_pair(t.get(), std::move(ids));
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    tick();
    std::vector<HFSet> vals;
    for (const HFSet& z : args[0].elems()) {
      std::vector<HFSet> sub = args;
      sub[0] = z;
      vals.push_back(recurse(t, sub));
    }
    std::vector<HFSet> hargs;
    hargs.reserve(args.size() + 1);
    hargs.push_back(set_union_all(make_set(std::move(vals))));
    hargs.insert(hargs.end(), args.begin(), args.end());
    HFSet out = run(t->children[0], hargs);
    memo.emplace(std::move(key), out);
    return out;
  }
};

}  // namespace

HFSet eval_prim(const PrimTermPtr& t, const std::vector<HFSet>& args,
                const std::map<std::string, HFSet>& bindings) {
  Evaluator ev{bindings};
  return ev.run(t, args);
}

namespace {

// <x0, x1> as a binary term.
PrimTermPtr pair_fn() {
  auto p0 = prim_proj(0, 2), p1 = prim_proj(1, 2);
  return prim_comp(prim_rud(0), {prim_comp(prim_rud(0), {p0, p0}),
                                 prim_comp(prim_rud(0), {p0, p1})});
}

// x0 union x1, as the flattened unordered pair.
PrimTermPtr union2_fn() {
  auto p0 = prim_proj(0, 2), p1 = prim_proj(1, 2);
  return prim_comp(prim_rud(5),
                   {prim_comp(prim_rud(0), {p0, p1}), prim_zero(2)});
}

// The second component of a Kuratowski pair, total on junk. Works from
// the union and the members' intersection of the argument, with the
// case split deciding whether the pair is degenerate.
PrimTermPtr second_fn() {
  auto p0 = prim_proj(0, 1);
  auto z1 = prim_zero(1);
  auto up = prim_comp(prim_rud(5), {p0, z1});
  auto m0 = prim_proj(0, 2), m1 = prim_proj(1, 2);
  auto up_of = prim_comp(prim_rud(5), {m1, prim_zero(2)});
  auto miss = prim_comp(prim_rud(1), {up_of, m0});
  auto miss_all = prim_comp(prim_union_image(miss), {p0, p0});
  auto cap = prim_comp(prim_rud(1), {up, miss_all});
  auto first = prim_comp(prim_rud(5), {cap, z1});
  auto d = prim_comp(prim_rud(1), {up, cap});
  auto d_flat = prim_comp(prim_rud(5), {d, z1});
  auto marker = prim_comp(prim_image(prim_zero(1)), {d});
  return prim_comp(prim_cond(), {d_flat, first, z1, marker});
}

// f(x, y) = x together with every u in x grown by one v in y.
PrimTermPtr pfin_step_fn() {
  auto p0 = prim_proj(0, 2), p1 = prim_proj(1, 2);
  auto grow = prim_comp(prim_adjoin(), {p1, p0});
  auto inner = prim_image(grow);
  auto swapped = prim_comp(inner, {p1, p0});
  auto outer = prim_union_image(swapped);
  return prim_comp(union2_fn(), {p0, outer});
}

}  // namespace

PrimTermPtr prim_image(const PrimTermPtr& g) {
  auto ag = prim_arity(g);
  if (!ag || *ag == 0)
    throw UsageError("image needs a body of known positive arity");
  std::size_t n = *ag;
  // Accumulate the value-keyed graph <g(z, ys), z> over the transitive
  // closure; the step ignores the gathered union and just adjoins the
  // pair for the current set.
  std::vector<PrimTermPtr> ps;
  for (std::size_t i = 0; i <= n; ++i) ps.push_back(prim_proj(i, n + 1));
  std::vector<PrimTermPtr> shift(ps.begin() + 1, ps.end());
  auto lifted = prim_comp(g, shift);
  auto keyed = prim_comp(pair_fn(), {lifted, ps[1]});
  auto step = prim_comp(prim_adjoin(), {ps[0], keyed});
  auto graph = prim_primrec(step);
  // Grouping the graph by key over the argument set leaves one
  // singleton per member; flattening yields the image.
  auto grouped = prim_comp(prim_rud(8), {graph, prim_proj(0, n)});
  return prim_comp(prim_rud(5), {grouped, prim_zero(n)});
}

PrimTermPtr prim_union_image(const PrimTermPtr& g) {
  auto im = prim_image(g);
  std::size_t n = *prim_arity(im);
  return prim_comp(prim_rud(5), {im, prim_zero(n)});
}

PrimTermPtr tc_program() { return prim_primrec(union2_fn()); }

HFSet tc_rud(const HFSet& x) { return eval_prim(tc_program(), {x}); }

PrimTermPtr pfin_program() {
  auto f = pfin_step_fn();
  auto q0 = prim_proj(0, 4), q2 = prim_proj(2, 4), q3 = prim_proj(3, 4);
  auto body = prim_comp(union2_fn(), {prim_comp(f, {q0, q2}), q3});
  auto rec = prim_primrec(body);
  auto r0 = prim_proj(0, 2), r1 = prim_proj(1, 2);
  return prim_comp(rec, {prim_const("omega"), r0, r1});
}

HFSet pfin_prim(const HFSet& x, std::size_t n) {
  std::map<std::string, HFSet> env{{"omega", von_neumann(n)}};
  return eval_prim(pfin_program(), {x, singleton(HFSet())}, env);
}

bool pfin_truncated(const HFSet& x, std::size_t n) { return n < x.card(); }

HFSet beta_oracle(const HFSet& a, const HFSet& r) {
  std::vector<std::string> carrier;
  carrier.reserve(a.card());
  for (const HFSet& u : a.elems()) carrier.push_back(format_hf(u));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const HFSet& p : r.elems()) {
    auto uv = kuratowski_decode(p);
    if (!uv) return HFSet();
    if (!a.contains(uv->first) || !a.contains(uv->second)) return HFSet();
    edges.emplace_back(format_hf(uv->first), format_hf(uv->second));
  }
  CarrierRelation rel = make_relation(std::move(carrier), std::move(edges));
  if (!is_well_founded(rel)) return HFSet();
  auto collapsed = collapse_relation(rel);
  std::vector<HFSet> graph;
  graph.reserve(collapsed.size());
  for (std::size_t k = 0; k < collapsed.size(); ++k)
    graph.push_back(kuratowski(a.elems()[k], collapsed[k].second));
  return make_set(std::move(graph));
}

PrimTermPtr rank_program() {
  auto p0 = prim_proj(0, 1);
  auto boxed = prim_comp(prim_rud(0), {p0, p0});
  auto cone = prim_comp(tc_program(), {boxed});
  // Pairs <w, z> with w strictly reachable from z inside the cone; the
  // oracle then collapses reachability to the von Neumann ranks.
  auto q0 = prim_proj(0, 2), q1 = prim_proj(1, 2);
  auto meet = prim_comp(
      prim_rud(1), {q0, prim_comp(prim_rud(1), {q0, q1})});
  auto pool = prim_comp(meet, {prim_comp(tc_program(), {q0}), q1});
  auto below = prim_comp(prim_image(pair_fn()), {pool, q0});
  auto rel = prim_comp(prim_union_image(below), {cone, cone});
  auto graph = prim_comp(prim_oracle_b(), {cone, rel});
  auto range = prim_comp(prim_image(second_fn()), {graph});
  return prim_comp(prim_rud(5), {range, prim_zero(1)});
}

namespace {

struct SexpParser {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("program: " + msg + " at position " +
                     std::to_string(pos));
  }

  void skip() {
    while (pos < s.size() &&
           std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  static bool symbol_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' ||
           c == '_';
  }

  std::string symbol() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && symbol_char(s[pos])) ++pos;
    if (pos == start) fail("expected a symbol");
    return s.substr(start, pos - start);
  }

  std::size_t number() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() &&
           std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected a number");
    try {
      return static_cast<std::size_t>(
          std::stoull(s.substr(start, pos - start)));
    } catch (const std::out_of_range&) {
      fail("number out of range");
    }
  }

  void close() {
    skip();
    if (pos >= s.size() || s[pos] != ')') fail("expected ')'");
    ++pos;
  }

  bool at_close() {
    skip();
    return pos < s.size() && s[pos] == ')';
  }

  PrimTermPtr term() {
    skip();
    if (pos >= s.size()) fail("unexpected end of input");
    if (s[pos] != '(') {
      std::string sym = symbol();
      if (sym == "adjoin") return prim_adjoin();
      if (sym == "cond") return prim_cond();
      if (sym == "oracle-b") return prim_oracle_b();
      fail("unknown atom '" + sym + "'");
    }
    ++pos;
    std::string head = symbol();
    PrimTermPtr out;
    if (head == "proj") {
      std::size_t i = number(), n = number();
      out = prim_proj(i, n);
    } else if (head == "zero") {
      out = prim_zero(number());
    } else if (head == "rud") {
      out = prim_rud(number());
    } else if (head == "const") {
      out = prim_const(symbol());
    } else if (head == "primrec") {
      skip();
      if (at_close()) fail("recursion needs a body");
      out = prim_primrec(term());
    } else if (head == "comp") {
      skip();
      if (at_close()) fail("composition needs an outer term");
      PrimTermPtr g0 = term();
      std::vector<PrimTermPtr> gs;
      while (!at_close()) {
        if (pos >= s.size()) fail("expected ')'");
        gs.push_back(term());
      }
      out = prim_comp(std::move(g0), std::move(gs));
    } else {
      fail("unknown form '" + head + "'");
    }
    close();
    return out;
  }
};

}  // namespace

PrimTermPtr parse_prim(const std::string& text) {
  SexpParser p{text};
  PrimTermPtr t = p.term();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

std::string format_prim(const PrimTermPtr& t) {
  switch (t->kind) {
    case PrimKind::Proj:
      return "(proj " + std::to_string(t->index) + " " +
             std::to_string(t->arity) + ")";
    case PrimKind::ZeroFn:
      return "(zero " + std::to_string(t->arity) + ")";
    case PrimKind::Adjoin:
      return "adjoin";
    case PrimKind::Cond:
      return "cond";
    case PrimKind::OracleB:
      return "oracle-b";
    case PrimKind::RudBasic:
      return "(rud " + std::to_string(t->index) + ")";
    case PrimKind::ConstParam:
      return "(const " + t->name + ")";
    case PrimKind::PrimRec:
      return "(primrec " + format_prim(t->children[0]) + ")";
    case PrimKind::Comp: {
      std::string out = "(comp";
      for (const auto& c : t->children) out += " " + format_prim(c);
      return out + ")";
    }
  }
  return "";
}

}  // namespace collapse
