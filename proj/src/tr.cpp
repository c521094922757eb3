#include "collapse/tr.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>

#include <nlohmann/json.hpp>

namespace collapse {
namespace {

using json = nlohmann::json;

// v (variable 1) may appear only as the right side of a membership atom,
// probed by some other variable, and must never be rebound.
bool v_occurrence_ok(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Member:
      return f->i != 1;
    case FormulaKind::Equal:
      return f->i != 1 && f->j != 1;
    case FormulaKind::Not:
      return v_occurrence_ok(f->a);
    case FormulaKind::And:
    case FormulaKind::Or:
      return v_occurrence_ok(f->a) && v_occurrence_ok(f->b);
    case FormulaKind::Exists:
    case FormulaKind::Forall:
      return f->i != 1 && v_occurrence_ok(f->a);
    default:
      return f->i != 1 && f->j != 1 && v_occurrence_ok(f->a);
  }
}

bool has_plain_quant(const FormulaPtr& f) {
  switch (f->kind) {
    case FormulaKind::Member:
    case FormulaKind::Equal:
      return false;
    case FormulaKind::Not:
    case FormulaKind::ExistsIn:
    case FormulaKind::ForallIn:
      return has_plain_quant(f->a);
    case FormulaKind::And:
    case FormulaKind::Or:
      return has_plain_quant(f->a) || has_plain_quant(f->b);
    default:
      return true;
  }
}

struct StageIndex {
  std::vector<HFSet> vals;              // in carrier order
  std::map<std::uint32_t, int> by_id;   // set id -> stage index
  std::vector<std::vector<int>> preds;  // immediate predecessors
};

std::optional<StageIndex> index_stages(const CarrierRelation& order) {
  StageIndex st;
  std::map<std::string, int> by_label;
  for (std::size_t i = 0; i < order.carrier.size(); ++i) {
    HFSet v = parse_hf(order.carrier[i]);
    if (!st.by_id.emplace(v.id(), static_cast<int>(i)).second)
      return std::nullopt;  // two labels denoting the same set
    by_label[order.carrier[i]] = static_cast<int>(i);
    st.vals.push_back(v);
  }
  st.preds.assign(st.vals.size(), {});
  for (const auto& [lo, hi] : order.edges)
    st.preds[static_cast<std::size_t>(by_label.at(hi))].push_back(
        by_label.at(lo));
  for (auto& p : st.preds) {
    std::sort(p.begin(), p.end());
    p.erase(std::unique(p.begin(), p.end()), p.end());
  }
  return st;
}

void preflight(const TRInstance& inst) {
  if (!is_nnf(inst.psi))
    throw UsageError("recursion formula must be in negation normal form");
  if (!validate_instance(inst))
    throw UsageError("invalid recursion instance");
  if (max_free_var(inst.psi) - 2 >= static_cast<int>(inst.params.size()))
    throw UsageError("parameters do not cover the formula's free variables");
}

// Transitive evaluation universe: a, a x X, the stages, the order's
// edge pairs, and the parameters. Only needed for plain quantifiers.
HFSet build_universe(const TRInstance& inst, const StageIndex& st) {
  std::vector<HFSet> big = inst.domain_a.elems();
  for (const HFSet& c : inst.domain_a.elems())
    for (const HFSet& s : st.vals) big.push_back(kuratowski(c, s));
  for (const HFSet& s : st.vals) big.push_back(s);
  for (std::size_t s = 0; s < st.vals.size(); ++s)
    for (int t : st.preds[s])
      big.push_back(
          kuratowski(st.vals[static_cast<std::size_t>(t)], st.vals[s]));
  for (const HFSet& p : inst.params) big.push_back(p);
  HFSet u = transitive_closure(make_set(std::move(big)));
  if (u.card() > 20000)
    throw SizeLimitError("evaluation universe exceeds the size guard");
  return u;
}

// Per subformula: whether it touches v, and its free variables.
struct SubInfo {
  bool has_v = false;
  std::vector<int> fv;
};

void scan_sub(const FormulaPtr& f, std::map<const Formula*, SubInfo>& info) {
  if (info.count(f.get())) return;
  SubInfo si;
  switch (f->kind) {
    case FormulaKind::Member:
    case FormulaKind::Equal: {
      si.has_v = f->kind == FormulaKind::Member && f->j == 1;
      std::set<int> u = {f->i, f->j};
      si.fv.assign(u.begin(), u.end());
      break;
    }
    case FormulaKind::Not: {
      scan_sub(f->a, info);
      si = info.at(f->a.get());
      break;
    }
    case FormulaKind::And:
    case FormulaKind::Or: {
      scan_sub(f->a, info);
      scan_sub(f->b, info);
      const SubInfo& l = info.at(f->a.get());
      const SubInfo& r = info.at(f->b.get());
      si.has_v = l.has_v || r.has_v;
      std::set<int> u(l.fv.begin(), l.fv.end());
      u.insert(r.fv.begin(), r.fv.end());
      si.fv.assign(u.begin(), u.end());
      break;
    }
    default: {
      scan_sub(f->a, info);
      const SubInfo& body = info.at(f->a.get());
      si.has_v = body.has_v;
      std::set<int> u(body.fv.begin(), body.fv.end());
      u.erase(f->i);
      if (f->kind == FormulaKind::ExistsIn || f->kind == FormulaKind::ForallIn)
        u.insert(f->j);
      si.fv.assign(u.begin(), u.end());
      break;
    }
  }
  info[f.get()] = std::move(si);
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

// Builds the per-stage true/false/satisfaction trees as memoized
// collapse values: every constructed set is already the collapse of the
// tree the rules describe, so sharing a subtree and sharing its value
// coincide. Stage -1 keys the trees of v-free subformulas, which do not
// depend on the stage.
class TrEngine {
 public:
  explicit TrEngine(const TRInstance& inst) : inst_(inst) {
    preflight(inst);
    st_ = *index_stages(inst.order);
    scan_sub(inst.psi, info_);
    base_.assign(2, HFSet());
    for (const HFSet& p : inst.params) base_.push_back(p);
    pred_sets_.resize(st_.vals.size());
    for (std::size_t s = 0; s < st_.vals.size(); ++s)
      for (int t : st_.preds[s])
        pred_sets_[s].insert(st_.vals[static_cast<std::size_t>(t)].id());
  }

  int stage_count() const { return static_cast<int>(st_.vals.size()); }
  const HFSet& stage_val(int s) const {
    return st_.vals[static_cast<std::size_t>(s)];
  }

  // Membership of c in the slice at stage s, read off the collapses.
  bool contains(const HFSet& c, int s) {
    HFSet sv = vsat(s, inst_.psi, assign_update(base_, 0, c));
    HFSet tv = vtop(s, inst_.psi);
    HFSet bv = vbot(s, inst_.psi);
    if ((sv == tv) == (sv == bv)) throw Error("stage truth values collided");
    return sv == tv;
  }

 private:
  using ConstKey = std::pair<int, const Formula*>;
  using SatKey = std::tuple<int, const Formula*, std::vector<std::uint32_t>>;

  int stage_of(const FormulaPtr& f, int s) const {
    return info_.at(f.get()).has_v ? s : -1;
  }

  void spend() {
    if (++work_ > 20000000)
      throw SizeLimitError("stage tree construction exceeds the work budget");
  }

  bool atom_shaped(const FormulaPtr& f) const {
    return f->kind == FormulaKind::Member || f->kind == FormulaKind::Equal ||
           f->kind == FormulaKind::Not;
  }

  const FormulaPtr& atom_of(const FormulaPtr& f) const {
    return f->kind == FormulaKind::Not ? f->a : f;
  }

  const HFSet& universe() {
    if (!universe_) universe_ = build_universe(inst_, st_);
    return *universe_;
  }

  // False values of all earlier stages; the shared inner fan of the
  // membership-on-v trees at stage s.
  const std::vector<HFSet>& fan(int s) {
    auto it = fan_.find(s);
    if (it != fan_.end()) return it->second;
    std::vector<HFSet> xs;
    for (int q : st_.preds[static_cast<std::size_t>(s)])
      xs.push_back(vbot(q, inst_.psi));
    return fan_.emplace(s, std::move(xs)).first->second;
  }

  // One branch per earlier stage t: the fan plus t's true value.
  HFSet vin_top(int s) {
    auto it = vin_top_.find(s);
    if (it != vin_top_.end()) return it->second;
    std::vector<HFSet> branches;
    for (int t : st_.preds[static_cast<std::size_t>(s)]) {
      std::vector<HFSet> b = fan(s);
      b.push_back(vtop(t, inst_.psi));
      branches.push_back(make_set(std::move(b)));
    }
    HFSet v = make_set(std::move(branches));
    vin_top_.emplace(s, v);
    return v;
  }

  // The true value plus one extra branch holding the bare fan.
  HFSet vin_bot(int s) {
    auto it = vin_bot_.find(s);
    if (it != vin_bot_.end()) return it->second;
    std::vector<HFSet> branches = vin_top(s).elems();
    branches.push_back(make_set(fan(s)));
    HFSet v = make_set(std::move(branches));
    vin_bot_.emplace(s, v);
    return v;
  }

  HFSet vtop(int s, const FormulaPtr& f) { return vconst(s, f, true); }
  HFSet vbot(int s, const FormulaPtr& f) { return vconst(s, f, false); }

  HFSet vconst(int s, const FormulaPtr& f, bool top) {
    auto& memo = top ? top_ : bot_;
    ConstKey key{stage_of(f, s), f.get()};
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    spend();
    HFSet v = vconst_raw(s, f, top);
    memo.emplace(key, v);
    return v;
  }

  HFSet vconst_raw(int s, const FormulaPtr& f, bool top) {
    if (atom_shaped(f)) {
      if (info_.at(f.get()).has_v) {
        bool negated = f->kind == FormulaKind::Not;
        return top != negated ? vin_top(s) : vin_bot(s);
      }
      return top ? make_set({HFSet(), singleton(HFSet())})
                 : singleton(singleton(HFSet()));
    }
    if (f->kind == FormulaKind::And || f->kind == FormulaKind::Or) {
      HFSet t0 = vtop(s, f->a);
      HFSet b0 = vbot(s, f->a);
      HFSet t1 = vtop(s, f->b);
      HFSet b1 = vbot(s, f->b);
      std::vector<HFSet> pairs = {kuratowski(t0, b1), kuratowski(b0, t1)};
      bool is_and = f->kind == FormulaKind::And;
      if (top || !is_and) pairs.push_back(kuratowski(t0, t1));
      if (!top || is_and) pairs.push_back(kuratowski(b0, b1));
      return make_set(std::move(pairs));
    }
    bool uni =
        f->kind == FormulaKind::Forall || f->kind == FormulaKind::ForallIn;
    HFSet tb = vtop(s, f->a);
    HFSet bb = vbot(s, f->a);
    if (uni == top) return singleton(singleton(uni ? tb : bb));
    return singleton(make_set({tb, bb}));
  }

  HFSet vsat(int s, const FormulaPtr& f, const std::vector<HFSet>& sigma) {
    std::vector<std::uint32_t> ids;
    for (int v : info_.at(f.get()).fv) {
      if (v >= static_cast<int>(sigma.size()))
        throw DomainError("assignment too short for recursion formula");
      ids.push_back(sigma[static_cast<std::size_t>(v)].id());
    }
    SatKey key{stage_of(f, s), f.get(), std::move(ids)};
    auto it = sat_.find(key);
    if (it != sat_.end()) return it->second;
    spend();
    HFSet v = vsat_raw(s, f, sigma);
    sat_.emplace(std::move(key), v);
    return v;
  }

  HFSet vsat_raw(int s, const FormulaPtr& f, const std::vector<HFSet>& sigma) {
    if (atom_shaped(f)) {
      if (!info_.at(f.get()).has_v)
        return vconst(s, f, eval_formula(HFSet(), f, sigma));
      // membership on v: the witness must be a pair <c,t> of a carrier
      // element and an earlier stage, anything else falls outside
      const FormulaPtr& atom = atom_of(f);
      const HFSet& w = sigma[static_cast<std::size_t>(atom->i)];
      auto dec = kuratowski_decode(w);
      if (!dec || !inst_.domain_a.contains(dec->first) ||
          !pred_sets_[static_cast<std::size_t>(s)].count(dec->second.id()))
        return vin_bot(s);
      int t = st_.by_id.at(dec->second.id());
      std::vector<HFSet> branch = fan(s);
      branch.push_back(vsat(t, inst_.psi, assign_update(base_, 0, dec->first)));
      std::vector<HFSet> all = vin_top(s).elems();
      all.push_back(make_set(std::move(branch)));
      return make_set(std::move(all));
    }
    if (f->kind == FormulaKind::And || f->kind == FormulaKind::Or) {
      HFSet s0 = vsat(s, f->a, sigma);
      HFSet s1 = vsat(s, f->b, sigma);
      std::vector<HFSet> pairs = {kuratowski(s0, s1)};
      HFSet t0 = vtop(s, f->a);
      HFSet b0 = vbot(s, f->a);
      HFSet t1 = vtop(s, f->b);
      HFSet b1 = vbot(s, f->b);
      if (f->kind == FormulaKind::And) {
        pairs.push_back(kuratowski(t0, b1));
        pairs.push_back(kuratowski(b0, t1));
        pairs.push_back(kuratowski(b0, b1));
      } else {
        pairs.push_back(kuratowski(t0, t1));
        pairs.push_back(kuratowski(t0, b1));
        pairs.push_back(kuratowski(b0, t1));
      }
      return make_set(std::move(pairs));
    }
    bool uni =
        f->kind == FormulaKind::Forall || f->kind == FormulaKind::ForallIn;
    bool plain =
        f->kind == FormulaKind::Forall || f->kind == FormulaKind::Exists;
    std::vector<HFSet> pool;
    if (plain) {
      pool = universe().elems();
    } else {
      if (f->j >= static_cast<int>(sigma.size()))
        throw DomainError("assignment too short for recursion formula");
      pool = sigma[static_cast<std::size_t>(f->j)].elems();
    }
    std::vector<HFSet> stem;
    stem.push_back(uni ? vtop(s, f->a) : vbot(s, f->a));
    for (const HFSet& w : pool)
      stem.push_back(vsat(s, f->a, assign_update(sigma, f->i, w)));
    return singleton(make_set(std::move(stem)));
  }

  const TRInstance& inst_;
  StageIndex st_;
  std::map<const Formula*, SubInfo> info_;
  std::vector<HFSet> base_;
  std::vector<std::set<std::uint32_t>> pred_sets_;
  std::optional<HFSet> universe_;
  std::map<int, std::vector<HFSet>> fan_;
  std::map<int, HFSet> vin_top_;
  std::map<int, HFSet> vin_bot_;
  std::map<ConstKey, HFSet> top_;
  std::map<ConstKey, HFSet> bot_;
  std::map<SatKey, HFSet> sat_;
  std::size_t work_ = 0;
};

std::vector<int> topo_order(const StageIndex& st) {
  std::size_t n = st.vals.size();
  std::vector<std::vector<int>> above(n);
  std::vector<int> pending(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    pending[s] = static_cast<int>(st.preds[s].size());
    for (int t : st.preds[s])
      above[static_cast<std::size_t>(t)].push_back(static_cast<int>(s));
  }
  std::deque<int> ready;
  for (std::size_t s = 0; s < n; ++s)
    if (pending[s] == 0) ready.push_back(static_cast<int>(s));
  std::vector<int> order;
  while (!ready.empty()) {
    int s = ready.front();
    ready.pop_front();
    order.push_back(s);
    for (int u : above[static_cast<std::size_t>(s)])
      if (--pending[static_cast<std::size_t>(u)] == 0) ready.push_back(u);
  }
  return order;
}

}  // namespace

bool validate_instance(const TRInstance& inst) {
  if (!v_occurrence_ok(inst.psi)) return false;
  if (!is_well_founded(inst.order)) return false;
  return index_stages(inst.order).has_value();
}

HFSet tr_slice(const TRResult& res, const HFSet& s) {
  std::vector<HFSet> xs;
  for (const auto& [c, t] : res.pairs)
    if (t == s) xs.push_back(c);
  return make_set(std::move(xs));
}

HFSet tr_before(const TRInstance& inst, const TRResult& res, const HFSet& s) {
  auto st = index_stages(inst.order);
  if (!st) throw UsageError("invalid recursion instance");
  auto it = st->by_id.find(s.id());
  if (it == st->by_id.end()) throw DomainError("unknown stage");
  std::vector<HFSet> xs;
  for (int t : st->preds[static_cast<std::size_t>(it->second)]) {
    const HFSet& tv = st->vals[static_cast<std::size_t>(t)];
    for (const HFSet& c : tr_slice(res, tv).elems())
      xs.push_back(kuratowski(c, tv));
  }
  return make_set(std::move(xs));
}

HFSet tr_stages_before(const TRInstance& inst, const HFSet& s) {
  auto st = index_stages(inst.order);
  if (!st) throw UsageError("invalid recursion instance");
  auto it = st->by_id.find(s.id());
  if (it == st->by_id.end()) throw DomainError("unknown stage");
  std::vector<HFSet> xs;
  for (int t : st->preds[static_cast<std::size_t>(it->second)])
    xs.push_back(st->vals[static_cast<std::size_t>(t)]);
  return make_set(std::move(xs));
}

TRResult tr_direct(const TRInstance& inst) {
  preflight(inst);
  StageIndex st = *index_stages(inst.order);
  HFSet uni;
  if (has_plain_quant(inst.psi)) uni = build_universe(inst, st);
  std::vector<HFSet> assignment(2, HFSet());
  for (const HFSet& p : inst.params) assignment.push_back(p);
  std::vector<std::vector<HFSet>> slice(st.vals.size());
  TRResult res;
  for (int s : topo_order(st)) {
    std::vector<HFSet> acc;
    for (int t : st.preds[static_cast<std::size_t>(s)])
      for (const HFSet& c : slice[static_cast<std::size_t>(t)])
        acc.push_back(kuratowski(c, st.vals[static_cast<std::size_t>(t)]));
    assignment[1] = make_set(std::move(acc));
    for (const HFSet& c : inst.domain_a.elems()) {
      assignment[0] = c;
      if (eval_formula(uni, inst.psi, assignment)) {
        slice[static_cast<std::size_t>(s)].push_back(c);
        res.pairs.insert({c, st.vals[static_cast<std::size_t>(s)]});
      }
    }
  }
  return res;
}

TRResult tr_trees(const TRInstance& inst) {
  TrEngine eng(inst);
  TRResult res;
  for (int s = 0; s < eng.stage_count(); ++s)
    for (const HFSet& c : inst.domain_a.elems())
      if (eng.contains(c, s)) res.pairs.insert({c, eng.stage_val(s)});
  return res;
}

bool tr_recheck(const TRInstance& inst, const TRResult& res) {
  preflight(inst);
  StageIndex st = *index_stages(inst.order);
  for (const auto& [c, s] : res.pairs)
    if (!inst.domain_a.contains(c) || !st.by_id.count(s.id())) return false;
  HFSet uni;
  if (has_plain_quant(inst.psi)) uni = build_universe(inst, st);
  std::vector<HFSet> assignment(2, HFSet());
  for (const HFSet& p : inst.params) assignment.push_back(p);
  for (const HFSet& s : st.vals) {
    assignment[1] = tr_before(inst, res, s);
    HFSet have = tr_slice(res, s);
    for (const HFSet& c : inst.domain_a.elems()) {
      assignment[0] = c;
      if (eval_formula(uni, inst.psi, assignment) != have.contains(c))
        return false;
    }
  }
  return true;
}

TRInstance tr_instance_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw ParseError("recursion instance must be a JSON object");
  for (const char* key : {"a", "order", "psi", "params"})
    if (!j.contains(key))
      throw ParseError(std::string("recursion instance misses \"") + key +
                       "\"");
  TRInstance inst;
  if (!j["a"].is_string()) throw ParseError("\"a\" must be a set expression");
  inst.domain_a = parse_hf(j["a"].get<std::string>());
  inst.order = relation_from_json(j["order"].dump());
  if (!j["psi"].is_string()) throw ParseError("\"psi\" must be a formula");
  inst.psi = parse_formula(j["psi"].get<std::string>());
  if (!j["params"].is_array())
    throw ParseError("\"params\" must be an array of set expressions");
  for (const auto& p : j["params"]) {
    if (!p.is_string())
      throw ParseError("\"params\" must be an array of set expressions");
    inst.params.push_back(parse_hf(p.get<std::string>()));
  }
  return inst;
}

std::string tr_instance_to_json(const TRInstance& inst) {
  json j;
  j["a"] = format_hf(inst.domain_a);
  j["order"] = json::parse(relation_to_json(inst.order));
  j["psi"] = format_formula(inst.psi);
  json params = json::array();
  for (const HFSet& p : inst.params) params.push_back(format_hf(p));
  j["params"] = params;
  return j.dump();
}

NodeRelation bisim_via_tr(const FiniteTree& t) {
  std::size_t n = t.size();
  HFSet one = von_neumann(1);
  HFSet two = von_neumann(2);
  // Encode every node pair extensionally, child pairs first: one tagged
  // entry per child of either component, holding the table of diagonal
  // probes for its candidate partners. Extensionality quotients pairs
  // with identical child structure into a single stage.
  std::vector<std::size_t> order(n * n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) {
                     std::size_t dx = t.node(x / n).size() + t.node(x % n).size();
                     std::size_t dy = t.node(y / n).size() + t.node(y % n).size();
                     return dx > dy;
                   });
  std::vector<HFSet> enc(n * n);
  std::map<std::uint32_t, int> cls;
  std::vector<HFSet> vals;
  // probe(q) is the exact element the recursion adds for q once the
  // diagonal of q's stage holds: its encoding paired with its stage
  // denotation. Kuratowski injectivity makes the membership test sharp.
  auto probe = [&](std::size_t q) {
    std::size_t k = static_cast<std::size_t>(cls.at(enc[q].id()));
    return kuratowski(enc[q], von_neumann(k));
  };
  for (std::size_t idx : order) {
    std::size_t i = idx / n;
    std::size_t j = idx % n;
    std::vector<HFSet> entries;
    for (std::size_t ci : t.children(i)) {
      std::vector<HFSet> table;
      for (std::size_t cj : t.children(j)) table.push_back(probe(ci * n + cj));
      entries.push_back(kuratowski(one, make_set(std::move(table))));
    }
    for (std::size_t cj : t.children(j)) {
      std::vector<HFSet> table;
      for (std::size_t ci : t.children(i)) table.push_back(probe(ci * n + cj));
      entries.push_back(kuratowski(two, make_set(std::move(table))));
    }
    enc[idx] = make_set(std::move(entries));
    if (cls.emplace(enc[idx].id(), static_cast<int>(vals.size())).second)
      vals.push_back(enc[idx]);
  }
  std::set<std::pair<int, int>> edge_set;
  for (std::size_t idx = 0; idx < n * n; ++idx)
    for (std::size_t ci : t.children(idx / n))
      for (std::size_t cj : t.children(idx % n))
        edge_set.insert({cls.at(enc[ci * n + cj].id()), cls.at(enc[idx].id())});
  std::vector<std::string> labels;
  for (std::size_t k = 0; k < vals.size(); ++k)
    labels.push_back("#" + std::to_string(k));
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& [lo, hi] : edge_set)
    edges.push_back({labels[static_cast<std::size_t>(lo)],
                     labels[static_cast<std::size_t>(hi)]});
  TRInstance inst;
  inst.domain_a = make_set(vals);
  inst.order = make_relation(std::move(labels), std::move(edges));
  // u is a pair of the instance and every tagged entry of u opens, two
  // levels down, onto some diagonal probe settled at an earlier stage
  inst.psi = mk_and(
      mk_member(0, 2),
      mk_forall_in(
          3, 0,
          mk_exists_in(4, 3,
                       mk_exists_in(5, 4, mk_exists_in(6, 5, mk_member(6, 1))))));
  inst.params = {inst.domain_a};
  TrEngine eng(inst);
  NodeRelation out;
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    int k = cls.at(enc[idx].id());
    if (eng.contains(vals[static_cast<std::size_t>(k)], k))
      out.insert({idx / n, idx % n});
  }
  return out;
}

}  // namespace collapse
