#include "collapse/constructible.hpp"

#include <string>
#include <utility>

#include "collapse/relation.hpp"

namespace collapse {

HFSet definable_subset(const HFSet& a, const FormulaPtr& f,
                       const std::vector<HFSet>& params) {
  for (const HFSet& p : params)
    if (!a.contains(p))
      throw UsageError("parameter outside the structure");
  int top = max_free_var(f);
  if (top > static_cast<int>(params.size()))
    throw UsageError("free variable " + std::to_string(top) +
                     " not covered by the parameters");
  std::vector<HFSet> asg;
  asg.reserve(params.size() + 1);
  asg.push_back(HFSet());
  asg.insert(asg.end(), params.begin(), params.end());
  std::vector<HFSet> cut;
  for (const HFSet& s : a.elems()) {
    asg[0] = s;
    if (eval_formula(a, f, asg)) cut.push_back(s);
  }
  return make_set(std::move(cut));
}

HFSet def_set(const HFSet& a) { return finite_powerset(a); }

HFSet def_set_enumerated(const HFSet& a, std::size_t max_size) {
  if (a.card() > 3)
    throw SizeLimitError("definability audit refused for cardinality " +
                         std::to_string(a.card()));
  if (max_size > 9)
    throw SizeLimitError("definability audit refused for formula size " +
                         std::to_string(max_size));
  // The enumeration grows twentyfold per size step, so sizes are
  // materialized one at a time and the scan stops as soon as every
  // subset has shown up. Disjunctions of parameter equalities deliver
  // saturation by size five at these cardinalities; past that the batch
  // itself would be the size problem.
  const std::size_t batch_limit = 5;
  HFSet target = finite_powerset(a);
  HFSet collected;
  for (std::size_t bound = 1; bound <= max_size; ++bound) {
    if (bound > batch_limit)
      throw SizeLimitError(
          "definability audit would need formulas past size " +
          std::to_string(batch_limit));
    for (const FormulaPtr& f : enumerate_formulas(bound)) {
      if (formula_size(f) != bound) continue;
      int top = max_free_var(f);
      std::size_t m = top < 1 ? 0 : static_cast<std::size_t>(top);
      if (m > 0 && a.empty()) continue;
      std::vector<std::size_t> odo(m, 0);
      while (true) {
        std::vector<HFSet> params;
        params.reserve(m);
        for (std::size_t k = 0; k < m; ++k)
          params.push_back(a.elems()[odo[k]]);
        collected = adjoin(collected, definable_subset(a, f, params));
        if (collected == target) return collected;
        std::size_t k = 0;
        for (; k < m; ++k) {
          if (++odo[k] < a.card()) break;
          odo[k] = 0;
        }
        if (k == m) break;
      }
    }
  }
  return collected;
}

LevelSequence l_level(const HFSet& b, std::size_t n) {
  LevelSequence out;
  out.levels.reserve(n + 1);
  out.levels.push_back(transitive_closure(b));
  for (std::size_t k = 0; k < n; ++k)
    out.levels.push_back(def_set(out.levels.back()));
  return out;
}

std::map<HFSet, HFSet> rank_function(const HFSet& x) {
  HFSet cone = transitive_closure(singleton(x));
  std::vector<std::string> labels;
  labels.reserve(cone.card());
  for (const HFSet& u : cone.elems()) labels.push_back(format_hf(u));
  std::vector<std::pair<std::string, std::string>> edges;
  for (std::size_t j = 0; j < cone.card(); ++j)
    for (const HFSet& w : transitive_closure(cone.elems()[j]).elems())
      edges.emplace_back(format_hf(w), labels[j]);
  auto collapsed =
      collapse_relation(make_relation(std::move(labels), std::move(edges)));
  std::map<HFSet, HFSet> out;
  for (std::size_t k = 0; k < collapsed.size(); ++k)
    out.emplace(cone.elems()[k], collapsed[k].second);
  return out;
}

}  // namespace collapse
