#include "collapse/veblen.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <string_view>
#include <utility>

#include "json.hpp"

namespace collapse {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

// Numeral comparison that cannot overflow: strip leading zeros, then
// compare by length and lexicographically.
bool numeral_less(const std::string& a, const std::string& b) {
  std::string_view x{a}, y{b};
  while (x.size() > 1 && x.front() == '0') x.remove_prefix(1);
  while (y.size() > 1 && y.front() == '0') y.remove_prefix(1);
  if (x.size() != y.size()) return x.size() < y.size();
  return x < y;
}

}  // namespace

bool QuasiOrder::has(const std::string& x) const {
  if (elements)
    return std::find(elements->begin(), elements->end(), x) != elements->end();
  return contains && contains(x);
}

QuasiOrder finite_ordinal_order(std::size_t k) {
  auto elems = std::make_shared<std::vector<std::string>>();
  for (std::size_t i = 0; i < k; ++i) elems->push_back(std::to_string(i));
  QuasiOrder q;
  q.elements = *elems;
  q.leq = [](const std::string& a, const std::string& b) {
    if (!all_digits(a) || !all_digits(b))
      throw UsageError("ordinal order: elements are numerals");
    return !numeral_less(b, a);
  };
  q.contains = [elems](const std::string& x) {
    return std::find(elems->begin(), elems->end(), x) != elems->end();
  };
  return q;
}

QuasiOrder reversed_naturals() {
  QuasiOrder q;
  q.leq = [](const std::string& a, const std::string& b) {
    if (!all_digits(a) || !all_digits(b))
      throw UsageError("reversed naturals: elements are numerals");
    return !numeral_less(a, b);
  };
  q.contains = [](const std::string& x) { return all_digits(x); };
  return q;
}

QuasiOrder order_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("order json: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("leq"))
    throw ParseError("order json: expected {\"elements\": [...], \"leq\": [[...]]}");
  if (!j["elements"].is_array() || !j["leq"].is_array())
    throw ParseError("order json: elements and leq must be arrays");
  auto elems = std::make_shared<std::vector<std::string>>();
  auto index = std::make_shared<std::map<std::string, std::size_t>>();
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw ParseError("order json: elements are strings");
    std::string x = e.get<std::string>();
    if (!index->emplace(x, elems->size()).second)
      throw ParseError("order json: duplicate element '" + x + "'");
    elems->push_back(x);
  }
  std::size_t n = elems->size();
  auto mat = std::make_shared<std::vector<char>>(n * n, 0);
  if (j["leq"].size() != n)
    throw ParseError("order json: leq needs one row per element");
  for (std::size_t r = 0; r < n; ++r) {
    const auto& row = j["leq"][r];
    if (!row.is_array() || row.size() != n)
      throw ParseError("order json: leq rows must match the element count");
    for (std::size_t c = 0; c < n; ++c) {
      if (!row[c].is_boolean())
        throw ParseError("order json: leq entries are booleans");
      (*mat)[r * n + c] = row[c].get<bool>() ? 1 : 0;
    }
  }
  QuasiOrder q;
  q.elements = *elems;
  q.leq = [index, mat, n](const std::string& a, const std::string& b) {
    auto i = index->find(a);
    auto j2 = index->find(b);
    if (i == index->end() || j2 == index->end())
      throw UsageError("order: unknown element");
    return (*mat)[i->second * n + j2->second] != 0;
  };
  q.contains = [index](const std::string& x) { return index->count(x) > 0; };
  return q;
}

std::string order_to_json(const QuasiOrder& q) {
  if (!q.finite())
    throw UsageError("order json: only finite orders serialize");
  nlohmann::json j;
  j["elements"] = *q.elements;
  auto rows = nlohmann::json::array();
  for (const auto& a : *q.elements) {
    auto row = nlohmann::json::array();
    for (const auto& b : *q.elements) row.push_back(q.leq(a, b));
    rows.push_back(std::move(row));
  }
  j["leq"] = std::move(rows);
  return j.dump();
}

bool check_quasi_linear(const QuasiOrder& q,
                        const std::vector<std::string>& sample) {
  for (const auto& a : sample)
    if (!q.leq(a, a)) return false;
  for (const auto& a : sample)
    for (const auto& b : sample)
      if (!q.leq(a, b) && !q.leq(b, a)) return false;
  for (const auto& a : sample)
    for (const auto& b : sample)
      for (const auto& c : sample)
        if (q.leq(a, b) && q.leq(b, c) && !q.leq(a, c)) return false;
  return true;
}

VTermPtr vzero() {
  static const VTermPtr z = std::make_shared<VTerm>(VTerm{VKind::Zero, "", 0,
                                                          nullptr, {}});
  return z;
}

VTermPtr vtop(std::string x) {
  if (x.empty()) throw UsageError("phi needs a nonempty element name");
  if (x.find('\'') != std::string::npos)
    throw UsageError("element names may not contain quotes");
  auto t = std::make_shared<VTerm>();
  t->kind = VKind::PhiTop;
  t->x = std::move(x);
  return t;
}

VTermPtr vlow(std::size_t level, VTermPtr t) {
  if (!t) throw UsageError("phi is missing its argument");
  auto r = std::make_shared<VTerm>();
  r->kind = VKind::PhiLow;
  r->level = level;
  r->arg = std::move(t);
  return r;
}

VTermPtr vsum(std::vector<VTermPtr> parts) {
  if (parts.size() < 2) throw UsageError("a sum needs at least two summands");
  for (const auto& p : parts) {
    if (!p) throw UsageError("a summand is missing");
    if (p->kind == VKind::Sum) throw UsageError("sums do not nest");
  }
  auto r = std::make_shared<VTerm>();
  r->kind = VKind::Sum;
  r->parts = std::move(parts);
  return r;
}

bool same_vterm(const VTermPtr& a, const VTermPtr& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case VKind::Zero:
      return true;
    case VKind::PhiTop:
      return a->x == b->x;
    case VKind::PhiLow:
      return a->level == b->level && same_vterm(a->arg, b->arg);
    case VKind::Sum:
      if (a->parts.size() != b->parts.size()) return false;
      for (std::size_t i = 0; i < a->parts.size(); ++i)
        if (!same_vterm(a->parts[i], b->parts[i])) return false;
      return true;
  }
  return false;
}

std::size_t vterm_size(const VTermPtr& t) {
  if (!t) throw UsageError("missing term");
  switch (t->kind) {
    case VKind::Zero:
      return 1;
    case VKind::PhiTop:
      return 2;
    case VKind::PhiLow:
      return 2 + vterm_size(t->arg);
    case VKind::Sum: {
      std::size_t s = 0;
      for (const auto& p : t->parts) s += vterm_size(p);
      return s;
    }
  }
  return 0;
}

void validate_vterm(const VSystem& sys, const VTermPtr& t) {
  if (!t) throw UsageError("missing term");
  switch (t->kind) {
    case VKind::Zero:
      return;
    case VKind::PhiTop:
      if (!sys.lambda.has(t->x))
        throw UsageError("element '" + t->x + "' is not in the base order");
      return;
    case VKind::PhiLow:
      if (t->level >= sys.alpha)
        throw UsageError("phi level " + std::to_string(t->level) +
                         " is not below the system level");
      validate_vterm(sys, t->arg);
      return;
    case VKind::Sum:
      for (const auto& p : t->parts) validate_vterm(sys, p);
      return;
  }
}

namespace {

struct TermParser {
  const std::string& s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("term: " + msg + " at position " + std::to_string(pos));
  }
  void ws() {
    while (pos < s.size() &&
           std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  void expect(char c) {
    ws();
    if (pos >= s.size() || s[pos] != c)
      fail(std::string("expected '") + c + "'");
    ++pos;
  }

  VTermPtr atom() {
    ws();
    if (pos >= s.size()) fail("expected a term");
    if (s[pos] == '0') {
      ++pos;
      return vzero();
    }
    if (s.compare(pos, 3, "phi") == 0) {
      pos += 3;
      expect('(');
      ws();
      if (pos < s.size() && s[pos] == 'T') {
        ++pos;
        expect(',');
        ws();
        if (pos >= s.size() || s[pos] != '\'') fail("expected a quoted element");
        ++pos;
        std::size_t start = pos;
        while (pos < s.size() && s[pos] != '\'') ++pos;
        if (pos >= s.size()) fail("unterminated element quote");
        std::string x = s.substr(start, pos - start);
        ++pos;
        if (x.empty()) fail("empty element name");
        expect(')');
        return vtop(std::move(x));
      }
      std::size_t start = pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
        ++pos;
      if (start == pos) fail("expected a level or T");
      if (pos - start > 9) fail("level out of range");
      std::size_t level = std::stoul(s.substr(start, pos - start));
      expect(',');
      auto arg = term();
      expect(')');
      return vlow(level, std::move(arg));
    }
    fail("expected '0' or 'phi'");
  }

  VTermPtr term() {
    std::vector<VTermPtr> parts{atom()};
    while (true) {
      ws();
      if (pos < s.size() && s[pos] == '+') {
        ++pos;
        parts.push_back(atom());
      } else {
        break;
      }
    }
    if (parts.size() == 1) return parts[0];
    return vsum(std::move(parts));
  }
};

}  // namespace

VTermPtr parse_vterm(const std::string& text) {
  TermParser p{text};
  auto t = p.term();
  p.ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return t;
}

std::string format_vterm(const VTermPtr& t) {
  if (!t) throw UsageError("missing term");
  switch (t->kind) {
    case VKind::Zero:
      return "0";
    case VKind::PhiTop:
      return "phi(T, '" + t->x + "')";
    case VKind::PhiLow:
      return "phi(" + std::to_string(t->level) + ", " + format_vterm(t->arg) +
             ")";
    case VKind::Sum: {
      std::string out;
      for (std::size_t i = 0; i < t->parts.size(); ++i) {
        if (i) out += " + ";
        out += format_vterm(t->parts[i]);
      }
      return out;
    }
  }
  return "";
}

std::optional<std::string> h_lambda(const VSystem& sys, const VTermPtr& t) {
  if (!t) throw UsageError("missing term");
  std::optional<std::string> best;
  auto visit = [&](auto&& self, const VTermPtr& u) -> void {
    switch (u->kind) {
      case VKind::Zero:
        return;
      case VKind::PhiTop:
        if (!best || (sys.lambda.leq(*best, u->x) &&
                      !sys.lambda.leq(u->x, *best)))
          best = u->x;
        return;
      case VKind::PhiLow:
        self(self, u->arg);
        return;
      case VKind::Sum:
        for (const auto& p : u->parts) self(self, p);
        return;
    }
  };
  visit(visit, t);
  return best;
}

namespace {

// Sum comparison: a weakly increasing assignment of left summands to
// right summands, where a match that is equivalent (not just below) has
// to advance past its image. dp[i][j] says whether ts[i..] embeds with
// images at or after j.
bool sum_embed(const VSystem& sys, const std::vector<VTermPtr>& ts,
               const std::vector<VTermPtr>& ss) {
  std::size_t n = ts.size(), m = ss.size();
  std::vector<char> fwd(n * m), back(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      fwd[i * m + k] = vleq(sys, ts[i], ss[k]) ? 1 : 0;
      back[i * m + k] = vleq(sys, ss[k], ts[i]) ? 1 : 0;
    }
  }
  std::vector<std::vector<char>> dp(n + 1, std::vector<char>(m + 1, 0));
  for (std::size_t j = 0; j <= m; ++j) dp[n][j] = 1;
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = m; j-- > 0;) {
      char ok = dp[i][j + 1];
      if (!ok && fwd[i * m + j])
        ok = dp[i + 1][back[i * m + j] ? j + 1 : j];
      dp[i][j] = ok;
    }
  }
  return dp[0][0] != 0;
}

}  // namespace

bool vleq(const VSystem& sys, const VTermPtr& t, const VTermPtr& s) {
  if (!t || !s) throw UsageError("missing term");
  if (t->kind == VKind::Zero) return true;
  if (t->kind == VKind::Sum || s->kind == VKind::Sum) {
    const std::vector<VTermPtr> one_t{t}, one_s{s};
    const auto& ts = t->kind == VKind::Sum ? t->parts : one_t;
    const auto& ss = s->kind == VKind::Sum ? s->parts : one_s;
    return sum_embed(sys, ts, ss);
  }
  if (t->kind == VKind::PhiTop) {
    auto h = h_lambda(sys, s);
    return h.has_value() && sys.lambda.leq(t->x, *h);
  }
  // t is a lower-level phi.
  if (s->kind == VKind::Zero) return false;
  if (s->kind == VKind::PhiTop) return vleq(sys, t->arg, s);
  if (t->level < s->level) return vleq(sys, t->arg, s);
  if (t->level == s->level) return vleq(sys, t->arg, s->arg);
  return vleq(sys, t, s->arg);
}

bool vlt(const VSystem& sys, const VTermPtr& t, const VTermPtr& s) {
  return vleq(sys, t, s) && !vleq(sys, s, t);
}

bool vequiv(const VSystem& sys, const VTermPtr& t, const VTermPtr& s) {
  return vleq(sys, t, s) && vleq(sys, s, t);
}

namespace {

int term_compare(const VNFOrdinal::Term& p, const VNFOrdinal::Term& q) {
  int c = vnf_compare(p.a, q.a);
  if (c == 0) return vnf_compare(p.b, q.b);
  if (c < 0) {
    // The right term is a fixed point of the left one's level.
    VNFOrdinal w;
    w.sum.push_back(q);
    return vnf_compare(p.b, w);
  }
  VNFOrdinal w;
  w.sum.push_back(p);
  return -vnf_compare(q.b, w);
}

}  // namespace

VNFOrdinal vnf_nat(std::size_t n) {
  VNFOrdinal r;
  r.sum.assign(n, VNFOrdinal::Term{});
  return r;
}

int vnf_compare(const VNFOrdinal& x, const VNFOrdinal& y) {
  std::size_t n = std::min(x.sum.size(), y.sum.size());
  for (std::size_t i = 0; i < n; ++i) {
    int c = term_compare(x.sum[i], y.sum[i]);
    if (c != 0) return c;
  }
  if (x.sum.size() == y.sum.size()) return 0;
  return x.sum.size() < y.sum.size() ? -1 : 1;
}

VNFOrdinal vnf_add(const VNFOrdinal& x, const VNFOrdinal& y) {
  if (y.sum.empty()) return x;
  VNFOrdinal r;
  for (const auto& t : x.sum) {
    if (term_compare(t, y.sum.front()) < 0) break;
    r.sum.push_back(t);
  }
  r.sum.insert(r.sum.end(), y.sum.begin(), y.sum.end());
  return r;
}

VNFOrdinal vnf_phi(const VNFOrdinal& a, const VNFOrdinal& b) {
  if (b.sum.size() == 1 && vnf_compare(b.sum.front().a, a) > 0) return b;
  VNFOrdinal r;
  r.sum.push_back(VNFOrdinal::Term{a, b});
  return r;
}

std::string vnf_to_string(const VNFOrdinal& x) {
  if (x.sum.empty()) return "0";
  std::string out;
  for (std::size_t i = 0; i < x.sum.size(); ++i) {
    if (i) out += " + ";
    out += "phi(" + vnf_to_string(x.sum[i].a) + ", " +
           vnf_to_string(x.sum[i].b) + ")";
  }
  return out;
}

VNFOrdinal vterm_value(const VSystem& sys, const VTermPtr& t) {
  if (!t) throw UsageError("missing term");
  switch (t->kind) {
    case VKind::Zero:
      return {};
    case VKind::PhiTop: {
      if (!all_digits(t->x) || t->x.size() > 9)
        throw UsageError("values need a finite ordinal base order");
      return vnf_phi(vnf_nat(sys.alpha), vnf_nat(std::stoul(t->x)));
    }
    case VKind::PhiLow:
      return vnf_phi(vnf_nat(t->level), vterm_value(sys, t->arg));
    case VKind::Sum: {
      VNFOrdinal r;
      for (const auto& p : t->parts) r = vnf_add(r, vterm_value(sys, p));
      return r;
    }
  }
  return {};
}

std::vector<std::string> normal_form0(const VSystem& sys, const VTermPtr& t) {
  if (sys.alpha != 0)
    throw UsageError("normal forms live in level zero systems");
  validate_vterm(sys, t);
  std::vector<std::string> out;
  auto push = [&](const std::string& x) {
    while (!out.empty() && sys.lambda.leq(out.back(), x) &&
           !sys.lambda.leq(x, out.back()))
      out.pop_back();
    out.push_back(x);
  };
  switch (t->kind) {
    case VKind::Zero:
      break;
    case VKind::PhiTop:
      push(t->x);
      break;
    case VKind::Sum:
      for (const auto& p : t->parts) {
        if (p->kind == VKind::Zero)
          throw UsageError("a sum with a zero summand has no normal form");
        push(p->x);
      }
      break;
    case VKind::PhiLow:
      break;  // unreachable: validation rejects lower phis at level zero
  }
  return out;
}

DescentResult descending_transfer(const VSystem& sys,
                                  const std::vector<VTermPtr>& stream,
                                  std::size_t lookahead) {
  if (sys.alpha != 0)
    throw UsageError("descent transfer works over level zero systems");
  if (lookahead == 0) throw UsageError("lookahead must be positive");
  if (stream.size() < lookahead)
    throw UsageError("stream is shorter than the lookahead window");
  std::size_t N = lookahead;
  for (std::size_t i = 0; i < N; ++i) validate_vterm(sys, stream[i]);
  for (std::size_t i = 0; i + 1 < N; ++i) {
    if (!vlt(sys, stream[i + 1], stream[i]))
      throw UsageError("stream is not strictly descending");
  }
  DescentResult res;
  if (N < 2) return res;

  std::vector<std::vector<std::string>> nf;
  nf.reserve(N);
  std::size_t width = 0;
  for (std::size_t i = 0; i < N; ++i) {
    nf.push_back(normal_form0(sys, stream[i]));
    width = std::max(width, nf.back().size());
  }
  const auto& lam = sys.lambda;
  auto at = [&](std::size_t i, std::size_t n) -> const std::string* {
    return i < nf[n].size() ? &nf[n][i] : nullptr;
  };
  auto lt = [&](const std::string& a, const std::string& b) {
    return lam.leq(a, b) && !lam.leq(b, a);
  };
  auto eq = [&](const std::string& a, const std::string& b) {
    return lam.leq(a, b) && lam.leq(b, a);
  };

  // First case: some coordinate is still falling at the window's edge
  // after at least two visible drops, so it is read as non-stabilizing
  // and its maximal descending suffix is the answer.
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t drops = 0;
    for (std::size_t n = 0; n + 1 < N; ++n) {
      const std::string* a = at(i, n);
      const std::string* b = at(i, n + 1);
      if (a && b && lt(*b, *a)) ++drops;
    }
    const std::string* edge_a = at(i, N - 2);
    const std::string* edge_b = at(i, N - 1);
    if (drops < 2 || !edge_a || !edge_b || !lt(*edge_b, *edge_a)) continue;
    std::size_t start = N - 1;
    while (start > 0) {
      const std::string* prev = at(i, start - 1);
      if (!prev || !lt(*at(i, start), *prev)) break;
      --start;
    }
    if (N - start >= 2) {
      res.resolved = true;
      res.via_diagonal = false;
      for (std::size_t n = start; n < N; ++n) res.descent.push_back(*at(i, n));
      return res;
    }
  }

  // Second case: every coordinate is presumed settled; the diagonal of
  // the settling points descends. Stop at the first coordinate that
  // never settles inside the window, settles to nothing, or fails to
  // continue the strict descent.
  auto stable_from = [&](std::size_t j, std::size_t n) {
    for (std::size_t m = n; m + 1 < N; ++m) {
      const std::string* a = at(j, m);
      const std::string* b = at(j, m + 1);
      if ((a == nullptr) != (b == nullptr)) return false;
      if (a && b && !eq(*a, *b)) return false;
    }
    return true;
  };
  std::vector<std::string> diag;
  std::size_t prev = 0;
  for (std::size_t i = 0;; ++i) {
    std::size_t n = i == 0 ? 0 : prev + 1;
    for (; n < N; ++n) {
      bool ok = true;
      for (std::size_t j = 0; j <= i && ok; ++j) ok = stable_from(j, n);
      if (ok) break;
    }
    if (n >= N) break;
    const std::string* v = at(i, n);
    if (!v) break;
    if (!diag.empty() && !lt(*v, diag.back())) break;
    diag.push_back(*v);
    prev = n;
  }
  if (diag.size() >= 2) {
    res.resolved = true;
    res.via_diagonal = true;
    res.descent = std::move(diag);
  }
  return res;
}

std::vector<VTermPtr> enumerate_vterms(const VSystem& sys,
                                       std::size_t max_size) {
  if (!sys.lambda.finite())
    throw UsageError("enumeration needs a finite base order");
  // atoms[s]: the non-sum, non-zero terms of size exactly s; all[s]
  // additionally carries zero and the sums; seqs[s]: summand sequences
  // of total size s. Each size is finished, sums included, before any
  // larger size consumes it as a phi argument.
  std::vector<std::vector<VTermPtr>> atoms(max_size + 1), all(max_size + 1);
  std::vector<std::vector<std::vector<VTermPtr>>> seqs(max_size + 1);
  if (max_size >= 1) all[1].push_back(vzero());
  for (std::size_t s = 2; s <= max_size; ++s) {
    if (s == 2)
      for (const auto& x : *sys.lambda.elements) atoms[s].push_back(vtop(x));
    for (std::size_t level = 0; level < sys.alpha; ++level)
      for (const auto& t : all[s - 2]) atoms[s].push_back(vlow(level, t));
    for (const auto& a : atoms[s]) seqs[s].push_back({a});
    for (std::size_t head = 2; head + 2 <= s; ++head) {
      for (const auto& a : atoms[head]) {
        for (const auto& tail : seqs[s - head]) {
          std::vector<VTermPtr> run{a};
          run.insert(run.end(), tail.begin(), tail.end());
          seqs[s].push_back(std::move(run));
        }
      }
    }
    all[s] = atoms[s];
    for (const auto& run : seqs[s])
      if (run.size() >= 2) all[s].push_back(vsum(run));
  }

  std::vector<VTermPtr> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    std::vector<std::pair<std::string, VTermPtr>> keyed;
    keyed.reserve(all[s].size());
    for (const auto& t : all[s]) keyed.emplace_back(format_vterm(t), t);
    std::sort(keyed.begin(), keyed.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& kv : keyed) out.push_back(std::move(kv.second));
  }
  return out;
}

RestrictIso restrict_iso(const VSystem& sys, const std::string& x,
                         std::size_t max_size) {
  if (!sys.lambda.finite())
    throw UsageError("restriction needs a finite base order");
  if (!sys.lambda.has(x))
    throw UsageError("element '" + x + "' is not in the base order");
  RestrictIso iso;
  auto elems = std::make_shared<std::vector<std::string>>();
  for (const auto& e : *sys.lambda.elements)
    if (sys.lambda.leq(e, x) && !sys.lambda.leq(x, e)) elems->push_back(e);
  iso.restricted.elements = *elems;
  iso.restricted.leq = sys.lambda.leq;
  iso.restricted.contains = [elems](const std::string& e) {
    return std::find(elems->begin(), elems->end(), e) != elems->end();
  };
  auto bound = vtop(x);
  for (const auto& t : enumerate_vterms(sys, max_size))
    if (vlt(sys, t, bound)) iso.below.push_back(t);
  VSystem rsys{sys.alpha, iso.restricted};
  iso.over = enumerate_vterms(rsys, max_size);
  return iso;
}

}  // namespace collapse
