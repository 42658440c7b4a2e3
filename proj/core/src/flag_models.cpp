#include "hilbloc/flag_models.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hilbloc/quotient.hpp"

namespace hilbloc {

// ---------------------------------------------------------------- patterns

void FlagPattern::validate() const {
  if (m < 1) throw Error("m must be positive");
  if (indices.empty()) throw Error("empty flag pattern");
  if (levels() > m) throw Error("pattern longer than m");
  for (int j = 0; j < levels(); ++j) {
    int i = indices[j];
    if (i < 1 || i > m - j)
      throw Error("index " + std::to_string(i) + " at colength " + std::to_string(m - j) +
                  " out of range");
    if (j + 1 < levels()) {
      int step = i - indices[j + 1];
      if (step != 0 && step != 1) throw Error("index steps must be 0 or 1 in " + to_string());
    }
  }
}

DeformShape FlagPattern::shape(int level, bool relative) const {
  return DeformShape{m - level, indices[level], relative, level};
}

std::vector<Block> FlagPattern::blocks() const {
  std::vector<Block> out;
  int n = levels();
  for (int j = 0; j < n;) {
    int r = j;
    while (r + 1 < n && indices[r + 1] == indices[j]) ++r;
    int len = r - j + 1;
    if (len >= 2) {
      out.push_back({'A', len});
    } else if (!out.empty() && out.back().kind == 'B') {
      ++out.back().length;
    } else {
      out.push_back({'B', 1});
    }
    j = r + 1;
  }
  return out;
}

std::string FlagPattern::word() const {
  std::string w;
  for (auto& b : blocks()) w += std::string(1, b.kind) + std::to_string(b.length);
  return w;
}

std::string FlagPattern::to_string() const {
  std::string s = "(" + std::to_string(m) + ";";
  for (size_t j = 0; j < indices.size(); ++j) s += (j ? "," : " ") + std::to_string(indices[j]);
  return s + ")";
}

FlagPattern FlagPattern::mirror() const {
  FlagPattern p{m, {}};
  for (int j = 0; j < levels(); ++j) p.indices.push_back(m - j - indices[j] + 1);
  return p;
}

FlagPattern FlagPattern::parse(const std::string& text) {
  auto semi = text.find(';');
  if (semi == std::string::npos) throw Error("pattern must look like m;i0,i1,...");
  FlagPattern p;
  try {
    p.m = std::stoi(text.substr(0, semi));
    std::stringstream ss(text.substr(semi + 1));
    std::string tok;
    while (std::getline(ss, tok, ',')) p.indices.push_back(std::stoi(tok));
  } catch (const std::logic_error&) {
    throw Error("pattern must look like m;i0,i1,...");
  }
  p.validate();
  return p;
}

// ---------------------------------------------------------------- names

namespace {

struct Key {
  char letter;
  int level;
  int index;
};

std::optional<Key> parse_key(const std::string& n) {
  auto caret = n.find('^'), us = n.find('_');
  if (n.size() < 5 || caret != 1 || us == std::string::npos || us < 3) return std::nullopt;
  try {
    return Key{n[0], std::stoi(n.substr(2, us - 2)), std::stoi(n.substr(us + 1))};
  } catch (const std::logic_error&) {
    return std::nullopt;
  }
}

// letter, then level, then index; s and unknown names last
std::tuple<int, int, int, std::string> sort_key(const std::string& n) {
  if (auto k = parse_key(n)) return {k->letter, k->level, k->index, ""};
  return {1000, 0, 0, n};
}

std::string name_of(char letter, int level, int index) {
  return std::string(1, letter) + "^" + std::to_string(level) + "_" + std::to_string(index);
}

struct Tops {
  int at, bt, ct, dt;  // top indices of a, b, c, d
};

Tops tops(const FlagPattern& p, int level) {
  int n = p.colength(level), i = p.indices[level];
  return {n - i, i - 1, n - i, i - 1};
}

// Names of the top coefficients with b_0 = a_0 and d_0 = c_0.
std::string a_top(const FlagPattern& p, int j) { return name_of('a', j, tops(p, j).at); }
std::string c_top(const FlagPattern& p, int j) { return name_of('c', j, tops(p, j).ct); }
std::string b_top(const FlagPattern& p, int j) {
  int bt = tops(p, j).bt;
  return bt >= 1 ? name_of('b', j, bt) : name_of('a', j, 0);
}
std::string d_top(const FlagPattern& p, int j) {
  int dt = tops(p, j).dt;
  return dt >= 1 ? name_of('d', j, dt) : name_of('c', j, 0);
}

std::vector<std::string> all_names(const FlagPattern& p) {
  std::vector<std::string> names;
  for (int j = 0; j < p.levels(); ++j)
    for (auto& n : coeff_names(p.shape(j, true))) names.push_back(n);
  names.push_back("s");
  return names;
}

Poly rehost_all(const Poly& e, const PolyRingPtr& ring) { return e.rehost(ring); }

}  // namespace

// ---------------------------------------------------------------- relations

RelationSet derive_nesting_relations(DeformShape outer, DeformShape inner) {
  if (!outer.level && !inner.level) {
    outer.level = 0;
    inner.level = 1;
  }
  if (outer.level == inner.level) throw Error("nested shapes need different level tags");
  outer.validate();
  inner.validate();
  if (inner.m != outer.m - 1) throw Error("inner colength must be one less than outer");
  if (inner.i != outer.i && inner.i != outer.i - 1)
    throw Error("invalid index step from " + std::to_string(outer.i) + " to " +
                std::to_string(inner.i));
  if (inner.relative != outer.relative) throw Error("mixed absolute and relative shapes");
  auto names = coeff_names(outer);
  for (auto& n : coeff_names(inner)) names.push_back(n);
  if (outer.relative) names.push_back("s");
  auto A = CoeffAlgebra::free(names);
  GenericIdeal go = generic_ideal(outer, A), gi = generic_ideal(inner, A);
  RelationSet rs{A->params(), standard_coefficients(go.f, inner, gi)};
  for (auto& q : standard_coefficients(go.g, inner, gi)) rs.equations.push_back(q);
  rs.canonicalize();
  return rs;
}

RelationSet derived_consequences(const RelationSet& nesting) {
  RelationSet out{nesting.ring, {}};
  if (nesting.equations.empty()) return out;
  const PolyRing& R = *nesting.ring;
  // level -> (top a index, top b index)
  std::map<int, std::pair<int, int>> seen;
  bool relative = false;
  for (auto& n : R.names()) {
    if (n == "s") {
      relative = true;
      continue;
    }
    auto k = parse_key(n);
    if (!k) throw Error("unexpected coefficient name " + n);
    auto& [am, bm] = seen[k->level];
    if (k->letter == 'a') am = std::max(am, k->index);
    if (k->letter == 'b') bm = std::max(bm, k->index);
  }
  if (seen.size() != 2) throw Error("nesting relations must involve exactly two levels");
  std::vector<DeformShape> sh;
  for (auto& [lev, tb] : seen) sh.push_back({tb.first + tb.second + 1, tb.second + 1, relative, lev});
  if (sh[0].m < sh[1].m) std::swap(sh[0], sh[1]);
  const DeformShape& outer = sh[0];

  // solve each nesting equation for an outer coefficient occurring linearly
  std::map<size_t, Poly> rules;
  for (auto& e : nesting.equations) {
    std::optional<size_t> head;
    for (size_t v : e.support()) {
      auto k = parse_key(R.name(v));
      if (!k || k->level != *outer.level || rules.count(v)) continue;
      if (!e.linear_coefficient(v)) continue;
      if (!head || sort_key(R.name(v)) < sort_key(R.name(*head))) head = v;
    }
    if (!head) continue;
    Rational c = *e.linear_coefficient(*head);
    Poly v = Poly::variable(nesting.ring, *head);
    rules.emplace(*head, (e - v.scaled(c)).scaled(Rational(-1) / c));
  }
  auto rewrite = [&](Poly p) {
    for (int round = 0; round < 8; ++round) {
      bool any = false;
      for (auto& [v, _] : rules) any |= p.uses(v);
      if (!any) break;
      p = p.substitute(rules);
    }
    return p;
  };
  out.equations = nesting.equations;
  for (auto& s : sh)
    for (auto& e : derive_flat_relations(s).equations)
      out.equations.push_back(rewrite(e.rehost(nesting.ring)));
  out.canonicalize();
  return out;
}

std::vector<std::string> retained_params(const FlagPattern& p) {
  p.validate();
  int n = p.levels();
  std::vector<std::string> out;
  auto add = [&](const std::string& s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (int j = 0; j < n; ++j) {
    Tops t = tops(p, j);
    if (j == n - 1) {
      for (int k = 1; k <= t.at; ++k) add(name_of('a', j, k));
      for (int k = 1; k <= t.dt; ++k) add(name_of('d', j, k));
      if (n == 1) {
        add(b_top(p, j));
        add(c_top(p, j));
      } else if (p.same_step(j - 1)) {
        add(b_top(p, j));
      } else {
        add(c_top(p, j));
      }
      continue;
    }
    bool next_same = p.same_step(j);
    bool first = j == 0;
    bool prev_same = !first && p.same_step(j - 1);
    if (next_same) {
      add(a_top(p, j));
      if (!prev_same) add(c_top(p, j));
    } else {
      add(d_top(p, j));
      if (first || prev_same) add(b_top(p, j));
    }
  }
  return out;
}

RelationSet flag_relations(const FlagPattern& p) {
  p.validate();
  RelationSet rs{make_ring(all_names(p)), {}};
  for (int j = 0; j < p.levels(); ++j)
    for (auto& e : derive_flat_relations(p.shape(j, true)).equations)
      rs.equations.push_back(rehost_all(e, rs.ring));
  for (int j = 0; j + 1 < p.levels(); ++j)
    for (auto& e : derive_nesting_relations(p.shape(j, true), p.shape(j + 1, true)).equations)
      rs.equations.push_back(rehost_all(e, rs.ring));
  rs.canonicalize();
  return rs;
}

// ---------------------------------------------------------------- elimination

namespace {

// Each eliminated name as a polynomial in the names never eliminated.
std::map<std::string, Poly> resolve_trace(const std::vector<EliminationStep>& trace) {
  std::map<std::string, Poly> out;
  std::map<size_t, Poly> later;
  for (auto it = trace.rbegin(); it != trace.rend(); ++it) {
    Poly e = later.empty() ? it->expr : it->expr.substitute(later);
    out.emplace(it->var, e);
    later.emplace(*e.ring()->index(it->var), e);
  }
  return out;
}

std::vector<Poly> prune_locally(const PolyRingPtr& ring, std::vector<Poly> eqs,
                                 const GroebnerOptions& opt) {
  std::vector<Poly> uniq;
  for (auto& e : eqs) {
    if (e.is_zero()) continue;
    Poly q = e.monic();
    if (std::find(uniq.begin(), uniq.end(), q) == uniq.end()) uniq.push_back(q);
  }
  std::sort(uniq.begin(), uniq.end(), [](const Poly& a, const Poly& b) { return Poly::less(a, b); });
  // Grow a small generating set first; the removal pass below then only
  // works on equations that were needed at some point.
  std::vector<Poly> grown;
  std::optional<GroebnerBasis> G;
  for (auto& e : uniq) {
    if (G && local_contains(*G, e, opt)) continue;
    grown.push_back(e);
    G = buchberger(ring, grown, opt);
  }
  // Full codimension: every component through 0 has codimension |grown|, so
  // none of the equations is locally redundant.
  if (G && !G->is_unit() &&
      ideal_dim(*G) == static_cast<int>(ring->nvars()) - static_cast<int>(grown.size()))
    return grown;
  uniq = std::move(grown);
  for (size_t k = uniq.size(); k-- > 0;) {
    std::vector<Poly> rest;
    for (size_t j = 0; j < uniq.size(); ++j)
      if (j != k) rest.push_back(uniq[j]);
    if (rest.empty()) break;
    if (local_contains(buchberger(ring, rest, opt), uniq[k], opt)) uniq.erase(uniq.begin() + k);
  }
  return uniq;
}

}  // namespace

LocalModel local_model(const FlagPattern& p, bool relative) {
  RelationSet all = flag_relations(p);
  const PolyRingPtr& R = all.ring;
  auto params = retained_params(p);
  std::vector<bool> keep(R->nvars(), false);
  for (auto& n : params) keep[*R->index(n)] = true;
  size_t s = *R->index("s");

  std::vector<Poly> eqs = all.equations;
  std::vector<EliminationStep> trace;
  std::vector<bool> gone(R->nvars(), false);
  auto pick = [&](bool only_s) -> std::optional<std::pair<size_t, size_t>> {
    std::optional<std::pair<size_t, size_t>> best;  // (var, equation)
    for (size_t k = 0; k < eqs.size(); ++k) {
      for (size_t v : eqs[k].support()) {
        if (keep[v] || (v == s) != only_s) continue;
        if (!eqs[k].linear_coefficient(v)) continue;
        if (!best) {
          best = {v, k};
          continue;
        }
        auto [bv, bk] = *best;
        if (v != bv) {
          if (sort_key(R->name(v)) < sort_key(R->name(bv))) best = {v, k};
          continue;
        }
        const Poly &a = eqs[k], &b = eqs[bk];
        if (a.size() < b.size() || (a.size() == b.size() && Poly::less(a, b))) best = {v, k};
      }
    }
    return best;
  };
  for (;;) {
    auto choice = pick(false);
    if (!choice) choice = pick(true);
    if (!choice) break;
    auto [v, k] = *choice;
    Poly e = eqs[k];
    Rational c = *e.linear_coefficient(v);
    Poly expr = (e - Poly::variable(R, v).scaled(c)).scaled(Rational(-1) / c);
    trace.push_back({R->name(v), expr});
    gone[v] = true;
    eqs.erase(eqs.begin() + k);
    std::vector<Poly> next;
    for (auto& q : eqs) {
      Poly r = q.uses(v) ? q.substitute(v, expr) : q;
      if (!r.is_zero()) next.push_back(std::move(r));
    }
    eqs = std::move(next);
  }

  std::vector<std::string> stuck;
  for (size_t v = 0; v < R->nvars(); ++v)
    if (!keep[v] && !gone[v]) stuck.push_back(R->name(v));
  if (!stuck.empty()) {
    std::string msg = "elimination stalled for " + p.to_string() + " on";
    for (auto& n : stuck) msg += " " + n;
    std::vector<Poly> offending;
    for (auto& q : eqs) {
      bool hit = false;
      for (size_t v : q.support()) hit |= !keep[v];
      if (hit) offending.push_back(q);
    }
    msg += offending.empty() ? " (unconstrained)" : "; equations:";
    for (auto& q : offending) msg += " [" + q.to_string() + "]";
    throw EliminationStall(msg);
  }

  LocalModel lm;
  lm.pattern = p;
  lm.relative = relative;
  lm.params = params;
  lm.ring = make_ring(params);
  lm.full_ring = R;
  lm.trace = trace;
  std::vector<Poly> residual;
  for (auto& q : eqs) residual.push_back(q.rehost(lm.ring));
  if (!relative) {
    auto resolved = resolve_trace(trace);
    residual.push_back(resolved.at("s").rehost(lm.ring));
  }
  lm.equations = prune_locally(lm.ring, residual, GroebnerOptions{});
  lm.ambient_dim = static_cast<int>(params.size());
  return lm;
}

// ---------------------------------------------------------------- expected models

namespace {

// Coefficient values of an expected model: parameters, defined quantities,
// and the single-level flatness relations for the rest.
class Expected {
 public:
  explicit Expected(const FlagPattern& p) : p_(p), params_(retained_params(p)) {
    ring_ = make_ring(params_);
  }

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<std::string>& params() const { return params_; }
  Poly one() const { return Poly::constant(ring_, 1); }

  Poly val(char letter, int level, int t) const {
    Tops tp = tops(p_, level);
    int i = p_.indices[level];
    switch (letter) {
      case 'a':
        if (t == tp.at + 1) return one();
        if (t < 0 || t > tp.at) return Poly(ring_);
        return lookup(name_of('a', level, t));
      case 'b':
        if (t == 0) return val('a', level, 0);
        if (t < 0 || t >= i) return Poly(ring_);
        return lookup(name_of('b', level, t));
      case 'c':
        if (t < 0 || t > tp.ct) return Poly(ring_);
        return lookup(name_of('c', level, t));
      case 'd':
        if (t == i) return one();
        if (t == 0) return val('c', level, 0);
        if (t < 0 || t > i) return Poly(ring_);
        return lookup(name_of('d', level, t));
    }
    throw std::invalid_argument("unknown coefficient letter");
  }

  Poly A(int j) const { return val('a', j, tops(p_, j).at); }
  Poly B(int j) const { return val('b', j, tops(p_, j).bt); }
  Poly C(int j) const { return val('c', j, tops(p_, j).ct); }
  Poly D(int j) const { return val('d', j, tops(p_, j).dt); }
  Poly Delta(int e) const { return A(e) - A(e + 1); }  // along equal steps
  Poly delta(int e) const { return D(e) - D(e + 1); }  // along drops

  void define(const std::string& name, Poly value) {
    aux_.emplace(name, value);
    order_.push_back({name, value});
  }
  const std::vector<EliminationStep>& defined() const { return order_; }

 private:
  const FlagPattern& p_;
  std::vector<std::string> params_;
  PolyRingPtr ring_;
  std::map<std::string, Poly> aux_;
  std::vector<EliminationStep> order_;

  Poly lookup(const std::string& name) const {
    if (ring_->index(name)) return Poly::variable(ring_, name);
    if (auto it = aux_.find(name); it != aux_.end()) return it->second;
    Key k = *parse_key(name);
    int j = k.level, t = k.index;
    Tops tp = tops(p_, j);
    int i = p_.indices[j];
    // c_t = c_top a_{t+1}, b_t = b_top d_{t+1}, a_0 = b_top d_1
    if (k.letter == 'c' && t < tp.ct) return C(j) * val('a', j, t + 1);
    if (k.letter == 'b' && t < tp.bt) return B(j) * val('d', j, t + 1);
    if (k.letter == 'a' && t == 0 && i >= 2) return B(j) * val('d', j, 1);
    bool is_b_top = (k.letter == 'b' && t == tp.bt) || (k.letter == 'a' && t == 0 && i == 1);
    bool is_c_top = k.letter == 'c' && t == tp.ct;
    // top coefficients passed down one level: c' = c (a - a'), b' = b (d - d')
    if (j > 0 && is_c_top && p_.same_step(j - 1)) return C(j - 1) * Delta(j - 1);
    if (j > 0 && is_b_top && !p_.same_step(j - 1)) return B(j - 1) * delta(j - 1);
    throw std::logic_error("expected model has no value for " + name);
  }
};

Poly product(int lo, int hi, const std::function<Poly(int)>& f, const Poly& one) {
  Poly r = one;
  for (int e = lo; e <= hi; ++e) r = r * f(e);
  return r;
}

// sum over l in [lo, hi] of the product of f(e), e in [lo, hi], e != l
Poly symmetric_sum(int lo, int hi, const std::function<Poly(int)>& f, const Poly& one) {
  Poly sum(one.ring());
  for (int l = lo; l <= hi; ++l) {
    Poly r = one;
    for (int e = lo; e <= hi; ++e)
      if (e != l) r = r * f(e);
    sum += r;
  }
  return sum;
}

// Blocks of constant index, each of length >= 2.
std::vector<Poly> a_word(const FlagPattern& p, Expected& E) {
  auto bl = p.blocks();
  int h = static_cast<int>(bl.size());
  std::vector<int> k{0};
  for (auto& b : bl) k.push_back(k.back() + b.length);
  auto D = [&](int e) { return E.Delta(e); };
  // top a at the end of a non-final block
  for (int j = 1; j < h; ++j) {
    int P = k[j] - 1, Q = k[j];
    E.define(a_top(p, P), E.A(Q) + E.B(P) * E.C(Q));
  }
  // top d at the start of every block after the first
  for (int j = 1; j < h; ++j) {
    int Q = k[j], R = k[j + 1] - 1;
    E.define(d_top(p, Q), E.D(R) + symmetric_sum(Q, R - 1, D, E.one()) * E.B(R) * E.C(Q));
  }
  std::vector<Poly> eqs;
  for (int j = 1; j < h; ++j) {
    int F = k[j - 1], P = k[j] - 1, Q = k[j], R = k[j + 1] - 1;
    Poly jump = E.D(P) - E.D(Q);
    eqs.push_back(jump * E.B(P) - product(Q, R - 1, D, E.one()) * E.B(R));
    eqs.push_back(product(F, P - 1, D, E.one()) * E.C(F) - jump * E.C(Q));
  }
  return eqs;
}

// Constant run of length k, then drops to the last level.
std::vector<Poly> a_then_b(const FlagPattern& p, Expected& E, int k) {
  int n = p.levels();
  auto d = [&](int e) { return E.delta(e); };
  auto D = [&](int e) { return E.Delta(e); };
  E.define(a_top(p, k - 1),
           E.val('a', n - 1, tops(p, k - 1).at) +
               symmetric_sum(k - 1, n - 2, d, E.one()) * E.B(k - 1) * E.C(n - 1));
  return {product(k - 1, n - 2, d, E.one()) * E.C(n - 1) - product(0, k - 2, D, E.one()) * E.C(0)};
}

// Drops through the first k levels, then a constant run to the last level.
std::vector<Poly> b_then_a(const FlagPattern& p, Expected& E, int k) {
  int n = p.levels();
  auto d = [&](int e) { return E.delta(e); };
  auto D = [&](int e) { return E.Delta(e); };
  E.define(d_top(p, k), E.D(n - 1) + symmetric_sum(k, n - 2, D, E.one()) * E.C(k) * E.B(n - 1));
  return {product(0, k - 1, d, E.one()) * E.B(0) - product(k, n - 2, D, E.one()) * E.B(n - 1)};
}

std::optional<LocalModel> direct_model(const FlagPattern& p) {
  p.validate();
  auto bl = p.blocks();
  bool all_a = std::all_of(bl.begin(), bl.end(), [](const Block& b) { return b.kind == 'A'; });
  Expected E(p);
  std::vector<Poly> eqs;
  if (p.levels() == 1) {
  } else if (all_a) {
    eqs = a_word(p, E);
  } else if (bl.size() == 2 && bl[0].kind == 'A') {
    eqs = a_then_b(p, E, bl[0].length);
  } else if (bl.size() == 2 && bl[1].kind == 'A') {
    eqs = b_then_a(p, E, bl[0].length);
  } else {
    return std::nullopt;
  }
  LocalModel lm;
  lm.pattern = p;
  lm.relative = true;
  lm.params = E.params();
  lm.ring = E.ring();
  for (auto& e : eqs)
    if (!e.is_zero()) lm.equations.push_back(e.monic());
  lm.ambient_dim = static_cast<int>(lm.params.size());
  lm.auxiliary = E.defined();
  return lm;
}

std::string mirror_name(const std::string& n) {
  auto k = parse_key(n);
  if (!k) return n;
  char l = k->letter;
  if (k->index == 0 && (l == 'a' || l == 'c')) l = l == 'a' ? 'c' : 'a';
  else if (l == 'a' || l == 'd') l = l == 'a' ? 'd' : 'a';
  else l = l == 'b' ? 'c' : 'b';
  return name_of(l, k->level, k->index);
}

PolyRingPtr mirror_ring(const PolyRingPtr& r) {
  if (!r) return r;
  std::vector<std::string> names;
  for (auto& n : r->names()) names.push_back(mirror_name(n));
  return make_ring(names, r->order());
}

Poly moved(const Poly& e, const PolyRingPtr& target) { return Poly(target, e.terms()); }

}  // namespace

LocalModel mirror_model(const LocalModel& model) {
  LocalModel out = model;
  out.pattern = model.pattern.mirror();
  out.ring = mirror_ring(model.ring);
  out.full_ring = mirror_ring(model.full_ring);
  out.params.clear();
  for (auto& n : model.params) out.params.push_back(mirror_name(n));
  out.equations.clear();
  for (auto& e : model.equations) out.equations.push_back(moved(e, out.ring).monic());
  out.trace.clear();
  for (auto& st : model.trace) out.trace.push_back({mirror_name(st.var), moved(st.expr, out.full_ring)});
  out.auxiliary.clear();
  for (auto& st : model.auxiliary) out.auxiliary.push_back({mirror_name(st.var), moved(st.expr, out.ring)});
  return out;
}

bool has_expected_model(const FlagPattern& p) {
  auto direct = [](const FlagPattern& q) {
    auto bl = q.blocks();
    if (q.levels() == 1) return true;
    if (std::all_of(bl.begin(), bl.end(), [](const Block& b) { return b.kind == 'A'; })) return true;
    return bl.size() == 2;
  };
  p.validate();
  return direct(p) || direct(p.mirror());
}

LocalModel expected_model(const FlagPattern& p) {
  if (auto lm = direct_model(p)) return *lm;
  if (auto lm = direct_model(p.mirror())) return mirror_model(*lm);
  throw Error("no closed-form model for " + p.to_string() + " (word " + p.word() + ")");
}

bool models_equivalent(const LocalModel& a, const LocalModel& b, const GroebnerOptions& opt) {
  std::set<std::string> na(a.params.begin(), a.params.end()), nb(b.params.begin(), b.params.end());
  if (na != nb) throw Error("models use different parameters");
  std::vector<Poly> eb;
  for (auto& e : b.equations) eb.push_back(e.rehost(a.ring));
  return same_local_ideal(a.ring, a.equations, eb, opt);
}

bool check_lci(const LocalModel& model, const GroebnerOptions& opt) {
  size_t n = model.ring->nvars();
  if (n > opt.max_vars)
    throw ResourceCap("model has " + std::to_string(n) + " parameters, cap is " +
                      std::to_string(opt.max_vars));
  if (model.equations.empty()) return true;
  if (!is_regular_sequence(model.ring, model.equations, opt)) return false;
  GroebnerBasis G = buchberger(model.ring, model.equations, opt);
  return ideal_dim(G) == static_cast<int>(n) - static_cast<int>(model.equations.size());
}

std::string LocalModel::to_string() const {
  std::string s = pattern.to_string() + " " + pattern.word() + (relative ? " relative" : " absolute");
  s += "\nparams (" + std::to_string(params.size()) + "):";
  for (auto& n : params) s += " " + n;
  s += "\nequations (" + std::to_string(equations.size()) + "):\n";
  for (auto& e : equations) s += "  " + e.to_string() + " = 0\n";
  for (auto& a : auxiliary) s += "  where " + a.var + " = " + a.expr.to_string() + "\n";
  return s;
}

// ---------------------------------------------------------------- validation

namespace {

using Assignment = std::map<std::string, Poly>;

std::string describe(const Assignment& asg) {
  std::string s = "{";
  bool first = true;
  for (auto& [k, v] : asg) {
    if (v.is_zero()) continue;
    s += (first ? "" : ", ") + k + "=" + v.to_string();
    first = false;
  }
  return s + "}";
}

Poly eval_at(const Poly& p, const CoeffAlgebra& S, const Assignment& asg) {
  std::vector<Poly> images;
  for (auto& n : p.ring()->names()) {
    auto it = asg.find(n);
    images.push_back(it == asg.end() ? S.zero() : it->second);
  }
  return S.reduce(p.evaluate(S.params(), images));
}

class Validator {
 public:
  Validator(const FlagPattern& p, const LocalModel& model, const CoeffAlgebraPtr& S,
            const LocalModel* derived)
      : p_(p), model_(model), S_(S), values_(sample_values(*S)) {
    if (derived) derived_ = *derived;
    else derived_ = model.trace.empty() || !model.full_ring ? local_model(p, true) : model;
    if (!derived_.relative || derived_.trace.empty() || !(derived_.pattern == p))
      throw Error("validation needs the relative derived model of the same pattern");
    std::set<std::string> a(model.params.begin(), model.params.end());
    std::set<std::string> b(derived_.params.begin(), derived_.params.end());
    if (a != b) throw Error("model parameters differ from the derived ones");
    resolved_ = resolve_trace(derived_.trace);
    auto A = CoeffAlgebra::free(derived_.full_ring->names());
    for (int j = 0; j < p.levels(); ++j) generic_.push_back(generic_ideal(p.shape(j, true), A));
  }

  void run_trial(std::mt19937_64& rng, ModelValidation& rep) {
    auto chain = backward_chain(rng);
    if (chain) {
      ++rep.backward;
      std::string why;
      if (backward_ok(*chain, why)) ++rep.backward_pass;
      else rep.counterexamples.push_back("flat chain " + describe(*chain) + ": " + why);
    }

    std::optional<Assignment> params = model_point(rng);
    if (!params && chain) {
      params.emplace();
      for (auto& n : model_.params) (*params)[n] = chain->at(n);
    }
    if (!params) {
      ++rep.sampling_failures;
      return;
    }
    Assignment full = complete(*params);
    ++rep.forward;
    std::string why;
    if (chain_ok(full, why)) ++rep.forward_pass;
    else rep.counterexamples.push_back("model point " + describe(*params) + ": " + why);

    // break one substitution
    const auto& tr = derived_.trace;
    const std::string& v = tr[rng() % tr.size()].var;
    Assignment bad = full;
    bad[v] = S_->reduce(bad[v] + nonzero(rng));
    ++rep.perturbed;
    if (!chain_ok(bad, why)) ++rep.perturbed_rejected;
    else rep.counterexamples.push_back("perturbed " + v + " accepted at " + describe(bad));
  }

 private:
  const FlagPattern& p_;
  const LocalModel& model_;
  CoeffAlgebraPtr S_;
  std::vector<Poly> values_;
  LocalModel derived_;
  std::map<std::string, Poly> resolved_;
  std::vector<GenericIdeal> generic_;

  Poly draw(std::mt19937_64& rng) const {
    if (rng() % 4 == 0) return S_->zero();
    return values_[rng() % values_.size()];
  }
  Poly nonzero(std::mt19937_64& rng) const {
    for (;;) {
      Poly v = values_[rng() % values_.size()];
      if (!v.is_zero()) return v;
    }
  }

  CurveRingPtr ring_for(const Poly& s) const {
    return CurveRing::node_relative(S_, s, 2 * p_.m + 8);
  }

  bool chain_ok(const Assignment& asg, std::string& why) const {
    auto it = asg.find("s");
    CurveRingPtr R = ring_for(it == asg.end() ? S_->zero() : it->second);
    std::vector<IdealGens> I;
    for (auto& G : generic_) I.emplace_back(R, std::vector<RingElement>{G.f.substitute(R, asg), G.g.substitute(R, asg)});
    for (int j = 0; j < p_.levels(); ++j)
      if (!s_free_rank(I[j], standard_monomials(p_.shape(j, true)))) {
        why = "level " + std::to_string(j) + " not flat";
        return false;
      }
    for (int j = 0; j + 1 < p_.levels(); ++j)
      if (!member_all(I[j].gens, I[j + 1])) {
        why = "level " + std::to_string(j) + " not inside level " + std::to_string(j + 1);
        return false;
      }
    return true;
  }

  Assignment complete(const Assignment& params) const {
    Assignment full = params;
    for (auto& [n, e] : resolved_) full[n] = eval_at(e, *S_, params);
    return full;
  }

  std::optional<Assignment> model_point(std::mt19937_64& rng) const {
    for (int tries = 0; tries < 64; ++tries) {
      Assignment a;
      for (auto& n : model_.params) a[n] = draw(rng);
      bool ok = true;
      for (auto& e : model_.equations)
        if (!eval_at(e, *S_, a).is_zero()) {
          ok = false;
          break;
        }
      if (ok) return a;
    }
    return std::nullopt;
  }

  // Last level sampled on its flat locus, then each level above it as
  // (x + u) f', g' + v f' after an equal index or f' + u g', (y + v) g'
  // after a drop; kept only when every level is flat.
  std::optional<Assignment> backward_chain(std::mt19937_64& rng) const {
    int n = p_.levels();
    for (int tries = 0; tries < 64; ++tries) {
      DeformShape last = p_.shape(n - 1, true);
      int lm = last.m, li = last.i;
      std::map<int, Poly> av, bv, cv, dv;
      for (int t = 1; t <= lm - li; ++t) av[t] = draw(rng);
      for (int t = 1; t < li; ++t) dv[t] = draw(rng);
      Poly b = draw(rng), c = draw(rng);
      Poly s = S_->mul(b, c);
      auto A = [&](int t) { return t == lm - li + 1 ? S_->one() : av[t]; };
      auto Dd = [&](int t) { return t == li ? S_->one() : dv[t]; };
      if (li >= 2) bv[li - 1] = b;
      else av[0] = b;
      cv[lm - li] = c;
      for (int t = 1; t <= li - 2; ++t) bv[t] = S_->mul(b, Dd(t + 1));
      if (li >= 2) av[0] = S_->mul(b, Dd(1));
      for (int t = 0; t <= lm - li - 1; ++t) cv[t] = S_->mul(c, A(t + 1));

      CurveRingPtr R = ring_for(s);
      RingElement f = RingElement::monomial(R, lm - li + 1, 0), g = RingElement::monomial(R, 0, li);
      for (auto& [t, v] : av) f += RingElement::monomial(R, t, 0, v);
      for (auto& [t, v] : bv) f += RingElement::monomial(R, 0, t, v);
      for (auto& [t, v] : cv) g += RingElement::monomial(R, t, 0, v);
      for (auto& [t, v] : dv) g += RingElement::monomial(R, 0, t, v);

      std::vector<std::pair<RingElement, RingElement>> gens(n);
      gens[n - 1] = {f, g};
      for (int j = n - 2; j >= 0; --j) {
        auto [fp, gp] = gens[j + 1];
        Poly u = draw(rng), v = draw(rng);
        if (p_.same_step(j))
          gens[j] = {RingElement::x(R) * fp + fp.scaled(u), gp + fp.scaled(v)};
        else
          gens[j] = {fp + gp.scaled(u), RingElement::y(R) * gp + gp.scaled(v)};
      }
      Assignment asg{{"s", s}};
      bool ok = true;
      for (int j = 0; j < n && ok; ++j) {
        DeformShape sh = p_.shape(j, true);
        ok = extract(sh, gens[j].first, gens[j].second, asg) &&
             s_free_rank(IdealGens(R, {gens[j].first, gens[j].second}), standard_monomials(sh));
      }
      if (ok) return asg;
    }
    return std::nullopt;
  }

  // Coefficients of f, g on the standard monomials; false if the leading
  // terms or the support do not fit the shape.
  static bool extract(const DeformShape& sh, const RingElement& f, const RingElement& g,
                      Assignment& asg) {
    int xt = sh.xtop(), yt = sh.i;
    auto take = [&](const RingElement& e, bool is_f) {
      for (auto& [m, c] : e.terms()) {
        if (is_f && m.x == xt && m.y == 0) {
          if (c != Poly::constant(c.ring(), 1)) return false;
          continue;
        }
        if (!is_f && m.x == 0 && m.y == yt) {
          if (c != Poly::constant(c.ring(), 1)) return false;
          continue;
        }
        if (m.y == 0 && m.x <= sh.m - sh.i)
          asg[coeff_name(sh, is_f ? 'a' : 'c', m.x)] = c;
        else if (m.x == 0 && m.y >= 1 && m.y < sh.i)
          asg[coeff_name(sh, is_f ? 'b' : 'd', m.y)] = c;
        else
          return false;
      }
      return true;
    };
    for (auto& n : coeff_names(sh)) asg[n] = c_zero(f);
    return take(f, true) && take(g, false);
  }

  static Poly c_zero(const RingElement& e) { return e.ring()->coeff()->zero(); }

  bool backward_ok(const Assignment& chain, std::string& why) const {
    for (auto& e : model_.equations)
      if (!eval_at(e, *S_, chain).is_zero()) {
        why = "model equation " + e.to_string() + " fails";
        return false;
      }
    for (auto& st : derived_.trace)
      if (chain.at(st.var) != eval_at(st.expr, *S_, chain)) {
        why = "substitution for " + st.var + " fails";
        return false;
      }
    return true;
  }
};

}  // namespace

ModelValidation validate_model_points(const FlagPattern& p, const LocalModel& model,
                                      const CoeffAlgebraPtr& S, int trials, uint64_t seed,
                                      const LocalModel* derived) {
  if (!model.relative) throw Error("point validation needs a relative model");
  if (S->kind() != CoeffAlgebra::Kind::TruncatedArtin)
    throw Error("point validation needs a truncated Artin algebra");
  Validator V(p, model, S, derived);
  ModelValidation rep;
  rep.pattern = p;
  rep.seed = seed;
  rep.trials = trials;
  for (int t = 0; t < trials; ++t) {
    std::seed_seq sq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                     static_cast<uint32_t>(t)};
    std::mt19937_64 rng(sq);
    V.run_trial(rng, rep);
  }
  return rep;
}

// ---------------------------------------------------------------- strata

std::vector<FlagPattern> enumerate_strata(int m, int depth) {
  if (m < 1 || depth < 1 || depth > m) throw Error("need 1 <= depth <= m");
  std::vector<FlagPattern> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int j) {
    if (j == depth) {
      out.push_back({m, cur});
      return;
    }
    int lo = 1, hi = j == 0 ? std::max(1, m - 1) : m - j;
    if (j > 0) {
      lo = std::max(lo, cur.back() - 1);
      hi = std::min(hi, cur.back());
    }
    for (int i = lo; i <= hi; ++i) {
      cur.push_back(i);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

std::vector<FlagPattern> strata_by_containment(int m, int depth) {
  if (m < 1 || depth < 1 || depth > m) throw Error("need 1 <= depth <= m");
  auto ring = CurveRing::node(CoeffAlgebra::rationals(), 2 * m + 8);
  std::vector<std::vector<IdealGens>> ideals(depth);
  for (int j = 0; j < depth; ++j) {
    int hi = j == 0 ? std::max(1, m - 1) : m - j;
    for (int i = 1; i <= hi; ++i) ideals[j].push_back(node_q_ideal(ring, m - j, i));
  }
  std::vector<FlagPattern> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int j) {
    if (j == depth) {
      out.push_back({m, cur});
      return;
    }
    for (size_t k = 0; k < ideals[j].size(); ++k) {
      if (j > 0) {
        const IdealGens& outer = ideals[j - 1][cur.back() - 1];
        bool inside = true;
        for (auto& g : outer.gens) inside = inside && member(g, ideals[j][k]);
        if (!inside) continue;
      }
      cur.push_back(static_cast<int>(k) + 1);
      rec(j + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return out;
}

}  // namespace hilbloc
