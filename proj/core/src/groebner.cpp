#include "hilbloc/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "hilbloc/errors.hpp"

namespace hilbloc {

namespace {

Exponent quotient_exp(const Exponent& a, const Exponent& b) {
  Exponent e(a.size());
  for (size_t i = 0; i < a.size(); ++i) e[i] = a[i] - b[i];
  return e;
}

void check_vars(const PolyRing& r, const GroebnerOptions& opt) {
  if (r.nvars() > opt.max_vars)
    throw ResourceCap("polynomial ring has " + std::to_string(r.nvars()) +
                      " variables, above the cap of " + std::to_string(opt.max_vars));
}

// Full reduction of p by the list G. When quot is given, quotients are
// accumulated so that p = sum quot[r] * G[r] + remainder.
Poly reduce_by(Poly p, const std::vector<Poly>& G, std::vector<Poly>* quot) {
  Poly rem(p.ring());
  while (!p.is_zero()) {
    const Term lt = p.lead();
    bool hit = false;
    for (size_t r = 0; r < G.size(); ++r) {
      const Term& gl = G[r].lead();
      if (!divides(gl.exp, lt.exp)) continue;
      Exponent e = quotient_exp(lt.exp, gl.exp);
      Rational c = lt.coef / gl.coef;
      p -= G[r].times_term(e, c);
      if (quot) (*quot)[r] += Poly::monomial(p.ring(), e, c);
      hit = true;
      break;
    }
    if (!hit) {
      Poly head = Poly::monomial(p.ring(), lt.exp, lt.coef);
      rem += head;
      p -= head;
    }
  }
  return rem;
}

struct Pair {
  size_t i, j;
  Exponent lcm;
};

// Buchberger with the product and chain criteria. Returns a (non reduced)
// Groebner basis; with cofactors, cof[k] expresses G[k] in the inputs.
std::vector<Poly> raw_basis(const PolyRingPtr& ring, const std::vector<Poly>& gens,
                            std::vector<std::vector<Poly>>* cof) {
  const PolyRing& R = *ring;
  size_t n = gens.size();
  std::vector<Poly> G;
  auto unit_vec = [&](size_t j) {
    std::vector<Poly> v(n, Poly(ring));
    v[j] = Poly::constant(ring, 1);
    return v;
  };

  std::vector<Pair> pending;
  std::set<std::pair<size_t, size_t>> open;
  auto add = [&](Poly h, std::vector<Poly> c) {
    Rational lc = h.lead().coef;
    if (cof) {
      for (auto& q : c) q = q.scaled(Rational(1) / lc);
      cof->push_back(std::move(c));
    }
    G.push_back(h.monic());
    size_t k = G.size() - 1;
    for (size_t i = 0; i < k; ++i) {
      pending.push_back({i, k, lcm(G[i].lead().exp, G[k].lead().exp)});
      open.insert({i, k});
    }
  };

  for (size_t j = 0; j < n; ++j) {
    if (gens[j].is_zero()) continue;
    add(gens[j], cof ? unit_vec(j) : std::vector<Poly>{});
  }

  while (!pending.empty()) {
    // normal strategy: smallest lcm first, ties by index for determinism
    size_t best = 0;
    for (size_t p = 1; p < pending.size(); ++p) {
      const Pair& a = pending[p];
      const Pair& b = pending[best];
      int da = total_degree(a.lcm), db = total_degree(b.lcm);
      int c = da != db ? (da < db ? -1 : 1) : R.compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j))) best = p;
    }
    Pair pr = pending[best];
    pending.erase(pending.begin() + static_cast<long>(best));
    open.erase({pr.i, pr.j});

    const Exponent& li = G[pr.i].lead().exp;
    const Exponent& lj = G[pr.j].lead().exp;
    bool coprime = true;
    for (size_t v = 0; v < li.size(); ++v)
      if (li[v] && lj[v]) coprime = false;
    if (coprime) continue;
    bool chain = false;
    for (size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(G[k].lead().exp, pr.lcm)) continue;
      auto key = [](size_t a, size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      if (!open.count(key(pr.i, k)) && !open.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;

    Exponent ei = quotient_exp(pr.lcm, li), ej = quotient_exp(pr.lcm, lj);
    Poly s = G[pr.i].times_term(ei, 1) - G[pr.j].times_term(ej, 1);
    std::vector<Poly> q;
    if (cof) q.assign(G.size(), Poly(ring));
    Poly h = reduce_by(s, G, cof ? &q : nullptr);
    if (h.is_zero()) continue;
    std::vector<Poly> c;
    if (cof) {
      c.assign(n, Poly(ring));
      for (size_t t = 0; t < n; ++t) {
        c[t] = (*cof)[pr.i][t].times_term(ei, 1) - (*cof)[pr.j][t].times_term(ej, 1);
        for (size_t r = 0; r < q.size(); ++r)
          if (!q[r].is_zero()) c[t] -= q[r] * (*cof)[r][t];
      }
    }
    add(std::move(h), std::move(c));
    if (!cof && G.back().is_constant()) break;
  }
  return G;
}

}  // namespace

bool GroebnerBasis::contains(const Poly& p) const { return normal_form(p, *this).is_zero(); }

bool GroebnerBasis::contains_all(const std::vector<Poly>& ps) const {
  for (auto& p : ps)
    if (!contains(p)) return false;
  return true;
}

GroebnerBasis buchberger(const PolyRingPtr& ring, const std::vector<Poly>& gens,
                         const GroebnerOptions& opt) {
  check_vars(*ring, opt);
  std::vector<Poly> in;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    in.push_back(g.ring() == ring ? g : g.rehost(ring));
  }
  std::vector<Poly> G = raw_basis(ring, in, nullptr);
  for (auto& g : G)
    if (g.is_constant()) return GroebnerBasis(ring, {Poly::constant(ring, 1)});

  // minimize, then reduce tails
  std::vector<Poly> min;
  for (size_t k = 0; k < G.size(); ++k) {
    bool drop = false;
    for (size_t l = 0; l < G.size() && !drop; ++l) {
      if (l == k || !divides(G[l].lead().exp, G[k].lead().exp)) continue;
      drop = G[l].lead().exp != G[k].lead().exp || l < k;
    }
    if (!drop) min.push_back(G[k]);
  }
  std::vector<Poly> out;
  for (size_t k = 0; k < min.size(); ++k) {
    std::vector<Poly> others;
    for (size_t l = 0; l < min.size(); ++l)
      if (l != k) others.push_back(min[l]);
    out.push_back(reduce_by(min[k], others, nullptr).monic());
  }
  const PolyRing& R = *ring;
  std::sort(out.begin(), out.end(),
            [&](const Poly& a, const Poly& b) { return R.compare(a.lead().exp, b.lead().exp) > 0; });
  return GroebnerBasis(ring, std::move(out));
}

Poly normal_form(const Poly& p, const GroebnerBasis& G) {
  Poly q = p.ring() == G.ring() ? p : p.rehost(G.ring());
  return reduce_by(q, G.gens(), nullptr);
}

int ideal_dim(const GroebnerBasis& G) {
  if (G.is_unit()) throw Error("empty variety: the ideal is the unit ideal");
  size_t n = G.ring()->nvars();
  if (n > 30) throw ResourceCap("too many variables for the dimension search");
  std::vector<uint32_t> leads;
  for (auto& g : G.gens()) {
    uint32_t m = 0;
    for (size_t v = 0; v < n; ++v)
      if (g.lead().exp[v]) m |= 1u << v;
    leads.push_back(m);
  }
  int best = 0;
  for (uint32_t U = 0; U < (1u << n); ++U) {
    int size = __builtin_popcount(U);
    if (size <= best) continue;
    bool indep = true;
    for (uint32_t m : leads)
      if ((m & ~U) == 0) {
        indep = false;
        break;
      }
    if (indep) best = size;
  }
  return best;
}

std::optional<Poly> divide_exact(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  std::vector<Poly> q(1, Poly(a.ring()));
  Poly r = reduce_by(a, {b}, &q);
  if (!r.is_zero()) return std::nullopt;
  return q[0];
}

GroebnerBasis ideal_quotient(const GroebnerBasis& I, const Poly& p, const GroebnerOptions& opt) {
  if (p.is_zero()) throw std::invalid_argument("ideal quotient by zero");
  const PolyRingPtr& ring = I.ring();
  if (I.is_zero()) return I;
  std::string tname = "_t";
  while (ring->index(tname)) tname += "_";
  std::vector<std::string> names{tname};
  for (auto& nm : ring->names()) names.push_back(nm);
  auto ext = make_ring(names, MonomialOrder::block({1, static_cast<int>(ring->nvars())}));
  GroebnerOptions o2 = opt;
  o2.max_vars = opt.max_vars + 1;

  Poly t = Poly::variable(ext, 0);
  Poly pe = p.rehost(ext);
  std::vector<Poly> gens;
  for (auto& g : I.gens()) gens.push_back(t * g.rehost(ext));
  gens.push_back((Poly::constant(ext, 1) - t) * pe);
  GroebnerBasis E = buchberger(ext, gens, o2);

  std::vector<Poly> quot;
  for (auto& g : E.gens()) {
    if (g.uses(0)) continue;
    auto q = divide_exact(g, pe);
    if (!q) throw std::logic_error("intersection element not divisible by p");
    quot.push_back(q->rehost(ring));
  }
  return buchberger(ring, quot, opt);
}

bool is_regular_sequence(const PolyRingPtr& ring, const std::vector<Poly>& polys,
                         const GroebnerOptions& opt) {
  check_vars(*ring, opt);
  GroebnerBasis I(ring, {});
  std::vector<Poly> sofar;
  for (auto& p0 : polys) {
    Poly p = p0.rehost(ring);
    if (p.is_zero()) return false;
    // The prefix is unmixed of height |sofar|; p avoids all its associated
    // primes iff the height goes up by one.
    sofar.push_back(p);
    I = buchberger(ring, sofar, opt);
    if (I.is_unit()) return false;
    if (ideal_dim(I) != static_cast<int>(ring->nvars() - sofar.size())) return false;
  }
  return true;
}

std::vector<std::vector<Poly>> syzygies(const PolyRingPtr& ring, const std::vector<Poly>& gens0,
                                        const GroebnerOptions& opt) {
  check_vars(*ring, opt);
  std::vector<Poly> gens;
  for (auto& g : gens0) gens.push_back(g.rehost(ring));
  size_t n = gens.size();
  std::vector<std::vector<Poly>> out;
  std::vector<std::vector<Poly>> T;
  std::vector<Poly> G = raw_basis(ring, gens, &T);

  auto push = [&](std::vector<Poly> v) {
    bool nonzero = false;
    for (auto& q : v) nonzero |= !q.is_zero();
    if (!nonzero) return;
    Poly check(ring);
    for (size_t j = 0; j < n; ++j) check += v[j] * gens[j];
    if (!check.is_zero()) throw std::logic_error("syzygy check failed");
    // scale so the first nonzero entry has leading coefficient 1
    for (auto& q : v)
      if (!q.is_zero()) {
        Rational c = Rational(1) / q.lead().coef;
        for (auto& r : v) r = r.scaled(c);
        break;
      }
    for (auto& w : out)
      if (w == v) return;
    out.push_back(std::move(v));
  };
  auto to_inputs = [&](const std::vector<Poly>& overG) {
    std::vector<Poly> v(n, Poly(ring));
    for (size_t r = 0; r < overG.size(); ++r) {
      if (overG[r].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) v[j] += overG[r] * T[r][j];
    }
    return v;
  };

  for (size_t k = 0; k < G.size(); ++k) {
    for (size_t l = k + 1; l < G.size(); ++l) {
      Exponent L = lcm(G[k].lead().exp, G[l].lead().exp);
      Exponent ek = quotient_exp(L, G[k].lead().exp), el = quotient_exp(L, G[l].lead().exp);
      Poly s = G[k].times_term(ek, 1) - G[l].times_term(el, 1);
      std::vector<Poly> q(G.size(), Poly(ring));
      Poly r = reduce_by(s, G, &q);
      if (!r.is_zero()) throw std::logic_error("S-polynomial does not reduce to zero");
      for (auto& x : q) x = -x;
      q[k] += Poly::monomial(ring, ek);
      q[l] -= Poly::monomial(ring, el);
      push(to_inputs(q));
    }
  }
  for (size_t j = 0; j < n; ++j) {
    std::vector<Poly> v(n, Poly(ring));
    v[j] = Poly::constant(ring, 1);
    if (!gens[j].is_zero()) {
      std::vector<Poly> h(G.size(), Poly(ring));
      Poly r = reduce_by(gens[j], G, &h);
      if (!r.is_zero()) throw std::logic_error("generator does not reduce to zero");
      auto back = to_inputs(h);
      for (size_t t = 0; t < n; ++t) v[t] -= back[t];
    }
    push(std::move(v));
  }
  return out;
}

bool same_ideal(const PolyRingPtr& ring, const std::vector<Poly>& a, const std::vector<Poly>& b,
                const GroebnerOptions& opt) {
  GroebnerBasis A = buchberger(ring, a, opt), B = buchberger(ring, b, opt);
  return A.gens() == B.gens();
}

bool local_contains(const GroebnerBasis& G, const Poly& p, const GroebnerOptions& opt) {
  if (G.contains(p)) return true;
  if (G.is_zero()) return false;
  // evaluation at 0 maps (G : p) onto 0 or all of Q; generators decide which
  GroebnerBasis Q = ideal_quotient(G, p.rehost(G.ring()), opt);
  for (auto& q : Q.gens())
    if (sgn(q.constant_term()) != 0) return true;
  return false;
}

bool same_local_ideal(const PolyRingPtr& ring, const std::vector<Poly>& a,
                      const std::vector<Poly>& b, const GroebnerOptions& opt) {
  GroebnerBasis A = buchberger(ring, a, opt), B = buchberger(ring, b, opt);
  if (A.gens() == B.gens()) return true;
  for (auto& p : b)
    if (!local_contains(A, p, opt)) return false;
  for (auto& p : a)
    if (!local_contains(B, p, opt)) return false;
  return true;
}

}  // namespace hilbloc
