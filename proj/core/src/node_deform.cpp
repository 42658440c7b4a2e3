#include "hilbloc/node_deform.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include "hilbloc/errors.hpp"

namespace hilbloc {

void DeformShape::validate() const {
  if (m < 1) throw Error("m must be positive");
  if (i < 1 || i > m)
    throw Error("index i=" + std::to_string(i) + " out of range 1.." + std::to_string(m));
}

std::string coeff_name(const DeformShape& sh, char letter, int j) {
  std::string n(1, letter);
  if (sh.level) n += "^" + std::to_string(*sh.level);
  return n + "_" + std::to_string(j);
}

std::vector<std::string> coeff_names(const DeformShape& sh) {
  std::vector<std::string> out;
  for (int j = 0; j <= sh.m - sh.i; ++j) out.push_back(coeff_name(sh, 'a', j));
  for (int j = 1; j < sh.i; ++j) out.push_back(coeff_name(sh, 'b', j));
  for (int j = 0; j <= sh.m - sh.i; ++j) out.push_back(coeff_name(sh, 'c', j));
  for (int j = 1; j < sh.i; ++j) out.push_back(coeff_name(sh, 'd', j));
  return out;
}

Poly shape_coeff(const DeformShape& sh, const PolyRingPtr& ring, char letter, int j) {
  int xr = sh.m - sh.i;
  switch (letter) {
    case 'a':
      if (j == xr + 1) return Poly::constant(ring, 1);
      if (j < 0 || j > xr) return Poly(ring);
      return Poly::variable(ring, coeff_name(sh, 'a', j));
    case 'b':
      if (j == 0) return shape_coeff(sh, ring, 'a', 0);
      if (j < 0 || j >= sh.i) return Poly(ring);
      return Poly::variable(ring, coeff_name(sh, 'b', j));
    case 'c':
      if (j < 0 || j > xr) return Poly(ring);
      return Poly::variable(ring, coeff_name(sh, 'c', j));
    case 'd':
      if (j == sh.i) return Poly::constant(ring, 1);
      if (j == 0) return shape_coeff(sh, ring, 'c', 0);
      if (j < 0 || j > sh.i) return Poly(ring);
      return Poly::variable(ring, coeff_name(sh, 'd', j));
    default:
      throw std::invalid_argument("unknown coefficient letter");
  }
}

CoeffAlgebraPtr shape_algebra(const DeformShape& sh) {
  sh.validate();
  auto names = coeff_names(sh);
  if (sh.relative) names.push_back("s");
  return CoeffAlgebra::free(names);
}

std::vector<CurveMono> standard_monomials(const DeformShape& sh) {
  std::vector<CurveMono> out{{0, 0}};
  for (int a = 1; a <= sh.m - sh.i; ++a) out.push_back({a, 0});
  for (int b = 1; b < sh.i; ++b) out.push_back({0, b});
  return out;
}

GenericIdeal generic_ideal(const DeformShape& sh, const CoeffAlgebraPtr& coeffs) {
  sh.validate();
  int trunc = 2 * sh.m + 8;
  const PolyRingPtr& P = coeffs->params();
  CurveRingPtr ring = sh.relative ? CurveRing::node_relative(coeffs, coeffs->param("s"), trunc)
                                  : CurveRing::node(coeffs, trunc);
  RingElement f = RingElement::monomial(ring, sh.xtop(), 0);
  RingElement g = RingElement::monomial(ring, 0, sh.i);
  for (int j = 0; j <= sh.m - sh.i; ++j) {
    f += RingElement::monomial(ring, j, 0, shape_coeff(sh, P, 'a', j));
    g += RingElement::monomial(ring, j, 0, shape_coeff(sh, P, 'c', j));
  }
  for (int j = 1; j < sh.i; ++j) {
    f += RingElement::monomial(ring, 0, j, shape_coeff(sh, P, 'b', j));
    g += RingElement::monomial(ring, 0, j, shape_coeff(sh, P, 'd', j));
  }
  return {ring, f, g};
}

GenericIdeal generic_ideal(const DeformShape& sh) { return generic_ideal(sh, shape_algebra(sh)); }

void RelationSet::canonicalize() {
  std::vector<Poly> out;
  for (auto& e : equations) {
    if (e.is_zero()) continue;
    Poly p = e.monic();
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) { return Poly::less(a, b); });
  equations = std::move(out);
}

std::string RelationSet::to_string() const {
  std::string s;
  for (auto& e : equations) s += e.to_string() + " = 0\n";
  return s;
}

std::vector<Poly> standard_coefficients(const RingElement& e0, const DeformShape& inner,
                                        const GenericIdeal& G) {
  RingElement e = e0.rehost(G.ring);
  int xt = inner.xtop(), yt = inner.i;
  for (;;) {
    // largest pure power at or above a pivot
    const CurveMono* hit = nullptr;
    for (auto& [m, c] : e.terms()) {
      bool over = (m.y == 0 && m.x >= xt) || (m.x == 0 && m.y >= yt);
      if (!over) continue;
      if (m.x && m.y) throw std::logic_error("mixed monomial in a node ring");
      if (!hit || m.degree() > hit->degree()) hit = &m;
    }
    if (!hit) break;
    CurveMono m = *hit;
    Poly c = e.coeff(m);
    if (m.y == 0 && m.x >= xt)
      e -= RingElement::monomial(G.ring, m.x - xt, 0, c) * G.f;
    else
      e -= RingElement::monomial(G.ring, 0, m.y - yt, c) * G.g;
  }
  std::vector<Poly> out;
  for (auto& m : standard_monomials(inner)) out.push_back(e.coeff(m));
  for (auto& [m, c] : e.terms()) {
    bool std_mono = (m.y == 0 && m.x < xt) || (m.x == 0 && m.y < yt);
    if (!std_mono) throw std::logic_error("reduction left a non-standard monomial");
  }
  return out;
}

RelationSet derive_flat_relations(const DeformShape& sh) {
  auto A = shape_algebra(sh);
  GenericIdeal G = generic_ideal(sh, A);
  const PolyRingPtr& P = A->params();
  Poly b = shape_coeff(sh, P, 'b', sh.i - 1);
  Poly c = shape_coeff(sh, P, 'c', sh.m - sh.i);
  RingElement p1 = RingElement::y(G.ring) * G.f - G.g.scaled(b);
  RingElement p2 = RingElement::x(G.ring) * G.g - G.f.scaled(c);
  RelationSet rs{P, {}};
  for (auto& q : standard_coefficients(p1, sh, G)) rs.equations.push_back(q);
  for (auto& q : standard_coefficients(p2, sh, G)) rs.equations.push_back(q);
  rs.canonicalize();
  return rs;
}

namespace {

struct Lines {
  Poly A(int j) const { return shape_coeff(sh, P, 'a', j); }
  Poly B(int j) const { return shape_coeff(sh, P, 'b', j); }
  Poly C(int j) const { return shape_coeff(sh, P, 'c', j); }
  Poly D(int j) const { return shape_coeff(sh, P, 'd', j); }
  Poly s() const { return sh.relative ? Poly::variable(P, "s") : Poly(P); }
  const DeformShape& sh;
  PolyRingPtr P;
};

}  // namespace

RelationSet closed_form_flat_relations(const DeformShape& sh) {
  auto Alg = shape_algebra(sh);
  Lines L{sh, Alg->params()};
  int m = sh.m, i = sh.i;
  Poly b = L.B(i - 1), c = L.C(m - i), s = L.s();
  RelationSet rs{L.P, {}};
  for (int j = 1; j <= i - 2; ++j) rs.equations.push_back(L.B(j) - b * L.D(j + 1));
  rs.equations.push_back(b * L.D(1) - L.A(0));
  for (int j = 0; j <= m - i; ++j) rs.equations.push_back(b * L.C(j) - s * L.A(j + 1));
  for (int j = 0; j <= m - i - 1; ++j) rs.equations.push_back(L.C(j) - c * L.A(j + 1));
  rs.equations.push_back(c * L.A(0) - s * L.D(1));
  for (int j = 1; j <= i - 1; ++j) rs.equations.push_back(c * L.B(j) - s * L.D(j + 1));
  rs.canonicalize();
  return rs;
}

std::vector<Poly> closed_form_consequence_lines(const DeformShape& sh, const PolyRingPtr& ring) {
  Lines L{sh, ring};
  int m = sh.m, i = sh.i;
  Poly b = L.B(i - 1), c = L.C(m - i), s = L.s();
  std::vector<Poly> out;
  for (int j = 0; j <= m - i - 1; ++j) out.push_back(b * L.C(j) - s * L.A(j + 1));
  // for i = 1 this line is b_0 c_{m-1} = s itself
  if (i >= 2) out.push_back(c * L.A(0) - s * L.D(1));
  for (int j = 1; j <= i - 2; ++j) out.push_back(c * L.B(j) - s * L.D(j + 1));
  std::vector<Poly> nz;
  for (auto& p : out)
    if (!p.is_zero()) nz.push_back(p);
  return nz;
}

std::vector<Poly> sample_values(const CoeffAlgebra& S) {
  std::vector<Poly> out{S.zero()};
  const PolyRingPtr& P = S.params();
  size_t n = P->nvars();
  for (size_t v = 0; v < n; ++v) {
    out.push_back(Poly::variable(P, v));
    out.push_back(-Poly::variable(P, v));
  }
  if (n >= 2) out.push_back(Poly::variable(P, 0) + Poly::variable(P, 1));
  for (size_t v = 0; v < n; ++v)
    for (size_t w = v; w < n; ++w) {
      Poly p = S.mul(Poly::variable(P, v), Poly::variable(P, w));
      if (!p.is_zero()) out.push_back(p);
    }
  return out;
}

namespace {

std::string describe(const std::map<std::string, Poly>& asg) {
  std::string s = "{";
  bool first = true;
  for (auto& [k, v] : asg) {
    if (v.is_zero()) continue;
    s += (first ? "" : ", ") + k + "=" + v.to_string();
    first = false;
  }
  return s + "}";
}

PointCheck check_with(const DeformShape& sh, const CoeffAlgebraPtr& S, const GenericIdeal& G,
                      const RelationSet& rel, const std::map<std::string, Poly>& asg) {
  int trunc = 2 * sh.m + 8;
  Poly sval = S->zero();
  if (sh.relative) {
    auto it = asg.find("s");
    if (it != asg.end()) sval = it->second;
  }
  CurveRingPtr target =
      sh.relative ? CurveRing::node_relative(S, sval, trunc) : CurveRing::node(S, trunc);
  IdealGens I(target, {G.f.substitute(target, asg), G.g.substitute(target, asg)});
  PointCheck pc;
  pc.flat = s_free_rank(I, standard_monomials(sh));
  std::vector<Poly> images;
  for (auto& name : rel.ring->names()) {
    auto it = asg.find(name);
    images.push_back(it == asg.end() ? S->zero() : it->second.rehost(S->params()));
  }
  pc.relations = true;
  for (auto& e : rel.equations)
    if (!S->reduce(e.evaluate(S->params(), images)).is_zero()) {
      pc.relations = false;
      break;
    }
  return pc;
}

}  // namespace

PointCheck check_point(const DeformShape& sh, const CoeffAlgebraPtr& S,
                       const std::map<std::string, Poly>& assignment) {
  auto A = shape_algebra(sh);
  GenericIdeal G = generic_ideal(sh, A);
  RelationSet rel = derive_flat_relations(sh);
  std::map<std::string, Poly> asg = assignment;
  for (auto& n : A->params()->names())
    if (!asg.count(n)) asg.emplace(n, S->zero());
  return check_with(sh, S, G, rel, asg);
}

FlatReport verify_flat_iff(const DeformShape& sh, const CoeffAlgebraPtr& S, int trials,
                           uint64_t seed) {
  if (S->kind() != CoeffAlgebra::Kind::TruncatedArtin)
    throw Error("verify_flat_iff needs a truncated Artin algebra");
  auto A = shape_algebra(sh);
  GenericIdeal G = generic_ideal(sh, A);
  RelationSet rel = derive_flat_relations(sh);
  auto values = sample_values(*S);
  std::mt19937_64 rng(seed);
  auto draw = [&]() { return values[rng() % values.size()]; };
  auto nonzero = [&]() {
    for (;;) {
      Poly v = draw();
      if (!v.is_zero()) return v;
    }
  };

  FlatReport rep;
  rep.shape = sh;
  rep.seed = seed;
  const int m = sh.m, i = sh.i;
  std::vector<std::string> coords = A->params()->names();

  auto record = [&](const std::map<std::string, Poly>& asg) {
    PointCheck pc = check_with(sh, S, G, rel, asg);
    ++rep.samples;
    if (pc.flat) ++rep.flat;
    if (pc.relations) ++rep.relations_hold;
    if (!pc.flat && !pc.relations) ++rep.rejected;
    if (pc.flat && !pc.relations)
      rep.counterexamples.push_back("flat but relations fail at " + describe(asg));
    if (!pc.flat && pc.relations)
      rep.counterexamples.push_back("relations hold but not flat at " + describe(asg));
  };

  for (int t = 0; t < trials; ++t) {
    std::map<std::string, Poly> asg;
    for (auto& n : coords) asg[n] = S->zero();
    // free coordinates
    for (int j = 1; j <= m - i; ++j) asg[coeff_name(sh, 'a', j)] = draw();
    for (int j = 1; j < i; ++j) asg[coeff_name(sh, 'd', j)] = draw();
    std::string bname = i >= 2 ? coeff_name(sh, 'b', i - 1) : coeff_name(sh, 'a', 0);
    std::string cname = coeff_name(sh, 'c', m - i);
    Poly b = draw(), c = draw();
    if (!sh.relative) {
      int tries = 0;
      while (!S->mul(b, c).is_zero() && tries++ < 32) c = draw();
      if (!S->mul(b, c).is_zero()) {
        c = S->zero();
        ++rep.sampling_failures;
      }
    }
    asg[bname] = b;
    asg[cname] = c;
    if (sh.relative) asg["s"] = S->mul(b, c);
    // dependent coordinates
    auto d = [&](int j) {
      if (j == i) return S->one();
      return asg[coeff_name(sh, 'd', j)];
    };
    auto a = [&](int j) {
      if (j == m - i + 1) return S->one();
      return asg[coeff_name(sh, 'a', j)];
    };
    for (int j = 1; j <= i - 2; ++j) asg[coeff_name(sh, 'b', j)] = S->mul(b, d(j + 1));
    if (i >= 2) asg[coeff_name(sh, 'a', 0)] = S->mul(b, d(1));
    for (int j = 0; j <= m - i - 1; ++j) asg[coeff_name(sh, 'c', j)] = S->mul(c, a(j + 1));
    record(asg);

    // perturb one coordinate (s included)
    std::map<std::string, Poly> bad = asg;
    const std::string& name = coords[rng() % coords.size()];
    bad[name] = S->reduce(bad[name] + nonzero());
    record(bad);
  }
  return rep;
}

std::string NodeClass::to_string() const {
  switch (kind) {
    case Kind::TypeC:
      return "TypeC(i=" + std::to_string(i) + ", m=" + std::to_string(m) + ", a=" + a.get_str() + ")";
    case Kind::TypeQ:
      return "TypeQ(i=" + std::to_string(i) + ", m=" + std::to_string(m) + ")";
    case Kind::NotPunctual:
      return "NotPunctual";
  }
  return "";
}

IdealGens node_q_ideal(const CurveRingPtr& ring, int m, int i) {
  DeformShape{m, i, false, std::nullopt}.validate();
  return IdealGens(ring, {RingElement::monomial(ring, m - i + 1, 0), RingElement::monomial(ring, 0, i)});
}

IdealGens node_c_ideal(const CurveRingPtr& ring, int m, int i, const Rational& a) {
  if (i < 1 || i > m - 1) throw Error("type c ideals need 1 <= i <= m-1");
  if (sgn(a) == 0) throw Error("type c ideals need a != 0");
  return IdealGens(ring, {RingElement::monomial(ring, 0, i) + RingElement::monomial(ring, m - i, 0, a)});
}

NodeClass classify_node_ideal(const IdealGens& I) {
  if (I.ring->kind() != CurveKind::NodeAbsolute || !I.ring->coeff()->is_field())
    throw Error("node classification needs the absolute node ring over Q");
  NodeClass out;
  for (auto& g : I.gens)
    if (g.is_unit()) return out;
  Stabilized st = stabilize(I);
  int m = static_cast<int>(st.colength);
  out.m = m;
  if (m == 0) return out;
  for (int i = 1; i <= m; ++i) {
    if (ideal_equal(I, node_q_ideal(I.ring, m, i))) {
      out.kind = NodeClass::Kind::TypeQ;
      out.i = i;
      return out;
    }
  }
  QuotientSpace q(I, std::max(st.trunc, m + 2));
  for (int i = 1; i <= m - 1; ++i) {
    auto u = q.coordinates(RingElement::monomial(I.ring, 0, i));
    auto w = q.coordinates(RingElement::monomial(I.ring, m - i, 0));
    // y^i + a x^{m-i} = 0 in R/I
    std::optional<Rational> a;
    bool ok = true;
    for (size_t k = 0; k < u.size() && ok; ++k) {
      if (sgn(w[k]) == 0) {
        ok = sgn(u[k]) == 0;
      } else {
        Rational cand = -u[k] / w[k];
        if (!a) a = cand;
        else ok = *a == cand;
      }
    }
    if (!ok || !a || sgn(*a) == 0) continue;
    if (ideal_equal(I, node_c_ideal(I.ring, m, i, *a))) {
      out.kind = NodeClass::Kind::TypeC;
      out.i = i;
      out.a = *a;
      return out;
    }
  }
  throw TheoremViolation("colength " + std::to_string(m) + " node ideal " + I.to_string() +
                         " matches no type c or type q ideal");
}

PunctualChain punctual_chain(int m) {
  if (m < 2) throw Error("the punctual chain needs m >= 2");
  PunctualChain pc;
  pc.m = m;
  for (int i = 1; i <= m - 1; ++i) pc.components.push_back({i, i, i + 1});
  for (int i = 2; i <= m - 1; ++i) pc.gluing.push_back(i);
  return pc;
}

}  // namespace hilbloc
