#include "hilbloc/cusp.hpp"

#include <algorithm>
#include <map>

#include "hilbloc/errors.hpp"

namespace hilbloc {

namespace {

using Kind = CuspCanonicalIdeal::Kind;

std::string term_string(const Rational& c, const std::string& mono, bool first) {
  std::string s;
  Rational a = c;
  if (!first) {
    s += sgn(a) < 0 ? " - " : " + ";
    if (sgn(a) < 0) a = -a;
  }
  if (a == 1) return s + mono;
  if (a == -1) return s + "-" + mono;
  return s + a.get_str() + "*" + mono;
}

std::string mono(int x, int y) {
  std::string s;
  if (x) s = "x";
  if (y) s += std::string(x ? "*" : "") + "y" + (y > 1 ? "^" + std::to_string(y) : "");
  return s.empty() ? "1" : s;
}

void require_cusp_q(const CurveRingPtr& r) {
  if (r->kind() != CurveKind::Cusp) throw Error("expected the cusp ring");
  if (r->coeff()->kind() != CoeffAlgebra::Kind::Rationals)
    throw Error("cusp ideals are handled over Q only");
}

CurveRingPtr roomy(const CurveRingPtr& r, int degree) {
  return r->trunc() > degree + 1 ? r : r->with_trunc(degree + 2);
}

IdealGens rehost(const IdealGens& I, const CurveRingPtr& r) {
  std::vector<RingElement> g;
  for (auto& e : I.gens) g.push_back(e.rehost(r));
  return IdealGens(r, g);
}

Rational nonzero_rational(std::mt19937_64& rng) {
  int num = static_cast<int>(rng() % 9) + 1;
  if (rng() % 2) num = -num;
  int den = static_cast<int>(rng() % 5) + 1;
  Rational a(num, den);
  a.canonicalize();
  return a;
}

// Canonical ideals of a colength: the discrete ones and the Binom family
// (m, k); k = 0 when there is no family.
struct ColengthClass {
  std::vector<CuspCanonicalIdeal> discrete;
  int m = 0, k = 0;
};

ColengthClass colength_class(size_t c) {
  ColengthClass cc;
  if (c == 0) throw Error("the unit ideal has colength 0");
  if (c == 1) {
    cc.discrete = {CuspCanonicalIdeal::two_gen(0, 1)};
  } else if (c % 2 == 0) {
    int m = static_cast<int>(c - 2) / 2;
    cc.discrete = {CuspCanonicalIdeal::pow_y(m + 1), CuspCanonicalIdeal::two_gen(m, 2)};
    cc.m = m;
    cc.k = 1;
  } else {
    int m = static_cast<int>(c - 3) / 2;
    cc.discrete = {m == 0 ? CuspCanonicalIdeal::x() : CuspCanonicalIdeal::x_pow_y(m),
                   CuspCanonicalIdeal::two_gen(m + 1, 1)};
    cc.m = m;
    cc.k = 2;
  }
  return cc;
}

// a with x y^m + a y^{m+k} in I, from coordinates modulo I.
std::optional<Rational> binom_parameter(const IdealGens& I, int m, int k) {
  Stabilized st = stabilize(I);
  QuotientSpace q(I, std::max(st.trunc, m + k + 2));
  auto v = q.coordinates(RingElement::monomial(q.ring(), 1, m));
  auto w = q.coordinates(RingElement::monomial(q.ring(), 0, m + k));
  std::optional<Rational> a;
  for (size_t i = 0; i < w.size(); ++i)
    if (sgn(w[i]) != 0) {
      a = -v[i] / w[i];
      break;
    }
  if (!a || sgn(*a) == 0) return std::nullopt;
  for (size_t i = 0; i < w.size(); ++i)
    if (v[i] + *a * w[i] != 0) return std::nullopt;
  return a;
}

}  // namespace

// ---------------------------------------------------------------- shapes

CuspCanonicalIdeal CuspCanonicalIdeal::pow_y(int n) { return {Kind::PowY, n, 1, 0}; }
CuspCanonicalIdeal CuspCanonicalIdeal::x() { return {Kind::X, 0, 1, 0}; }
CuspCanonicalIdeal CuspCanonicalIdeal::x_pow_y(int m) { return {Kind::XPowY, m, 1, 0}; }
CuspCanonicalIdeal CuspCanonicalIdeal::two_gen(int m, int k) { return {Kind::TwoGen, m, k, 0}; }
CuspCanonicalIdeal CuspCanonicalIdeal::binom(int m, int k, const Rational& a) {
  return {Kind::Binom, m, k, a};
}

void CuspCanonicalIdeal::validate() const {
  bool ok = true;
  switch (kind) {
    case Kind::PowY: ok = m >= 1; break;
    case Kind::X: break;
    case Kind::XPowY: ok = m >= 0; break;
    case Kind::TwoGen: ok = m >= 0 && (k == 1 || k == 2); break;
    case Kind::Binom: ok = m >= 0 && (k == 1 || k == 2) && sgn(a) != 0; break;
  }
  if (!ok) throw Error("invalid cusp ideal " + to_string());
}

std::vector<RingElement> CuspCanonicalIdeal::generators(const CurveRingPtr& ring) const {
  validate();
  if (ring->trunc() <= max_degree()) throw Error("ring truncation too small for " + to_string());
  auto M = [&](int a, int b) { return RingElement::monomial(ring, a, b); };
  switch (kind) {
    case Kind::PowY: return {M(0, m)};
    case Kind::X: return {M(1, 0)};
    case Kind::XPowY: return {M(1, m)};
    case Kind::TwoGen: return {M(1, m), M(0, m + k)};
    case Kind::Binom: return {M(1, m) + RingElement::monomial(ring, 0, m + k, a)};
  }
  return {};
}

IdealGens CuspCanonicalIdeal::ideal(const CurveRingPtr& ring) const {
  return IdealGens(ring, generators(ring));
}

int CuspCanonicalIdeal::max_degree() const {
  switch (kind) {
    case Kind::PowY: return m;
    case Kind::X: return 1;
    case Kind::XPowY: return m + 1;
    case Kind::TwoGen:
    case Kind::Binom: return std::max(m + 1, m + k);
  }
  return 0;
}

std::string CuspCanonicalIdeal::to_string() const {
  switch (kind) {
    case Kind::PowY: return "(" + mono(0, m) + ")";
    case Kind::X: return "(x)";
    case Kind::XPowY: return "(" + mono(1, m) + ")";
    case Kind::TwoGen: return "(" + mono(1, m) + ", " + mono(0, m + k) + ")";
    case Kind::Binom: return "(" + mono(1, m) + term_string(a, mono(0, m + k), false) + ")";
  }
  return "?";
}

bool CuspCanonicalIdeal::operator==(const CuspCanonicalIdeal& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::X: return true;
    case Kind::PowY:
    case Kind::XPowY: return m == o.m;
    case Kind::TwoGen: return m == o.m && k == o.k;
    case Kind::Binom: return m == o.m && k == o.k && a == o.a;
  }
  return false;
}

CurveRingPtr cusp_ring(int colength) {
  return CurveRing::cusp(CoeffAlgebra::rationals(), 2 * std::max(colength, 1) + 16);
}

// ---------------------------------------------------------------- associates

std::string AssocForm::to_string() const {
  return canonical.to_string() + " unit " + unit_witness.to_string() + " (to degree " +
         std::to_string(trunc) + ")";
}

namespace {

struct Solved {
  CuspCanonicalIdeal canonical;
  RingElement unit;
};

// e = U f with f = y^p, x y^p or x y^p + d y^{p+l}; coefficients of U are
// read off x y^j and y^j in increasing degree.
Solved solve_associate(const RingElement& e, int trunc) {
  CurveRingPtr R = e.ring()->with_trunc(trunc);
  std::map<int, Rational> ex, ey;
  for (auto& [mo, c] : e.terms()) (mo.x ? ex : ey)[mo.y] = c.constant_term();
  auto X = [&](int j) { auto it = ex.find(j); return it == ex.end() ? Rational(0) : it->second; };
  auto Y = [&](int j) { auto it = ey.find(j); return it == ey.end() ? Rational(0) : it->second; };
  int mx = ex.empty() ? -1 : ex.begin()->first;
  int ny = ey.empty() ? -1 : ey.begin()->first;

  std::vector<Rational> b(trunc + 1, 0), a(trunc + 1, 0);  // U = sum b_j y^j + a_j x y^j
  CuspCanonicalIdeal canon;
  RingElement f(R);
  if (mx < 0 || (ny >= 0 && mx >= ny)) {
    int p = ny;
    canon = CuspCanonicalIdeal::pow_y(p);
    f = RingElement::monomial(R, 0, p);
    for (int j = 0; j <= trunc; ++j) {
      b[j] = Y(p + j);
      a[j] = X(p + j);
    }
  } else if (ny < 0 || ny - mx >= 3) {
    // x y^p (1 + c x y^{l-3}) absorbs the y-part
    int p = mx;
    canon = p == 0 ? CuspCanonicalIdeal::x() : CuspCanonicalIdeal::x_pow_y(p);
    f = RingElement::monomial(R, 1, p);
    for (int j = 0; j <= trunc; ++j) {
      b[j] = X(p + j);
      a[j] = Y(p + 3 + j);
    }
  } else {
    int p = mx, l = ny - mx;
    b[0] = X(p);
    Rational d = Y(p + l) / b[0];
    canon = CuspCanonicalIdeal::binom(p, l, d);
    f = RingElement::monomial(R, 1, p) + RingElement::monomial(R, 0, p + l, d);
    auto at = [](std::vector<Rational>& v, int j) { return j < 0 ? Rational(0) : v[j]; };
    if (l == 1) {
      // y^{p+1+j}: d b_j + a_{j-2};  x y^{p+j}: b_j + d a_{j-1}
      for (int j = 1; j <= trunc; ++j) {
        b[j] = (Y(p + 1 + j) - at(a, j - 2)) / d;
        a[j - 1] = (X(p + j) - b[j]) / d;
      }
    } else {
      // x y^{p+j}: b_j + d a_{j-2};  y^{p+3+j}: d b_{j+1} + a_j
      b[1] = X(p + 1);
      for (int j = 0; j + 2 <= trunc; ++j) {
        a[j] = Y(p + 3 + j) - d * b[j + 1];
        b[j + 2] = X(p + 2 + j) - d * a[j];
      }
    }
  }
  RingElement U(R);
  for (int j = 0; j < trunc; ++j) {
    if (sgn(b[j]) != 0) U += RingElement::monomial(R, 0, j, b[j]);
    if (sgn(a[j]) != 0) U += RingElement::monomial(R, 1, j, a[j]);
  }
  if (!U.is_unit() || U * f != e.rehost(R))
    throw Error("associate solve failed for " + e.to_string());
  return {canon, U};
}

}  // namespace

AssocForm associate_normal_form(const RingElement& e, int trunc) {
  require_cusp_q(e.ring());
  if (e.is_zero()) throw Error("zero has no associate form");
  if (e.is_unit()) throw Error("units have no associate form: " + e.to_string());
  int mx = -1, ny = -1;
  for (auto& [mo, c] : e.terms()) {
    int& slot = mo.x ? mx : ny;
    if (slot < 0 || mo.y < slot) slot = mo.y;
  }
  int bound = 2 * e.order() + 6;
  if (trunc == 0) trunc = std::max(2 * (std::max(mx, 0) + std::max(ny, 0)) + 8, bound);
  if (trunc < bound)
    throw Error("truncation " + std::to_string(trunc) + " too small, need at least " +
                std::to_string(bound));
  Solved s = solve_associate(e, trunc);
  // the coefficients found must not move when two more degrees are solved
  Solved t = solve_associate(e, trunc + 2);
  if (!(s.canonical == t.canonical) || t.unit.rehost(s.unit.ring()) != s.unit)
    throw Error("associate solve not stable at truncation " + std::to_string(trunc));
  return {s.canonical, s.unit, trunc};
}

CuspCanonicalIdeal principal_ideal_normalize(const RingElement& e) {
  AssocForm af = associate_normal_form(e);
  CurveRingPtr R = roomy(e.ring(), std::max(af.canonical.max_degree(), e.max_degree()));
  if (!ideal_equal(IdealGens(R, {e.rehost(R)}), af.canonical.ideal(R)))
    throw TheoremViolation("(" + e.to_string() + ") differs from " + af.canonical.to_string());
  return af.canonical;
}

// ---------------------------------------------------------------- classification

CuspCanonicalIdeal classify_cusp_ideal(const IdealGens& I0) {
  require_cusp_q(I0.ring);
  if (I0.gens.empty()) throw Error("the zero ideal has infinite colength");
  size_t c = colength(I0);
  ColengthClass cc = colength_class(c);
  int deg = I0.max_degree();
  for (auto& d : cc.discrete) deg = std::max(deg, d.max_degree());
  deg = std::max(deg, cc.m + 3);
  CurveRingPtr R = roomy(I0.ring, deg);
  IdealGens I = rehost(I0, R);
  for (auto& d : cc.discrete)
    if (ideal_equal(I, d.ideal(R))) return d;
  if (cc.k) {
    if (auto a = binom_parameter(I, cc.m, cc.k)) {
      auto cand = CuspCanonicalIdeal::binom(cc.m, cc.k, *a);
      if (ideal_equal(I, cand.ideal(R))) return cand;
    }
  }
  throw TheoremViolation("no canonical cusp ideal of colength " + std::to_string(c) +
                         " equals " + I0.to_string());
}

int colength_formula(const CuspCanonicalIdeal& c) {
  c.validate();
  switch (c.kind) {
    case Kind::PowY: return 2 * c.m;
    case Kind::X: return 3;
    case Kind::XPowY: return 2 * c.m + 3;
    case Kind::TwoGen: return 2 * c.m + c.k;
    case Kind::Binom: return 2 * c.m + 1 + c.k;
  }
  return 0;
}

std::vector<CuspCanonicalIdeal> colength_table(int m, const Rational& a) {
  if (m < 0) throw Error("m must be nonnegative");
  return {CuspCanonicalIdeal::binom(m, 1, a), CuspCanonicalIdeal::two_gen(m, 2),
          CuspCanonicalIdeal::pow_y(m + 1),   CuspCanonicalIdeal::binom(m, 2, a),
          CuspCanonicalIdeal::x_pow_y(m),     CuspCanonicalIdeal::two_gen(m + 1, 1)};
}

// ---------------------------------------------------------------- pairs

namespace {

void check_pair(int m, int n) {
  if (m < 0 || n <= m) throw Error("pair needs 0 <= m < n");
}

}  // namespace

int pair_chain_length(int m, int n) {
  check_pair(m, n);
  return m + n - 1;
}

bool pair_successor(int m1, int n1, int m2, int n2) {
  check_pair(m1, n1);
  check_pair(m2, n2);
  return m1 + n1 - 1 == m2 + n2 && m2 <= m1 && n2 <= n1;
}

std::vector<std::pair<int, int>> pair_successors(int m, int n) {
  check_pair(m, n);
  std::vector<std::pair<int, int>> out;
  if (m >= 1) out.push_back({m - 1, n});
  if (n - 1 > m) out.push_back({m, n - 1});
  return out;
}

// ---------------------------------------------------------------- limits

CuspCanonicalIdeal expected_limit(int m, int k, LimitDirection dir) {
  if (m < 0 || (k != 1 && k != 2)) throw Error("family needs m >= 0 and k in {1, 2}");
  if (dir == LimitDirection::ToZero)
    return k == 1 ? CuspCanonicalIdeal::two_gen(m, 2)
                  : (m == 0 ? CuspCanonicalIdeal::x() : CuspCanonicalIdeal::x_pow_y(m));
  return k == 1 ? CuspCanonicalIdeal::pow_y(m + 1) : CuspCanonicalIdeal::two_gen(m + 1, 1);
}

LimitCertificate flat_limit_certify(int m, int k, LimitDirection dir,
                                    const CuspCanonicalIdeal& claimed, uint64_t seed) {
  if (m < 0 || (k != 1 && k != 2)) throw Error("family needs m >= 0 and k in {1, 2}");
  claimed.validate();
  if (claimed.kind == Kind::Binom) throw Error("a limit claim must be a monomial ideal");
  LimitCertificate cert;
  cert.m = m;
  cert.k = k;
  cert.direction = dir;
  cert.claimed = claimed;

  CurveRingPtr R = cusp_ring(2 * m + k + 4);
  std::mt19937_64 rng(seed);
  std::vector<IdealGens> members;
  for (int s = 0; s < 5; ++s)
    members.push_back(CuspCanonicalIdeal::binom(m, k, nonzero_rational(rng)).ideal(R));
  // the family generator at the limit: x y^m, or y^{m+k} in the chart b x y^m + y^{m+k}
  RingElement g = dir == LimitDirection::ToZero ? RingElement::monomial(R, 1, m)
                                                : RingElement::monomial(R, 0, m + k);

  size_t generic = static_cast<size_t>(2 * m + 1 + k);
  size_t cl = colength(claimed.ideal(R));
  cert.colength_match = cl == generic;
  for (auto& I : members) cert.colength_match &= colength(I) == generic;
  if (!cert.colength_match)
    cert.notes.push_back("claimed colength " + std::to_string(cl) + ", family " +
                         std::to_string(generic));

  cert.generators_in = true;
  for (auto& h : claimed.generators(R)) {
    if (h == g) continue;
    for (auto& I : members)
      if (!member(h, I)) {
        cert.generators_in = false;
        cert.notes.push_back(h.to_string() + " is not in " + I.to_string());
        break;
      }
  }
  if (!member(g, claimed.ideal(R))) {
    cert.generators_in = false;
    cert.notes.push_back("claimed ideal misses " + g.to_string());
  }

  ColengthClass cc = colength_class(generic);
  int holders = 0;
  bool claimed_holds = false;
  for (auto& d : cc.discrete)
    if (member(g, d.ideal(R))) {
      ++holders;
      claimed_holds |= ideal_equal(d.ideal(R), claimed.ideal(R));
    }
  for (int s = 0; s < 5; ++s) {
    auto b = CuspCanonicalIdeal::binom(cc.m, cc.k, nonzero_rational(rng));
    if (member(g, b.ideal(R))) {
      ++holders;
      cert.notes.push_back(b.to_string() + " also contains " + g.to_string());
    }
  }
  cert.unique = holders == 1 && claimed_holds;
  if (!cert.unique) cert.notes.push_back("limit generator held by " + std::to_string(holders) +
                                         " candidates of colength " + std::to_string(generic));
  return cert;
}

bool distinctness(int m, int k, const Rational& a, const Rational& b) {
  if (sgn(a) == 0 || sgn(b) == 0) throw Error("distinctness needs nonzero parameters");
  CurveRingPtr R = cusp_ring(2 * m + k + 4);
  return !ideal_equal(CuspCanonicalIdeal::binom(m, k, a).ideal(R),
                      CuspCanonicalIdeal::binom(m, k, b).ideal(R));
}

IdealGens random_generator_ideal(const CurveRingPtr& ring, std::mt19937_64& rng, int max_m) {
  require_cusp_q(ring);
  if (max_m < 0 || ring->trunc() <= max_m + 3) throw Error("ring too small for the generators");
  int count = 1 + static_cast<int>(rng() % 2);
  std::vector<RingElement> gens;
  for (int g = 0; g < count; ++g) {
    int m = static_cast<int>(rng() % (max_m + 1));
    switch (rng() % 5) {
      case 0: gens.push_back(CuspCanonicalIdeal::binom(m, 1, nonzero_rational(rng)).generators(ring)[0]); break;
      case 1: gens.push_back(CuspCanonicalIdeal::binom(m, 2, nonzero_rational(rng)).generators(ring)[0]); break;
      case 2: gens.push_back(RingElement::monomial(ring, 0, m + 1)); break;
      case 3: gens.push_back(RingElement::x(ring) + RingElement::monomial(ring, 0, 2, nonzero_rational(rng))); break;
      default: gens.push_back(RingElement::monomial(ring, 1, m)); break;
    }
  }
  return IdealGens(ring, gens);
}

}  // namespace hilbloc
