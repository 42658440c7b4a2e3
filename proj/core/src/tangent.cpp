#include "hilbloc/tangent.hpp"

#include <algorithm>
#include <array>
#include <optional>

#include "hilbloc/errors.hpp"
#include "hilbloc/groebner.hpp"

namespace hilbloc {

namespace {

RingElement mono(const CurveRingPtr& r, int a, int b, const Rational& c = 1) {
  return RingElement::monomial(r, a, b, c);
}

void require_cusp_q(const CurveRingPtr& r) {
  if (r->kind() != CurveKind::Cusp) throw Error("tangent spaces are computed on the cusp only");
  if (r->coeff()->kind() != CoeffAlgebra::Kind::Rationals) throw Error("expected coefficients in Q");
}

IdealGens rehost(const IdealGens& I, const CurveRingPtr& r) {
  std::vector<RingElement> g;
  for (auto& e : I.gens) g.push_back(e.rehost(r));
  return IdealGens(r, g);
}

PolyRingPtr plane() {
  static const PolyRingPtr r = make_ring({"x", "y"});
  return r;
}

Poly to_plane(const RingElement& e) {
  Poly p(plane());
  for (auto& [m, c] : e.terms()) p += Poly::monomial(plane(), {m.x, m.y}, c.constant_term());
  return p;
}

RingElement from_plane(const Poly& p, const CurveRingPtr& r) {
  RingElement e(r);
  for (auto& t : p.terms()) e += mono(r, t.exp[0], t.exp[1], t.coef);
  return e;
}

int max_degree(const std::vector<std::vector<RingElement>>& syz) {
  int d = 0;
  for (auto& s : syz)
    for (auto& q : s) d = std::max(d, q.max_degree());
  return d;
}

// (m, shifted) when the generators are exactly one of the factorization pairs.
std::optional<std::pair<int, bool>> factorization_family(const IdealGens& I) {
  if (I.gens.size() != 2) return std::nullopt;
  auto single = [](const RingElement& e) -> std::optional<CurveMono> {
    if (e.terms().size() != 1) return std::nullopt;
    auto& [m, c] = *e.terms().begin();
    if (c.constant_term() != 1 || !c.is_constant()) return std::nullopt;
    return m;
  };
  auto a = single(I.gens[0]), b = single(I.gens[1]);
  if (!a || !b || a->x != 1 || b->x != 0) return std::nullopt;
  if (b->y == a->y + 2) return std::make_pair(a->y, false);
  if (b->y == a->y + 1 && a->y >= 1) return std::make_pair(a->y - 1, true);
  return std::nullopt;
}

std::vector<std::vector<RingElement>> plane_syzygies(const IdealGens& I) {
  std::vector<Poly> gens;
  for (auto& g : I.gens) gens.push_back(to_plane(g));
  Poly x = Poly::variable(plane(), "x"), y = Poly::variable(plane(), "y");
  gens.push_back(x * x - y * y * y);
  std::vector<std::vector<RingElement>> out;
  for (auto& s : syzygies(plane(), gens)) {
    std::vector<RingElement> v;
    bool nonzero = false;
    for (size_t j = 0; j + 1 < s.size(); ++j) {
      v.push_back(from_plane(s[j], I.ring));
      nonzero |= !v.back().is_zero();
    }
    if (nonzero) out.push_back(std::move(v));
  }
  return out;
}

// Checks sum q_j g_j = 0 in a ring roomy enough to see every product.
void check_syzygies(const IdealGens& I, const std::vector<std::vector<RingElement>>& syz) {
  auto R = I.ring->with_trunc(I.max_degree() + max_degree(syz) + 4);
  for (auto& s : syz) {
    RingElement sum(R);
    for (size_t j = 0; j < s.size(); ++j) sum += s[j].rehost(R) * I.gens[j].rehost(R);
    if (!sum.is_zero()) throw TheoremViolation("not a syzygy of " + I.to_string());
  }
}

struct Solved {
  size_t dim;
  std::vector<std::vector<RingElement>> basis;
};

Solved solve_at(const IdealGens& I, const std::vector<std::vector<RingElement>>& syz, int trunc) {
  auto R = I.ring->with_trunc(trunc);
  QuotientSpace Q(rehost(I, R), trunc);
  size_t c = Q.dim(), n = I.gens.size();
  std::vector<RingElement> B;
  for (size_t b = 0; b < c; ++b) {
    std::vector<Rational> unit(c, 0);
    unit[b] = 1;
    B.push_back(Q.element(unit));
  }
  std::vector<std::vector<Rational>> rows;
  for (auto& s : syz) {
    std::vector<std::vector<Rational>> block(c, std::vector<Rational>(n * c, 0));
    for (size_t j = 0; j < n; ++j) {
      auto q = s[j].rehost(R);
      if (q.is_zero()) continue;
      for (size_t b = 0; b < c; ++b) {
        auto coords = Q.coordinates(q * B[b]);
        for (size_t t = 0; t < c; ++t) block[t][j * c + b] = coords[t];
      }
    }
    for (auto& row : block) rows.push_back(std::move(row));
  }
  Solved out;
  auto ker = kernel_basis(rows, static_cast<int>(n * c));
  out.dim = ker.size();
  for (auto& v : ker) {
    std::vector<RingElement> h;
    for (size_t j = 0; j < n; ++j)
      h.push_back(Q.element(std::vector<Rational>(v.begin() + j * c, v.begin() + (j + 1) * c)));
    out.basis.push_back(std::move(h));
  }
  return out;
}

}  // namespace

bool HomSpace::in_kernel(const std::vector<RingElement>& h) const {
  if (h.size() != ideal.gens.size()) throw Error("tuple length does not match the generators");
  std::vector<RingElement> images;
  for (auto& s : syzygies) {
    auto R = ideal.ring->with_trunc(std::max(trunc, ideal.ring->trunc()));
    RingElement sum(R);
    for (size_t j = 0; j < h.size(); ++j) sum += s[j].rehost(R) * h[j].rehost(R);
    images.push_back(sum);
  }
  return member_all(images, ideal);
}

std::vector<std::vector<RingElement>> factorization_syzygies(const CurveRingPtr& r, int m,
                                                             bool shifted) {
  if (m < 0) throw Error("m must be nonnegative");
  auto x = mono(r, 1, 0), y = mono(r, 0, 1), y2 = mono(r, 0, 2);
  // columns of the 2x2 matrices, second entry negated: they act on
  // (x y^m, -y^{m+2}) resp. (x y^{m+1}, -y^{m+2})
  if (!shifted) return {{y2, -x}, {x, -y}};
  return {{x, -y2}, {y, -x}};
}

void check_matrix_factorizations() {
  auto P = plane();
  Poly x = Poly::variable(P, "x"), y = Poly::variable(P, "y");
  Poly f = x * x - y * y * y;
  using M = std::array<std::array<Poly, 2>, 2>;
  auto check = [&](const M& a, const M& b) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        Poly e = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        Poly want = i == j ? f : Poly(P);
        if (e != want) throw TheoremViolation("not a matrix factorization of x^2 - y^3");
      }
  };
  check(M{{{y * y, x}, {x, y}}}, M{{{-y, x}, {x, -(y * y)}}});
  check(M{{{x, y}, {y * y, x}}}, M{{{x, -y}, {-(y * y), x}}});
}

HomSpace hom_dim(const IdealGens& I0, HomPath path) {
  require_cusp_q(I0.ring);
  if (I0.gens.empty()) throw Error("hom_dim needs at least one generator");
  static const bool checked = (check_matrix_factorizations(), true);
  (void)checked;

  HomSpace hs;
  hs.ideal = I0;
  auto fam = factorization_family(I0);
  if (path == HomPath::MatrixFactorization && !fam)
    throw Error("no matrix factorization for " + I0.to_string());
  if (fam && path != HomPath::Syzygy) {
    hs.syzygies = factorization_syzygies(I0.ring, fam->first, fam->second);
    hs.path = "matrix-factorization";
  } else {
    hs.syzygies = plane_syzygies(I0);
    hs.path = "syzygy";
  }
  check_syzygies(I0, hs.syzygies);

  auto st = stabilize(I0);
  int T = st.trunc + max_degree(hs.syzygies);
  auto a = solve_at(I0, hs.syzygies, T);
  auto b = solve_at(I0, hs.syzygies, T + 1);
  if (a.dim != b.dim) throw ResourceCap("Hom dimension moved between truncations " + std::to_string(T) +
                                        " and " + std::to_string(T + 1));
  hs.dimension = a.dim;
  hs.basis = std::move(a.basis);
  hs.trunc = T;
  return hs;
}

std::vector<std::vector<RingElement>> explicit_kernel_basis(const CurveRingPtr& r, int m) {
  if (m < 0) throw Error("m must be nonnegative");
  RingElement zero(r);
  std::vector<std::vector<RingElement>> out;
  // tuples are written for (x y^m, -y^{m+2}); flip the second entry
  auto add = [&](const RingElement& h1, const RingElement& h2) { out.push_back({h1, -h2}); };
  add(zero, mono(r, 0, m + 1));
  if (m >= 1) add(zero, mono(r, 1, m - 1));
  add(mono(r, 0, m + 1), zero);
  add(mono(r, 0, m), zero);
  if (m >= 1) add(mono(r, 1, m - 1), zero);
  for (int j = 0; j <= m - 2; ++j) add(mono(r, 1, j), -mono(r, 0, j + 2));
  for (int j = 1; j <= m - 1; ++j) add(mono(r, 0, j), -mono(r, 1, j - 1));
  return out;
}

size_t principal_hom_dim(const RingElement& g) {
  require_cusp_q(g.ring());
  if (g.is_zero()) throw Error("the zero ideal has infinite colength");
  IdealGens I(g.ring(), {g});
  size_t c = colength(I);
  auto hs = hom_dim(I, HomPath::Syzygy);
  if (hs.dimension != c)
    throw TheoremViolation("Hom of the principal ideal " + I.to_string() + " has dimension " +
                           std::to_string(hs.dimension) + ", colength " + std::to_string(c));
  return c;
}

FamilyTangent principal_family_tangent(const RingElement& g, const RingElement& dg) {
  require_cusp_q(g.ring());
  if (g.is_zero()) throw Error("the zero ideal has infinite colength");
  FamilyTangent ft;
  ft.ideal = IdealGens(g.ring(), {g});
  auto st = stabilize(ft.ideal);
  int T = std::max(st.trunc, dg.max_degree() + 2);
  auto R = g.ring()->with_trunc(T);
  QuotientSpace Q(rehost(ft.ideal, R), T);
  auto coords = Q.coordinates(dg.rehost(R));
  ft.image = Q.element(coords);
  ft.nonzero = std::any_of(coords.begin(), coords.end(), [](const Rational& q) { return sgn(q) != 0; });
  return ft;
}

FamilyTangent family_tangent(int m, int k, const Rational& at, bool infinity_chart) {
  if (m < 0 || (k != 1 && k != 2)) throw Error("family needs m >= 0 and k in {1, 2}");
  if (!infinity_chart && sgn(at) == 0)
    throw Error("a = 0 leaves the family (x y^m is not a flat member)");
  if (infinity_chart && sgn(at) == 0 && k == 2)
    throw Error("b = 0 leaves the k = 2 family (its limit is not principal)");
  auto r = cusp_ring(2 * (m + k) + 4);
  RingElement xy = mono(r, 1, m), yy = mono(r, 0, m + k);
  if (infinity_chart) return principal_family_tangent(xy.scaled(at) + yy, xy);
  return principal_family_tangent(xy + yy.scaled(at), yy);
}

std::vector<ScanPoint> p1_scan(int c, const std::vector<Rational>& samples0) {
  if (c != 2 && c != 3) throw Error("scan is defined for colength 2 and 3");
  if (samples0.empty()) throw Error("sample list is empty");
  auto samples = samples0;
  for (auto& a : samples) {
    a.canonicalize();
    if (sgn(a) == 0) throw Error("samples must be nonzero; a = 0 is scanned as a boundary point");
  }
  std::sort(samples.begin(), samples.end());
  samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

  auto r = cusp_ring(c + 2);
  std::vector<ScanPoint> out;
  auto principal = [&](const std::string& pt, const RingElement& g) {
    out.push_back({pt, IdealGens(r, {g}).to_string(), principal_hom_dim(g)});
  };
  auto pair = [&](const std::string& pt, const RingElement& a, const RingElement& b) {
    IdealGens I(r, {a, b});
    out.push_back({pt, I.to_string(), hom_dim(I).dimension});
  };
  for (auto& a : samples) principal("a=" + a.get_str(), mono(r, 1, 0) + mono(r, 0, c - 1, a));
  if (c == 2) {
    pair("a=0", mono(r, 1, 0), mono(r, 0, 2));
    principal("a=inf", mono(r, 0, 1));
  } else {
    principal("a=0", mono(r, 1, 0));
    pair("a=inf", mono(r, 1, 1), mono(r, 0, 2));
  }
  return out;
}

}  // namespace hilbloc
