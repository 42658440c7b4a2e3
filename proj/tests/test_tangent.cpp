#include <random>

#include "doctest.h"
#include "hilbloc/errors.hpp"
#include "hilbloc/parse.hpp"
#include "hilbloc/tangent.hpp"

using namespace hilbloc;

namespace {

IdealGens id(const std::string& text, int room = 20) {
  return instantiate(parse_ideal_expr(text), cusp_ring(room));
}

RingElement el(const std::string& text) { return id(text).gens.at(0); }

IdealGens pair_ideal(const CurveRingPtr& r, int xm, int yn) {
  return IdealGens(r, {RingElement::monomial(r, 1, xm), RingElement::monomial(r, 0, yn)});
}

}  // namespace

TEST_CASE("matrix factorizations") {
  CHECK_NOTHROW(check_matrix_factorizations());
  auto r = cusp_ring(20);
  for (int m = 0; m <= 3; ++m)
    for (bool shifted : {false, true}) {
      auto I = pair_ideal(r, shifted ? m + 1 : m, m + 2);
      for (auto& s : factorization_syzygies(r, m, shifted)) {
        auto sum = s[0] * I.gens[0] + s[1] * I.gens[1];
        CHECK(sum.is_zero());
      }
    }
}

TEST_CASE("both Hom paths agree on the factorization families") {
  auto r = cusp_ring(24);
  for (int m = 0; m <= 5; ++m) {
    CAPTURE(m);
    auto I = pair_ideal(r, m, m + 2);
    auto mf = hom_dim(I);
    CHECK(mf.path == "matrix-factorization");
    CHECK(mf.dimension == static_cast<size_t>(2 * m + 3));
    CHECK(hom_dim(I, HomPath::Syzygy).dimension == mf.dimension);

    auto J = pair_ideal(r, m + 1, m + 2);
    auto mf2 = hom_dim(J, HomPath::MatrixFactorization);
    CHECK(mf2.dimension == static_cast<size_t>(2 * m + 4));
    CHECK(hom_dim(J, HomPath::Syzygy).dimension == mf2.dimension);
  }
}

TEST_CASE("Hom basis invariants") {
  auto hs = hom_dim(id("x*y^2, y^4"));
  CHECK(hs.basis.size() == hs.dimension);
  for (auto& h : hs.basis) CHECK(hs.in_kernel(h));
  auto r = hs.ideal.ring;
  CHECK(!hs.in_kernel({RingElement::constant(r, r->coeff()->constant(1)), RingElement(r)}));
  CHECK_THROWS_AS(hs.in_kernel({RingElement(r)}), Error);

  auto mx = hom_dim(id("x, y"));
  CHECK(mx.path == "syzygy");
  CHECK(mx.dimension == 2);
  CHECK_THROWS_AS(hom_dim(id("x, y"), HomPath::MatrixFactorization), Error);
  // generators that are not monomials go the syzygy way
  CHECK(hom_dim(id("x*y + y^2, y^3")).path == "syzygy");
}

TEST_CASE("explicit kernel basis lies in the kernel and is independent") {
  auto r = cusp_ring(24);
  for (int m = 0; m <= 4; ++m) {
    CAPTURE(m);
    auto I = pair_ideal(r, m, m + 2);
    auto hs = hom_dim(I);
    auto listed = explicit_kernel_basis(r, m);
    CHECK(listed.size() == static_cast<size_t>(2 * m + 3));
    for (auto& h : listed) CHECK(hs.in_kernel(h));
    auto st = stabilize(I);
    auto R = r->with_trunc(st.trunc);
    std::vector<RingElement> g;
    for (auto& e : I.gens) g.push_back(e.rehost(R));
    QuotientSpace Q(IdealGens(R, g), st.trunc);
    std::vector<std::vector<Rational>> vecs;
    for (auto& h : listed) {
      auto a = Q.coordinates(h[0].rehost(R)), b = Q.coordinates(h[1].rehost(R));
      a.insert(a.end(), b.begin(), b.end());
      vecs.push_back(a);
    }
    CHECK(rank_of(vecs) == 2 * m + 3);
  }
}

TEST_CASE("principal ideals") {
  CHECK(principal_hom_dim(el("x + 3*y")) == 2);
  CHECK(principal_hom_dim(el("x + 2*y^2")) == 3);
  CHECK(principal_hom_dim(el("y")) == 2);
  CHECK_THROWS_AS(principal_hom_dim(RingElement(cusp_ring(4))), Error);

  auto r = cusp_ring(20);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    RingElement g(r);
    int terms = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < terms; ++i) {
      Rational c(static_cast<int>(rng() % 9) - 4, 1 + static_cast<int>(rng() % 3));
      c.canonicalize();
      g += RingElement::monomial(r, static_cast<int>(rng() % 2), 1 + static_cast<int>(rng() % 4), c);
    }
    if (g.is_zero()) g = RingElement::monomial(r, 0, 2);
    CAPTURE(g.to_string());
    CHECK(principal_hom_dim(g) == colength(IdealGens(r, {g})));
  }
}

TEST_CASE("family tangents") {
  auto t = family_tangent(0, 1, 1);
  CHECK(t.nonzero);
  CHECK(t.image == RingElement::monomial(t.image.ring(), 0, 1));
  auto inf = family_tangent(0, 1, 0, true);
  CHECK(inf.nonzero);
  CHECK(inf.image == RingElement::monomial(inf.image.ring(), 1, 0));
  for (int m = 0; m <= 4; ++m)
    for (int k : {1, 2})
      for (Rational a : {Rational(1), Rational(-2), Rational(1, 3), Rational(5)}) {
        CAPTURE(m);
        CAPTURE(k);
        CHECK(family_tangent(m, k, a).nonzero);
        CHECK(family_tangent(m, k, a, true).nonzero);
      }
  // a constant family has zero derivative
  auto g = el("x*y + y^2");
  auto zero = principal_family_tangent(g, RingElement(g.ring()));
  CHECK(!zero.nonzero);
  CHECK(zero.image.is_zero());
  CHECK_THROWS_AS(family_tangent(1, 1, 0), Error);
  CHECK_THROWS_AS(family_tangent(1, 2, 0, true), Error);
  CHECK_THROWS_AS(family_tangent(1, 3, 1), Error);
}

TEST_CASE("P1 scans") {
  auto two = p1_scan(2, {Rational(3), Rational(-1), Rational(1, 2)});
  REQUIRE(two.size() == 5);
  CHECK(two[0].point == "a=-1");
  CHECK(two[2].point == "a=3");
  for (int i = 0; i < 3; ++i) CHECK(two[i].dimension == 2);
  CHECK(two[3].point == "a=0");
  CHECK(two[3].ideal == "(x, y^2)");
  CHECK(two[3].dimension == 3);
  CHECK(two[4].point == "a=inf");
  CHECK(two[4].dimension == 2);

  auto three = p1_scan(3, {Rational(2), Rational(-3)});
  REQUIRE(three.size() == 4);
  CHECK(three[0].dimension == 3);
  CHECK(three[1].dimension == 3);
  CHECK(three[2].dimension == 3);
  CHECK(three[3].ideal == "(x*y, y^2)");
  CHECK(three[3].dimension == 4);

  auto singular = [](const std::vector<ScanPoint>& s, size_t base) {
    return std::count_if(s.begin(), s.end(), [&](const ScanPoint& p) { return p.dimension > base; });
  };
  CHECK(singular(two, 2) == 1);
  CHECK(singular(three, 3) == 1);
  CHECK_THROWS_AS(p1_scan(2, {}), Error);
  CHECK_THROWS_AS(p1_scan(2, {Rational(0)}), Error);
  CHECK_THROWS_AS(p1_scan(4, {Rational(1)}), Error);
}
