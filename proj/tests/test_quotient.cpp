#include <random>

#include "doctest.h"
#include "hilbloc/errors.hpp"
#include "hilbloc/parse.hpp"
#include "hilbloc/quotient.hpp"

using namespace hilbloc;

namespace {

IdealGens ideal(const CurveRingPtr& r, const std::string& s) {
  return instantiate(parse_ideal_expr(s), r);
}

RingElement elem(const CurveRingPtr& r, const std::string& s) { return ideal(r, s).gens.at(0); }

CurveRingPtr cusp() { return CurveRing::cusp(CoeffAlgebra::rationals(), 12); }
CurveRingPtr node() { return CurveRing::node(CoeffAlgebra::rationals(), 12); }

}  // namespace

TEST_CASE("quotient basis examples") {
  auto qb = quotient_basis(ideal(cusp(), "1"), 6);
  CHECK(qb.colength == 0u);

  qb = quotient_basis(ideal(cusp(), "x, y"), 5);
  REQUIRE(qb.colength == 1u);
  CHECK(qb.monomials.front().mono == CurveMono{0, 0});

  for (int m = 2; m <= 6; ++m) {
    for (int i = 1; i <= m; ++i) {
      auto I = ideal(node(), "x^" + std::to_string(m - i + 1) + ", y^" + std::to_string(i));
      auto q = quotient_basis(I, 3 * m + 4);
      REQUIRE(q.colength == static_cast<size_t>(m));
      std::vector<CurveMono> want{{0, 0}};
      for (int a = 1; a <= m - i; ++a) want.push_back({a, 0});
      for (int b = 1; b <= i - 1; ++b) want.push_back({0, b});
      std::vector<CurveMono> got;
      for (auto& e : q.monomials) got.push_back(e.mono);
      std::sort(want.begin(), want.end(), graded_less);
      CHECK(got == want);
    }
  }
}

TEST_CASE("colength examples") {
  CHECK(colength(ideal(cusp(), "x*y, y^2")) == 3);
  auto I = instantiate(parse_ideal_expr("y^2 + a*x^2"), node(), Rational(2, 3));
  CHECK(colength(I) == 4);
  auto y = ideal(cusp(), "y");
  CHECK(colength(y) == 2);
  auto qb = quotient_basis(y, 6);
  REQUIRE(qb.monomials.size() == 2);
  CHECK(qb.monomials[0].mono == CurveMono{0, 0});
  CHECK(qb.monomials[1].mono == CurveMono{1, 0});
}

TEST_CASE("zero ideal has no finite colength") {
  IdealGens zero(cusp(), {RingElement(cusp())});
  OracleOptions opt;
  opt.cap = 40;
  CHECK_THROWS_AS(colength(zero, opt), ResourceCap);
}

TEST_CASE("membership examples") {
  auto c = cusp();
  CHECK(member(elem(c, "y^3"), ideal(c, "x*y + y^2")));
  CHECK(!member(elem(c, "x"), ideal(c, "y")));
  CHECK(member(elem(c, "y^3"), ideal(c, "x")));
}

TEST_CASE("ideal equality examples") {
  auto c = cusp();
  CHECK(ideal_equal(ideal(c, "x, x*y"), ideal(c, "x")));
  CHECK(ideal_equal(ideal(c, "x*y + y^2, x*y + 2*y^2"), ideal(c, "x*y, y^2")));
  CHECK(!ideal_equal(ideal(c, "x*y + y^2"), ideal(c, "x*y + 2*y^2")));
}

TEST_CASE("s-freeness over Artin coefficients") {
  auto eps = CoeffAlgebra::artin({"e"}, 2);
  auto r = CurveRing::node(eps, 10);
  Poly e = eps->param("e");
  RingElement f = RingElement::monomial(r, 2, 0) + RingElement::monomial(r, 1, 0, e);
  RingElement g = RingElement::y(r);
  CHECK(s_free_rank(IdealGens(r, {f, g}), {{0, 0}, {1, 0}}));

  // Q_2^2 = (x, y^2) with b_1 = u, c_0 = v violates b_1 c_0 = 0.
  auto S = CoeffAlgebra::artin({"u", "v"}, 3);
  auto rs = CurveRing::node(S, 10);
  Poly u = S->param("u"), v = S->param("v");
  RingElement f2 = RingElement::x(rs) + RingElement::monomial(rs, 0, 1, u);
  RingElement g2 = RingElement::monomial(rs, 0, 2) + RingElement::constant(rs, v);
  CHECK(!s_free_rank(IdealGens(rs, {f2, g2}), {{0, 0}, {0, 1}}));
  // With c_0 = 0 the deformation is flat.
  CHECK(s_free_rank(IdealGens(rs, {f2, RingElement::monomial(rs, 0, 2)}), {{0, 0}, {0, 1}}));

  // undeformed monomial ideals over any S
  for (int m = 2; m <= 4; ++m) {
    for (int i = 1; i <= m; ++i) {
      IdealGens Q(rs, {RingElement::monomial(rs, m - i + 1, 0), RingElement::monomial(rs, 0, i)});
      std::vector<CurveMono> basis{{0, 0}};
      for (int a = 1; a <= m - i; ++a) basis.push_back({a, 0});
      for (int b = 1; b <= i - 1; ++b) basis.push_back({0, b});
      CHECK(s_free_rank(Q, basis));
    }
  }
  CHECK_THROWS_AS(s_free_rank(ideal(cusp(), "x, y"), {{0, 0}}), Error);
}

TEST_CASE("oracle properties on random principal and two-generator ideals") {
  std::mt19937 gen(11);
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 4);
  auto c = cusp();
  for (int trial = 0; trial < 25; ++trial) {
    RingElement g(c);
    while (g.is_zero() || g.is_unit()) {
      g = RingElement(c);
      for (int k = 0; k < 3; ++k)
        g += RingElement::monomial(c, ex(gen) % 2, 1 + ex(gen), Rational(coef(gen)));
    }
    IdealGens I(c, {g});
    auto st = stabilize(I);
    OracleOptions twice;
    twice.start = 2 * st.trunc;
    CHECK(colength(I, twice) == st.colength);
    // closure under sums and multiples
    RingElement e1 = g * RingElement::monomial(c, 0, ex(gen));
    RingElement e2 = g * RingElement::monomial(c, 1, ex(gen), Rational(coef(gen)));
    CHECK(member(e1 + e2, I));
    CHECK(member(e1 * RingElement::monomial(c, ex(gen) % 2, ex(gen)), I));
    // equal ideals have equal colength
    IdealGens J(c, {g, g * RingElement::y(c)});
    CHECK(ideal_equal(I, J));
    CHECK(colength(J) == st.colength);
  }
}
