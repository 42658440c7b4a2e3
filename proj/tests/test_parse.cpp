#include "doctest.h"
#include "hilbloc/parse.hpp"

using namespace hilbloc;

TEST_CASE("parse generators") {
  auto e = parse_ideal_expr("x*y^2 + 3/2*y^4, y^5");
  REQUIRE(e.gens.size() == 2);
  CHECK(e.gens[0].size() == 2);
  CHECK(e.gens[0][1].coef == Rational(3, 2));
  CHECK(e.gens[0][1].y == 4);
  CHECK(!e.symbolic());
  CHECK(e.to_string() == "x*y^2 + 3/2*y^4, y^5");
}

TEST_CASE("symbolic parameter") {
  auto e = parse_ideal_expr("y^2 + a*x^2");
  REQUIRE(e.gens.size() == 1);
  CHECK(e.symbolic());
  CHECK(e.gens[0][1].param);
  auto ring = CurveRing::node(CoeffAlgebra::rationals(), 8);
  CHECK_THROWS_AS(instantiate(e, ring), Error);
  auto I = instantiate(e, ring, Rational(5));
  CHECK(I.gens[0] == RingElement::monomial(ring, 0, 2) + RingElement::monomial(ring, 2, 0, 5));
}

TEST_CASE("syntax errors carry offsets") {
  try {
    parse_ideal_expr("x^");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(parse_ideal_expr(""), ParseError);
  CHECK_THROWS_AS(parse_ideal_expr("x + , y"), ParseError);
  CHECK_THROWS_AS(parse_ideal_expr("x^99999"), ParseError);
  CHECK_THROWS_AS(parse_ideal_expr("1/0*x"), ParseError);
}

TEST_CASE("round trip up to whitespace") {
  for (const char* s : {"x", "-x + 2*y^3", "x*y, y^2", "1 + x", "-3/4*a*x^2*y + y"}) {
    auto e = parse_ideal_expr(s);
    CHECK(parse_ideal_expr(e.to_string()).to_string() == e.to_string());
  }
  CHECK(parse_ideal_expr("  x  *  y ,y^2 ").to_string() == "x*y, y^2");
}

TEST_CASE("rationals") {
  CHECK(parse_rational("-2/6") == Rational(-1, 3));
  CHECK(parse_rational("7") == 7);
  CHECK_THROWS_AS(parse_rational("2x"), ParseError);
}
