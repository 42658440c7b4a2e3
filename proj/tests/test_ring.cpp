#include <random>

#include "doctest.h"
#include "hilbloc/errors.hpp"
#include "hilbloc/ring.hpp"

using namespace hilbloc;

namespace {

RingElement mono(const CurveRingPtr& r, int a, int b, long c = 1) {
  return RingElement::monomial(r, a, b, Rational(c));
}

RingElement random_element(const CurveRingPtr& r, std::mt19937& gen, int maxdeg) {
  std::uniform_int_distribution<int> e(0, maxdeg), c(-3, 3);
  RingElement out(r);
  for (int k = 0; k < 4; ++k) out += mono(r, e(gen), e(gen), c(gen));
  return out;
}

}  // namespace

TEST_CASE("defining relations reduce") {
  auto Q = CoeffAlgebra::rationals();
  auto node = CurveRing::node(Q, 10);
  CHECK(mono(node, 1, 1).is_zero());
  CHECK((RingElement::x(node) * RingElement::y(node)).is_zero());

  auto cusp = CurveRing::cusp(Q, 10);
  CHECK(mono(cusp, 3, 0) == mono(cusp, 1, 3));
  CHECK(RingElement::x(cusp) * RingElement::x(cusp) == mono(cusp, 0, 3));

  auto free = CoeffAlgebra::free({"s"});
  auto rel = CurveRing::node_relative(free, free->param("s"), 10);
  auto e = mono(rel, 2, 2);
  CHECK(e == RingElement::constant(rel, free->param("s").pow(2)));
}

TEST_CASE("relative node reduces x^a y^b to s^min times the leftover power") {
  auto free = CoeffAlgebra::free({"s"});
  Poly s = free->param("s");
  auto rel = CurveRing::node_relative(free, s, 12);
  for (int a = 0; a < 6; ++a) {
    for (int b = 0; b < 6; ++b) {
      int k = std::min(a, b);
      auto expect = RingElement::monomial(rel, a - k, b - k, s.pow(k));
      CHECK(mono(rel, a, b) == expect);
    }
  }
}

TEST_CASE("truncation drops high degree terms") {
  auto Q = CoeffAlgebra::rationals();
  auto cusp = CurveRing::cusp(Q, 4);
  CHECK(mono(cusp, 0, 4).is_zero());
  CHECK(mono(cusp, 2, 0) == mono(cusp, 0, 3));
  CHECK(mono(cusp, 4, 0).is_zero());
}

TEST_CASE("additive inverse") {
  auto cusp = CurveRing::cusp(CoeffAlgebra::rationals(), 8);
  auto x = RingElement::x(cusp);
  CHECK((x + (-x)).is_zero());
  CHECK((x - x).is_zero());
}

TEST_CASE("reduction is idempotent and multiplication is a commutative ring law") {
  std::mt19937 gen(7);
  auto Q = CoeffAlgebra::rationals();
  auto free = CoeffAlgebra::free({"s"});
  std::vector<CurveRingPtr> rings = {CurveRing::node(Q, 10), CurveRing::cusp(Q, 10),
                                     CurveRing::node_relative(free, free->param("s"), 10)};
  for (auto& r : rings) {
    for (int trial = 0; trial < 40; ++trial) {
      auto a = random_element(r, gen, 3), b = random_element(r, gen, 3),
           c = random_element(r, gen, 3);
      CHECK(a.rehost(r) == a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
    }
  }
}

TEST_CASE("substitute evaluates coefficients") {
  auto free = CoeffAlgebra::free({"a", "b", "c", "d"});
  auto Q = CoeffAlgebra::rationals();
  auto src = CurveRing::node(free, 10);
  auto dst = CurveRing::node(Q, 10);

  auto e = mono(src, 2, 0) + RingElement::monomial(src, 1, 0, free->param("a"));
  CHECK(e.substitute(dst, {{"a", Q->zero()}}) == mono(dst, 2, 0));

  auto S = CoeffAlgebra::artin({"u", "v"}, 3);
  auto art = CurveRing::node(S, 10);
  auto bc = RingElement::constant(src, free->param("b") * free->param("c"));
  auto got = bc.substitute(art, {{"b", S->param("u")}, {"c", S->param("v")}});
  CHECK(got == RingElement::constant(art, S->param("u") * S->param("v")));

  auto f = mono(src, 0, 1) + RingElement::monomial(src, 1, 0, free->param("d"));
  auto want = mono(dst, 0, 1) + RingElement::monomial(dst, 1, 0, Rational(2, 3));
  CHECK(f.substitute(dst, {{"d", Q->constant(Rational(2, 3))}}) == want);

  CHECK_THROWS_AS(f.substitute(dst, {}), Error);
}

TEST_CASE("artin algebra kills high powers") {
  auto S = CoeffAlgebra::artin({"u", "v"}, 3);
  CHECK(S->dim() == 6);
  Poly u = S->param("u"), v = S->param("v");
  CHECK(S->mul(S->mul(u, v), u).is_zero());
  CHECK(!S->mul(u, v).is_zero());
  CHECK(S->basis().front() == Exponent{0, 0});
}

TEST_CASE("ring mismatch is an error") {
  auto Q = CoeffAlgebra::rationals();
  auto a = RingElement::x(CurveRing::node(Q, 6));
  auto b = RingElement::x(CurveRing::cusp(Q, 6));
  CHECK_THROWS_AS(a + b, Error);
}
