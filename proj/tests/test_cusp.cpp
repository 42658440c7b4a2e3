#include <functional>
#include <random>

#include "doctest.h"
#include "hilbloc/cusp.hpp"
#include "hilbloc/errors.hpp"
#include "hilbloc/parse.hpp"

using namespace hilbloc;
using C = CuspCanonicalIdeal;

namespace {

CurveRingPtr ring() { return cusp_ring(24); }

RingElement el(const std::string& text, const CurveRingPtr& r = ring()) {
  return instantiate(parse_ideal_expr(text), r).gens.at(0);
}

IdealGens id(const std::string& text, const CurveRingPtr& r = ring()) {
  return instantiate(parse_ideal_expr(text), r);
}

}  // namespace

TEST_CASE("canonical shapes print and validate") {
  CHECK(C::binom(2, 2, 3).to_string() == "(x*y^2 + 3*y^4)");
  CHECK(C::binom(1, 1, Rational(-1, 2)).to_string() == "(x*y - 1/2*y^2)");
  CHECK(C::two_gen(0, 1).to_string() == "(x, y)");
  CHECK(C::pow_y(3).to_string() == "(y^3)");
  CHECK(C::x().to_string() == "(x)");
  CHECK_THROWS_AS(C::binom(1, 1, 0).validate(), Error);
  CHECK_THROWS_AS(C::two_gen(1, 3).validate(), Error);
  CHECK_THROWS_AS(C::pow_y(0).validate(), Error);
}

TEST_CASE("associate normal forms") {
  auto r = ring();
  auto one_plus_y = el("1 + y", r);
  auto af = associate_normal_form(one_plus_y * el("x", r));
  CHECK(af.canonical == C::x());
  CHECK(af.unit_witness == el("1 + y", r).rehost(af.unit_witness.ring()));

  af = associate_normal_form(one_plus_y * el("x", r) + el("2*y", r));
  CHECK(af.canonical == C::binom(0, 1, 2));

  af = associate_normal_form(el("y^2 + y^3", r));
  CHECK(af.canonical == C::pow_y(2));
  CHECK(af.unit_witness == el("1 + y", r).rehost(af.unit_witness.ring()));

  // y-part three or more steps past the x-part is absorbed: x y^m (1 + c x)
  CHECK(associate_normal_form(el("x*y^2 + 3*y^5", r)).canonical == C::x_pow_y(2));
  CHECK(associate_normal_form(el("x + y^7", r)).canonical == C::x());
  // x-part not below the y-part
  CHECK(associate_normal_form(el("x*y^3 + 4*y^2", r)).canonical == C::pow_y(2));

  CHECK_THROWS_AS(associate_normal_form(el("1 + x", r)), Error);
  CHECK_THROWS_AS(associate_normal_form(RingElement(r)), Error);
  CHECK_THROWS_AS(associate_normal_form(el("y^3", r), 8), Error);
}

TEST_CASE("associate round trip on unit multiples") {
  auto r = ring();
  std::mt19937_64 rng(5);
  auto small = [&] {
    Rational q(static_cast<int>(rng() % 7) - 3, 1 + static_cast<int>(rng() % 3));
    q.canonicalize();
    return q;
  };
  for (int t = 0; t < 40; ++t) {
    // random unit times a random canonical element
    RingElement u = RingElement::constant(r, r->coeff()->constant(1 + static_cast<int>(rng() % 4)));
    for (int j = 1; j <= 3; ++j) {
      u += RingElement::monomial(r, 0, j, small());
      u += RingElement::monomial(r, 1, j - 1, small());
    }
    int m = static_cast<int>(rng() % 4);
    Rational d = small();
    if (sgn(d) == 0) d = 1;
    C want;
    switch (rng() % 4) {
      case 0: want = C::pow_y(m + 1); break;
      case 1: want = m == 0 ? C::x() : C::x_pow_y(m); break;
      default: want = C::binom(m, 1 + static_cast<int>(rng() % 2), d); break;
    }
    RingElement e = u * want.generators(r)[0];
    auto af = associate_normal_form(e);
    CAPTURE(e.to_string());
    // d is an associate invariant: the unit scales x y^m and y^{m+k} alike
    CHECK(af.canonical == want);
    CHECK(af.unit_witness.is_unit());
    auto R = af.unit_witness.ring();
    CHECK(af.unit_witness * af.canonical.generators(R)[0] == e.rehost(R));
  }
}

TEST_CASE("principal ideals") {
  CHECK(principal_ideal_normalize(el("x*y^2 + 3*y^5")) == C::x_pow_y(2));
  CHECK(principal_ideal_normalize(el("x*y + 2*y^2")) == C::binom(1, 1, 2));
  CHECK(principal_ideal_normalize(el("x + 5*y^2")) == C::binom(0, 2, 5));
  CHECK(principal_ideal_normalize(el("1 - y") * el("x*y + 3*y^3")) == C::binom(1, 2, 3));
}

TEST_CASE("classification") {
  CHECK(classify_cusp_ideal(id("x*y + y^2, y^3")) == C::binom(1, 1, 1));
  CHECK(classify_cusp_ideal(id("x, x*y^3")) == C::x());
  CHECK(classify_cusp_ideal(id("x*y^2, y")) == C::pow_y(1));
  CHECK(classify_cusp_ideal(id("x, y")) == C::two_gen(0, 1));
  CHECK(classify_cusp_ideal(id("x*y^2 + y^3, x*y^2 + 2*y^3")) == C::two_gen(2, 1));
  CHECK_THROWS_AS(classify_cusp_ideal(id("1 + x")), Error);

  auto r = ring();
  for (int m = 0; m <= 3; ++m)
    for (auto& c : colength_table(m, Rational(-3, 2))) {
      CAPTURE(c.to_string());
      auto got = classify_cusp_ideal(c.ideal(r));
      CHECK(got == (c == C::x_pow_y(0) ? C::x() : c));
      CHECK(classify_cusp_ideal(got.ideal(r)) == got);
    }
}

TEST_CASE("random ideals classify faithfully") {
  auto r = ring();
  std::mt19937_64 rng(9);
  for (int t = 0; t < 60; ++t) {
    auto I = random_generator_ideal(r, rng, 3);
    CAPTURE(I.to_string());
    C c;
    REQUIRE_NOTHROW(c = classify_cusp_ideal(I));
    CHECK(ideal_equal(I, c.ideal(r)));
  }
}

TEST_CASE("colength formula") {
  CHECK(colength_formula(C::binom(2, 1, 7)) == 6);
  CHECK(colength_formula(C::x_pow_y(1)) == 5);
  CHECK(colength_formula(C::pow_y(1)) == 2);
  CHECK(colength_formula(C::x()) == 3);
  auto r = ring();
  CHECK(colength(C::x().ideal(r)) == 3);
  for (int m = 0; m <= 6; ++m)
    for (auto& c : colength_table(m, 5)) {
      CAPTURE(c.to_string());
      CHECK(colength(c.ideal(r)) == static_cast<size_t>(colength_formula(c)));
    }
}

TEST_CASE("pair chains") {
  for (int m = 0; m <= 6; ++m) {
    CHECK(pair_chain_length(m, m + 1) == 2 * m);
    CHECK(pair_chain_length(m, m + 2) == 2 * m + 1);
  }
  CHECK(pair_chain_length(0, 1) == 0);
  CHECK_THROWS_AS(pair_chain_length(2, 2), Error);
  CHECK(pair_successor(3, 4, 2, 4));
  CHECK(!pair_successor(3, 4, 2, 3));
  // every maximal walk from (m, m+1) ends at (0, 1) after 2m steps
  for (int m = 0; m <= 5; ++m) {
    std::function<void(int, int, int)> walk = [&](int a, int b, int steps) {
      auto next = pair_successors(a, b);
      if (next.empty()) {
        CHECK(a == 0);
        CHECK(b == 1);
        CHECK(steps == 2 * m);
        return;
      }
      for (auto [c, d] : next) {
        CHECK(pair_successor(a, b, c, d));
        walk(c, d, steps + 1);
      }
    };
    walk(m, m + 1, 0);
  }
}

TEST_CASE("flat limits") {
  for (int m = 0; m <= 3; ++m)
    for (int k : {1, 2})
      for (auto dir : {LimitDirection::ToZero, LimitDirection::ToInfinity}) {
        auto want = expected_limit(m, k, dir);
        auto cert = flat_limit_certify(m, k, dir, want);
        CAPTURE(m);
        CAPTURE(k);
        CAPTURE(want.to_string());
        for (auto& n : cert.notes) MESSAGE(n);
        CHECK(cert.certified());
      }
  CHECK(expected_limit(2, 1, LimitDirection::ToZero) == C::two_gen(2, 2));
  CHECK(expected_limit(2, 1, LimitDirection::ToInfinity) == C::pow_y(3));
  CHECK(expected_limit(2, 2, LimitDirection::ToInfinity) == C::two_gen(3, 1));
  // wrong claims fail
  CHECK(!flat_limit_certify(2, 1, LimitDirection::ToZero, C::pow_y(3)).certified());
  CHECK(!flat_limit_certify(1, 2, LimitDirection::ToInfinity, C::x_pow_y(1)).certified());
  CHECK(!flat_limit_certify(1, 1, LimitDirection::ToZero, C::two_gen(1, 1)).certified());
  CHECK_THROWS_AS(flat_limit_certify(1, 1, LimitDirection::ToZero, C::binom(1, 1, 1)), Error);
}

TEST_CASE("distinct parameters give distinct ideals") {
  CHECK(distinctness(1, 1, 2, 3));
  CHECK(!distinctness(1, 1, 2, 2));
  CHECK(distinctness(0, 2, 1, -1));
  CHECK_THROWS_AS(distinctness(0, 1, 0, 1), Error);
}
