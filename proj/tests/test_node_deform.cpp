#include <random>

#include "doctest.h"
#include "hilbloc/errors.hpp"
#include "hilbloc/node_deform.hpp"
#include "hilbloc/parse.hpp"

using namespace hilbloc;

namespace {

bool has_equation(const RelationSet& rs, const Poly& p) {
  Poly q = p.monic();
  for (auto& e : rs.equations)
    if (e == q) return true;
  return false;
}

Poly var(const RelationSet& rs, const std::string& n) { return Poly::variable(rs.ring, n); }

CoeffAlgebraPtr uv() { return CoeffAlgebra::artin({"u", "v"}, 3); }

}  // namespace

TEST_CASE("generic ideal shapes") {
  auto G = generic_ideal({2, 1});
  auto P = G.ring->coeff()->params();
  auto mono = [&](int a, int b, const char* c) {
    return RingElement::monomial(G.ring, a, b, Poly::variable(P, c));
  };
  CHECK(G.f == RingElement::monomial(G.ring, 2, 0) + mono(1, 0, "a_1") + mono(0, 0, "a_0"));
  CHECK(G.g == RingElement::y(G.ring) + mono(1, 0, "c_1") + mono(0, 0, "c_0"));

  G = generic_ideal({3, 2});
  P = G.ring->coeff()->params();
  CHECK(G.f == RingElement::monomial(G.ring, 2, 0) + mono(1, 0, "a_1") + mono(0, 0, "a_0") +
                   mono(0, 1, "b_1"));
  CHECK(G.g == RingElement::monomial(G.ring, 0, 2) + mono(1, 0, "c_1") + mono(0, 0, "c_0") +
                   mono(0, 1, "d_1"));

  G = generic_ideal({1, 1});
  P = G.ring->coeff()->params();
  CHECK(G.f == RingElement::x(G.ring) + mono(0, 0, "a_0"));
  CHECK(G.g == RingElement::y(G.ring) + mono(0, 0, "c_0"));

  DeformShape tagged{4, 2, true, 3};
  CHECK(coeff_name(tagged, 'b', 1) == "b^3_1");
  CHECK_THROWS_AS(generic_ideal({3, 4}), Error);
}

TEST_CASE("derived flat relations contain the closed-form lines") {
  auto abs = derive_flat_relations({4, 2});
  for (int j = 0; j <= 2; ++j)
    CHECK(has_equation(abs, var(abs, "b_1") * var(abs, "c_" + std::to_string(j))));

  auto rel = derive_flat_relations({4, 2, true});
  Poly s = var(rel, "s");
  for (int j = 0; j <= 1; ++j)
    CHECK(has_equation(rel, var(rel, "b_1") * var(rel, "c_" + std::to_string(j)) -
                                s * var(rel, "a_" + std::to_string(j + 1))));
  CHECK(has_equation(rel, var(rel, "b_1") * var(rel, "c_2") - s));

  auto one = derive_flat_relations({1, 1});
  REQUIRE(one.equations.size() == 1);
  CHECK(one.equations[0] == var(one, "a_0") * var(one, "c_0"));
}

TEST_CASE("derived relations generate the same ideal as the closed-form families") {
  for (int m = 1; m <= 6; ++m) {
    for (int i = 1; i <= m; ++i) {
      for (bool relative : {false, true}) {
        DeformShape sh{m, i, relative};
        auto d = derive_flat_relations(sh);
        auto p = closed_form_flat_relations(sh);
        CAPTURE(m);
        CAPTURE(i);
        CAPTURE(relative);
        CHECK(same_ideal(d.ring, d.equations, p.equations));
      }
    }
  }
}

TEST_CASE("relative consequence lines follow from the others and b c = s") {
  for (int m = 2; m <= 6; ++m) {
    for (int i = 1; i <= m; ++i) {
      DeformShape sh{m, i, true};
      auto p = closed_form_flat_relations(sh);
      auto cons = closed_form_consequence_lines(sh, p.ring);
      std::vector<Poly> rest;
      for (auto& e : p.equations) {
        bool is_cons = false;
        for (auto& c : cons) is_cons |= c.monic() == e;
        if (!is_cons) rest.push_back(e);
      }
      auto G = buchberger(p.ring, rest);
      CAPTURE(m);
      CAPTURE(i);
      CHECK(G.contains_all(cons));
    }
  }
}

TEST_CASE("flatness of specific points") {
  DeformShape sh{3, 2, true};
  auto S = uv();
  Poly u = S->param("u"), v = S->param("v");
  auto pc = check_point(sh, S, {{"b_1", u}, {"c_1", v}, {"s", u * v}});
  CHECK(pc.flat);
  CHECK(pc.relations);
  pc = check_point(sh, S, {{"b_1", u}, {"c_1", v}});
  CHECK(!pc.flat);
  CHECK(!pc.relations);
  pc = check_point(sh, S, {});
  CHECK(pc.flat);
  CHECK(pc.relations);
}

TEST_CASE("verify flat iff on small shapes") {
  auto S = uv();
  for (auto sh : {DeformShape{3, 2, true}, DeformShape{3, 1, false}, DeformShape{2, 2, true}}) {
    auto rep = verify_flat_iff(sh, S, 12, 5);
    CHECK(rep.counterexamples.empty());
    CHECK(rep.relations_hold >= 12);
    CHECK(rep.flat >= 12);
    CHECK(rep.samples == 24);
  }
}

TEST_CASE("node classification") {
  auto Q = CoeffAlgebra::rationals();
  auto r = CurveRing::node(Q, 12);
  auto c = classify_node_ideal(instantiate(parse_ideal_expr("y^2 + 5*x^2"), r));
  CHECK(c.kind == NodeClass::Kind::TypeC);
  CHECK(c.i == 2);
  CHECK(c.m == 4);
  CHECK(c.a == 5);
  c = classify_node_ideal(instantiate(parse_ideal_expr("x^3, y^2"), r));
  CHECK(c.kind == NodeClass::Kind::TypeQ);
  CHECK(c.i == 2);
  CHECK(c.m == 4);
  c = classify_node_ideal(instantiate(parse_ideal_expr("x + 1"), r));
  CHECK(c.kind == NodeClass::Kind::NotPunctual);

  std::mt19937 gen(17);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  for (int m = 2; m <= 5; ++m) {
    for (int i = 1; i <= m - 1; ++i) {
      Rational a;
      do a = Rational(num(gen), den(gen));
      while (sgn(a) == 0);
      a.canonicalize();
      auto got = classify_node_ideal(node_c_ideal(r, m, i, a));
      CHECK(got.kind == NodeClass::Kind::TypeC);
      CHECK(got.i == i);
      CHECK(got.m == m);
      CHECK(got.a == a);
    }
  }
  // non-canonical generators of a type c ideal
  auto e = instantiate(parse_ideal_expr("y^2 + 3*x^3, x^4 + y^3"), r);
  c = classify_node_ideal(e);
  CHECK(c.kind == NodeClass::Kind::TypeC);
  CHECK(c.m == 5);
  CHECK(c.a == 3);
}

TEST_CASE("punctual chain") {
  auto c3 = punctual_chain(3);
  CHECK(c3.components.size() == 2);
  CHECK(c3.gluing == std::vector<int>{2});
  auto c2 = punctual_chain(2);
  CHECK(c2.components.size() == 1);
  CHECK(c2.gluing.empty());
  auto c5 = punctual_chain(5);
  CHECK(c5.components.size() == 4);
  CHECK(c5.gluing.size() == 3);
  CHECK_THROWS_AS(punctual_chain(1), Error);
  // consecutive components share their gluing point
  for (size_t k = 0; k + 1 < c5.components.size(); ++k)
    CHECK(c5.components[k].infinity_limit == c5.components[k + 1].zero_limit);
}
