#include "doctest.h"
#include "hilbloc/errors.hpp"
#include "hilbloc/flag_models.hpp"

using namespace hilbloc;

namespace {

Poly V(const PolyRingPtr& r, const std::string& n) { return Poly::variable(r, n); }

bool in_ideal(const RelationSet& rs, const Poly& p) {
  return buchberger(rs.ring, rs.equations).contains(p);
}

// One chain per block shape that the closed forms cover, plus longer words.
std::vector<FlagPattern> sample_patterns() {
  std::vector<FlagPattern> out;
  for (auto t : {"2;1,1", "4;2,2", "4;2,1", "5;3,2", "4;2,2,1", "5;3,3,2", "5;2,2,2,2",
                 "5;2,2,2,1", "5;2,2,1,1", "5;2,1,1,1", "3;2,2,1", "3;2,1,1", "4;2,2,2",
                 "4;2,2,1,1", "5;3,2,1", "6;3,3,2,2"})
    out.push_back(FlagPattern::parse(t));
  return out;
}

}  // namespace

TEST_CASE("pattern words and mirror") {
  auto p = FlagPattern::parse("4;2,2,1,1");
  CHECK(p.to_string() == "(4; 2,2,1,1)");
  CHECK(p.word() == "A2A2");
  CHECK(FlagPattern::parse("3;2,2,1").word() == "A2B1");
  CHECK(FlagPattern::parse("3;2,1,1").word() == "B1A2");
  CHECK(FlagPattern::parse("5;3,2,1").word() == "B3");
  CHECK(p.mirror() == FlagPattern::parse("4;3,2,2,1"));
  CHECK(p.mirror().mirror() == p);
  CHECK_THROWS_AS(FlagPattern::parse("4;2,3"), Error);
  CHECK_THROWS_AS(FlagPattern::parse("4;3,3,3"), Error);
  CHECK_THROWS_AS(FlagPattern::parse("4;2,0"), Error);
  CHECK_THROWS_AS(FlagPattern::parse("nonsense"), Error);
}

TEST_CASE("nesting relations") {
  auto same = derive_nesting_relations({4, 2, true, 0}, {3, 2, true, 1});
  const auto& R = same.ring;
  CHECK(in_ideal(same, V(R, "b^0_1") - (V(R, "a^0_2") - V(R, "a^1_1")) * V(R, "b^1_1")));

  auto drop = derive_nesting_relations({4, 2, true, 0}, {3, 1, true, 1});
  const auto& D = drop.ring;
  CHECK(in_ideal(drop, V(D, "c^0_2") - (V(D, "d^0_1") - V(D, "c^1_0")) * V(D, "c^1_2")));

  // untagged shapes land on levels 0 and 1
  auto untagged = derive_nesting_relations({4, 2, true}, {3, 2, true});
  CHECK(untagged.ring->index("b^0_1"));
  CHECK(untagged.ring->index("b^1_1"));

  // the monomial pair itself is nested
  for (auto* rs : {&same, &drop}) {
    std::vector<Poly> zero(rs->ring->nvars(), Poly(rs->ring));
    for (auto& e : rs->equations) CHECK(e.evaluate(rs->ring, zero).is_zero());
  }
  CHECK_THROWS_AS(derive_nesting_relations({4, 2, true, 0}, {3, 3, true, 1}), Error);
}

TEST_CASE("two-level consequences") {
  auto same = derived_consequences(derive_nesting_relations({4, 2, true, 0}, {3, 2, true, 1}));
  const auto& R = same.ring;
  CHECK(in_ideal(same, (V(R, "a^0_2") - V(R, "a^1_1")) * V(R, "b^1_1") * V(R, "c^0_2") - V(R, "s")));

  auto drop = derived_consequences(derive_nesting_relations({4, 3, true, 0}, {3, 2, true, 1}));
  const auto& D = drop.ring;
  CHECK(in_ideal(drop, (V(D, "d^0_2") - V(D, "d^1_1")) * V(D, "c^1_1") * V(D, "b^0_2") - V(D, "s")));

  RelationSet empty;
  empty.ring = make_ring({"s"});
  CHECK(derived_consequences(empty).equations.empty());
}

TEST_CASE("equation counts of derived models") {
  struct Want {
    const char* pattern;
    size_t params, equations;
  };
  for (auto w : {Want{"4;2,2", 5, 0}, Want{"4;2,1", 5, 0}, Want{"6;3,3", 7, 0},
                 Want{"5;2,2,1", 7, 1}, Want{"6;3,3,3,3", 7, 0}, Want{"6;3,3,3,2", 8, 1},
                 Want{"6;3,3,2,2", 9, 2}, Want{"6;3,2,2,2", 8, 1}, Want{"4;2,2,2", 5, 0},
                 Want{"4;2,2,1,1", 7, 2}, Want{"3;2,2,1", 5, 1}, Want{"3;2,1,1", 5, 1}}) {
    auto p = FlagPattern::parse(w.pattern);
    auto lm = local_model(p);
    CAPTURE(w.pattern);
    CHECK(lm.params.size() == w.params);
    CHECK(lm.equations.size() == w.equations);
    CHECK(expected_model(p).equations.size() == w.equations);
  }
}

TEST_CASE("A-words: 2h-2 equations in m+1+2(h-1) parameters") {
  auto p = FlagPattern::parse("6;3,3,2,2,1,1");
  auto lm = local_model(p);
  CHECK(lm.params.size() == 11);
  CHECK(lm.equations.size() == 4);
  CHECK(models_equivalent(lm, expected_model(p)));
  CHECK(check_lci(lm));
}

TEST_CASE("derived and closed-form models agree") {
  for (auto& p : sample_patterns()) {
    CAPTURE(p.to_string());
    REQUIRE(has_expected_model(p));
    auto d = local_model(p);
    auto e = expected_model(p);
    CHECK(models_equivalent(d, e));
    CHECK(check_lci(d));
    // absolute models carry s as one more equation
    auto a = local_model(p, false);
    CHECK(a.equations.size() == d.equations.size() + 1);
    CHECK(check_lci(a));
  }
}

TEST_CASE("a wrong sign breaks equivalence") {
  auto p = FlagPattern::parse("6;3,3,2,2");
  auto e = expected_model(p);
  auto bad = e;
  REQUIRE(!bad.equations.empty());
  auto terms = bad.equations[0].terms();
  terms.back().coef = -terms.back().coef;
  bad.equations[0] = Poly(bad.ring, terms);
  CHECK(!models_equivalent(local_model(p), bad));

  auto renamed = e;
  renamed.params.back() += "x";
  CHECK_THROWS_AS(models_equivalent(e, renamed), Error);
}

TEST_CASE("mirror images") {
  for (auto t : {"5;2,2,1", "6;3,3,2,2", "3;2,2,1", "4;2,2,2"}) {
    auto p = FlagPattern::parse(t);
    CAPTURE(t);
    CHECK(models_equivalent(mirror_model(local_model(p)), local_model(p.mirror())));
    CHECK(mirror_model(mirror_model(local_model(p))).params == local_model(p).params);
  }
}

TEST_CASE("uncatalogued words") {
  auto p = FlagPattern::parse("7;3,3,2,1,1");  // A2 B1 A2
  CHECK(!has_expected_model(p));
  CHECK_THROWS_AS(expected_model(p), Error);
  CHECK(local_model(p).equations.size() >= 1);
}

TEST_CASE("lci check") {
  LocalModel m;
  m.params = {"x", "y", "z"};
  m.ring = make_ring(m.params);
  auto x = V(m.ring, "x"), y = V(m.ring, "y"), z = V(m.ring, "z");
  m.equations = {x * y, x * z};
  CHECK(!check_lci(m));
  m.equations = {x * y, z};
  CHECK(check_lci(m));
  m.equations = {};
  CHECK(check_lci(m));
  GroebnerOptions tight;
  tight.max_vars = 2;
  CHECK_THROWS_AS(check_lci(m, tight), ResourceCap);
}

TEST_CASE("strata") {
  CHECK(enumerate_strata(3, 3).size() == 3);
  CHECK(enumerate_strata(2, 2).size() == 1);
  CHECK(enumerate_strata(4, 2).size() == 5);
  for (int m = 1; m <= 6; ++m) {
    CAPTURE(m);
    CHECK(enumerate_strata(m, m) == strata_by_containment(m, m));
  }
  for (auto& p : enumerate_strata(5, 5)) CHECK_NOTHROW(p.validate());
  CHECK_THROWS_AS(enumerate_strata(3, 4), Error);
}

TEST_CASE("model points") {
  auto S = CoeffAlgebra::artin({"u", "v"}, 3);
  for (auto t : {"4;2,2", "4;2,1", "5;2,2,1", "3;2,1,1"}) {
    auto p = FlagPattern::parse(t);
    auto d = local_model(p);
    auto r = validate_model_points(p, expected_model(p), S, 50, 11, &d);
    CAPTURE(t);
    for (auto& c : r.counterexamples) MESSAGE(c);
    CHECK(r.ok());
    CHECK(r.forward_pass == 50);
    CHECK(r.backward_pass == r.backward);
    CHECK(r.backward >= 40);
    CHECK(r.perturbed_rejected == r.perturbed);
    CHECK(r.perturbed == 50);
  }
  // same seed, same report
  auto p = FlagPattern::parse("4;2,2");
  auto a = validate_model_points(p, expected_model(p), S, 5, 3);
  auto b = validate_model_points(p, expected_model(p), S, 5, 3);
  CHECK(a.forward == b.forward);
  CHECK(a.backward == b.backward);
  CHECK(a.perturbed_rejected == b.perturbed_rejected);
  CHECK_THROWS_AS(validate_model_points(p, local_model(p, false), S, 1, 1), Error);
}
