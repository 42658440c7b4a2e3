#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hilbloc/quotient.hpp"

namespace hilbloc {

// Ideals of the cusp ring Q[[x,y]]/(x^2 - y^3):
//   PowY    (y^n), n >= 1
//   X       (x) = (x, y^3)
//   XPowY   (x y^m), m >= 0 (m = 0 is the same ideal as X)
//   TwoGen  (x y^m, y^{m+k}), k in {1, 2}
//   Binom   (x y^m + a y^{m+k}), k in {1, 2}, a != 0
// The same shapes name single elements (TwoGen excepted) in AssocForm.
struct CuspCanonicalIdeal {
  enum class Kind { PowY, X, XPowY, TwoGen, Binom };
  Kind kind = Kind::X;
  int m = 0;  // n for PowY
  int k = 1;
  Rational a = 0;

  static CuspCanonicalIdeal pow_y(int n);
  static CuspCanonicalIdeal x();
  static CuspCanonicalIdeal x_pow_y(int m);
  static CuspCanonicalIdeal two_gen(int m, int k);
  static CuspCanonicalIdeal binom(int m, int k, const Rational& a);

  void validate() const;
  std::vector<RingElement> generators(const CurveRingPtr& ring) const;
  IdealGens ideal(const CurveRingPtr& ring) const;
  int max_degree() const;
  std::string to_string() const;  // "(x*y^2 + 3*y^4)"
  bool operator==(const CuspCanonicalIdeal& o) const;
};

// Cusp ring over Q with room for the generators of ideals of colength up to
// about `colength`.
CurveRingPtr cusp_ring(int colength);

struct AssocForm {
  CuspCanonicalIdeal canonical;  // PowY, X, XPowY or Binom
  RingElement unit_witness;      // unit_witness * canonical = input below degree trunc
  int trunc = 0;
  std::string to_string() const;
};

// Unit multiple of one of y^n, x, x y^m, x y^m + d y^{m+k} (k = 1, 2). The
// unit is found by comparing coefficients of x y^j and y^j degree by degree.
// Throws Error for zero or unit input, or when trunc is below 2*order + 6;
// trunc = 0 picks 2*(m + n) + 8 from the orders of the x- and y-parts.
AssocForm associate_normal_form(const RingElement& e, int trunc = 0);

// Canonical generator of the principal ideal (e), checked against (e) with
// the quotient oracle.
CuspCanonicalIdeal principal_ideal_normalize(const RingElement& e);

// Matches I against the canonical ideals of its colength. Throws
// TheoremViolation when nothing matches, Error for the unit ideal.
CuspCanonicalIdeal classify_cusp_ideal(const IdealGens& I);

int colength_formula(const CuspCanonicalIdeal& c);

// The six ideals of colength 2m+2 and 2m+3 (Binom members use a).
std::vector<CuspCanonicalIdeal> colength_table(int m, const Rational& a);

// Pairs (m, n), 0 <= m < n, stand for (x y^m, y^n); a step lowers m + n by
// one without raising either entry.
int pair_chain_length(int m, int n);
bool pair_successor(int m1, int n1, int m2, int n2);
std::vector<std::pair<int, int>> pair_successors(int m, int n);

enum class LimitDirection { ToZero, ToInfinity };

struct LimitCertificate {
  int m = 0, k = 1;
  LimitDirection direction = LimitDirection::ToZero;
  CuspCanonicalIdeal claimed;
  bool colength_match = false;   // same colength as every sampled member
  bool generators_in = false;    // claimed generators are limits of family elements
  bool unique = false;           // only candidate of its colength holding the limit generator
  std::vector<std::string> notes;
  bool certified() const { return colength_match && generators_in && unique; }
};

// Limit of (x y^m + a y^{m+k}) as a -> 0 or a -> infinity (chart b = 1/a:
// (b x y^m + y^{m+k})). `claimed` must be (x y^m, y^{m+2}), (x y^m) or (x),
// (y^{m+1}) or (x y^{m+1}, y^{m+2}).
LimitCertificate flat_limit_certify(int m, int k, LimitDirection dir,
                                    const CuspCanonicalIdeal& claimed, uint64_t seed = 1);
// The limit the classification predicts.
CuspCanonicalIdeal expected_limit(int m, int k, LimitDirection dir);

// True iff the Binom ideals for a and b differ.
bool distinctness(int m, int k, const Rational& a, const Rational& b);

// One or two generators of the shapes x y^m + a y^{m+1}, x y^m + a y^{m+2},
// y^n, x + a y^2, x y^m with m <= max_m and small nonzero rationals a.
IdealGens random_generator_ideal(const CurveRingPtr& ring, std::mt19937_64& rng, int max_m = 4);

}  // namespace hilbloc
