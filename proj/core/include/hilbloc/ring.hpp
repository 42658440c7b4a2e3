#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "hilbloc/coeff.hpp"

namespace hilbloc {

enum class CurveKind { NodeAbsolute, NodeRelative, Cusp };

struct CurveMono {
  int x = 0;
  int y = 0;
  int degree() const { return x + y; }
  bool operator==(const CurveMono&) const = default;
};

// Storage order: x-power descending, then y-power descending.
struct StorageOrder {
  bool operator()(const CurveMono& a, const CurveMono& b) const {
    if (a.x != b.x) return a.x > b.x;
    return a.y > b.y;
  }
};

// Graded order used to pick quotient complements: degree first, then the
// x-power. Returns true when a is strictly smaller than b.
bool graded_less(const CurveMono& a, const CurveMono& b);

std::string mono_string(const CurveMono& m);

class CurveRing {
 public:
  static std::shared_ptr<const CurveRing> node(CoeffAlgebraPtr coeff, int trunc);
  // xy = base, where base lies in the maximal ideal of the coefficient algebra.
  static std::shared_ptr<const CurveRing> node_relative(CoeffAlgebraPtr coeff, Poly base,
                                                        int trunc);
  static std::shared_ptr<const CurveRing> cusp(CoeffAlgebraPtr coeff, int trunc);

  CurveKind kind() const { return kind_; }
  const CoeffAlgebraPtr& coeff() const { return coeff_; }
  const Poly& base() const { return base_; }
  int trunc() const { return trunc_; }
  std::string describe() const;

  std::shared_ptr<const CurveRing> with_trunc(int trunc) const;
  std::shared_ptr<const CurveRing> with_coeff(CoeffAlgebraPtr coeff, Poly base) const;

  bool is_canonical(const CurveMono& m) const;
  // All canonical monomials of degree < trunc, ascending in graded_less.
  std::vector<CurveMono> monomials() const;
  bool same_as(const CurveRing& o) const;

  // Canonical form of the monomial x^a y^b times c (possibly zero).
  std::pair<CurveMono, Poly> canonical(int a, int b, const Poly& c) const;

 private:
  CurveKind kind_ = CurveKind::NodeAbsolute;
  CoeffAlgebraPtr coeff_;
  Poly base_;
  int trunc_ = 2;
};

using CurveRingPtr = std::shared_ptr<const CurveRing>;

// Formal bivariate polynomial before reduction: (a, b) -> coefficient.
using RawPoly = std::map<std::pair<int, int>, Poly>;

class RingElement {
 public:
  using TermMap = std::map<CurveMono, Poly, StorageOrder>;

  RingElement() = default;
  explicit RingElement(CurveRingPtr ring) : ring_(std::move(ring)) {}

  static RingElement reduce(CurveRingPtr ring, const RawPoly& raw);
  static RingElement monomial(CurveRingPtr ring, int a, int b, const Poly& c);
  static RingElement monomial(CurveRingPtr ring, int a, int b, const Rational& c = 1);
  static RingElement constant(CurveRingPtr ring, const Poly& c);
  static RingElement x(CurveRingPtr ring) { return monomial(std::move(ring), 1, 0); }
  static RingElement y(CurveRingPtr ring) { return monomial(std::move(ring), 0, 1); }

  const CurveRingPtr& ring() const { return ring_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Poly coeff(const CurveMono& m) const;
  // Smallest degree of a term, -1 for zero.
  int order() const;
  int max_degree() const;
  bool is_unit() const;

  RingElement operator-() const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  friend RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
  friend RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
  friend RingElement operator*(const RingElement& a, const RingElement& b);
  RingElement scaled(const Poly& c) const;
  RingElement scaled(const Rational& c) const;
  RingElement pow(int k) const;

  // Same coefficients, ring with another truncation (terms re-canonicalized).
  RingElement rehost(CurveRingPtr target) const;
  // Evaluate FreePoly coefficients by the assignment into target's algebra.
  RingElement substitute(CurveRingPtr target,
                         const std::map<std::string, Poly>& assignment) const;

  bool operator==(const RingElement& o) const;
  bool operator!=(const RingElement& o) const { return !(*this == o); }
  std::string to_string() const;

 private:
  CurveRingPtr ring_;
  TermMap terms_;
  void add_term(const CurveMono& m, const Poly& c);
  void check_same(const RingElement& o) const;
};

// Images of every parameter of `from` in `to`; variables absent from the
// assignment map to zero but are reported by `missing` when they occur.
std::vector<Poly> assignment_images(const CoeffAlgebra& from, const CoeffAlgebra& to,
                                    const std::map<std::string, Poly>& assignment);

}  // namespace hilbloc
