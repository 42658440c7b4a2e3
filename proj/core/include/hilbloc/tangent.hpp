#pragma once

#include <string>
#include <vector>

#include "hilbloc/cusp.hpp"

namespace hilbloc {

// Hom_R(I, R/I) for an ideal of the cusp ring, a map being the tuple of
// images (h_1..h_n) of the generators of I in R/I.
struct HomSpace {
  IdealGens ideal;
  size_t dimension = 0;
  std::vector<std::vector<RingElement>> basis;      // h_j as reduced elements
  std::vector<std::vector<RingElement>> syzygies;   // relations among the generators used
  std::string path;                                 // "matrix-factorization" or "syzygy"
  int trunc = 0;                                    // truncation the system was solved at

  // True iff the tuple kills every syzygy in R/I.
  bool in_kernel(const std::vector<RingElement>& h) const;
};

enum class HomPath { Auto, MatrixFactorization, Syzygy };

// Auto uses the 2x2 matrix factorizations when the generators are exactly
// (x y^m, y^{m+2}) or (x y^{m+1}, y^{m+2}), otherwise syzygies computed in
// Q[x, y] with x^2 - y^3 as an extra generator. MatrixFactorization on other
// generators throws Error.
HomSpace hom_dim(const IdealGens& I, HomPath path = HomPath::Auto);

// Syzygy columns of the two matrix-factorization families in terms of the
// generators (x y^m, y^{m+2}) (shifted = false) or (x y^{m+1}, y^{m+2}).
std::vector<std::vector<RingElement>> factorization_syzygies(const CurveRingPtr& ring, int m,
                                                             bool shifted);

// Checks that both 2x2 matrices have a partner with product (x^2 - y^3) Id in
// Q[x, y]; throws TheoremViolation otherwise.
void check_matrix_factorizations();

// The explicit kernel basis for (x y^m, y^{m+2}), expressed as images of
// x y^m and y^{m+2} (2m + 3 tuples).
std::vector<std::vector<RingElement>> explicit_kernel_basis(const CurveRingPtr& ring, int m);

// For I = (g): colength(I), since the cusp ring is a domain. Cross-checked
// against the syzygy path (TheoremViolation on mismatch). Error for g = 0.
size_t principal_hom_dim(const RingElement& g);

struct FamilyTangent {
  IdealGens ideal;
  RingElement image;  // d/da of the generator, reduced modulo the ideal
  bool nonzero = false;
};

// Tangent vector of a one-parameter family of principal ideals (g(a)) at a
// point: the map g -> dg/da in R/(g).
FamilyTangent principal_family_tangent(const RingElement& g, const RingElement& dg);
// (x y^m + a y^{m+k}) at a, or in the chart b = 1/a, (b x y^m + y^{m+k}) at b.
FamilyTangent family_tangent(int m, int k, const Rational& at, bool infinity_chart = false);

struct ScanPoint {
  std::string point;   // "a=3/2", "a=0" or "a=inf"
  std::string ideal;
  size_t dimension = 0;
};

// Tangent dimensions along the punctual family of colength 2 ((x + a y),
// limits (x, y^2) and (y)) or 3 ((x + a y^2), limits (x) and (x y, y^2)).
// Samples ascending, then a=0, then a=inf. Samples must be nonzero.
std::vector<ScanPoint> p1_scan(int colength, const std::vector<Rational>& samples);

}  // namespace hilbloc
