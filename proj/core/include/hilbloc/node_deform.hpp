#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hilbloc/groebner.hpp"
#include "hilbloc/quotient.hpp"

namespace hilbloc {

// Deformation of Q_i^m = (x^{m-i+1}, y^i):
//   f = x^{m-i+1} + sum_{j<=m-i} a_j x^j + sum_{1<=j<i} b_j y^j
//   g = y^i       + sum_{j<=m-i} c_j x^j + sum_{1<=j<i} d_j y^j
// The level tags the coefficient names (a^k_j) for use in flags.
struct DeformShape {
  int m = 1;
  int i = 1;
  bool relative = false;
  std::optional<int> level;

  void validate() const;
  int xtop() const { return m - i + 1; }  // x-power of the leading term of f
};

std::string coeff_name(const DeformShape& sh, char letter, int j);
// a_0..a_{m-i}, b_1..b_{i-1}, c_0..c_{m-i}, d_1..d_{i-1}
std::vector<std::string> coeff_names(const DeformShape& sh);

// Coefficient of a monomial of f (letters a, b) or g (letters c, d), with the
// leading coefficients included: a_{m-i+1} = 1, d_i = 1, and b_0 = a_0,
// d_0 = c_0 (both are the constant term). Out of range gives 0.
Poly shape_coeff(const DeformShape& sh, const PolyRingPtr& ring, char letter, int j);

// Free coefficient algebra on the shape's names, plus s when relative.
CoeffAlgebraPtr shape_algebra(const DeformShape& sh);

// Standard monomials 1, x..x^{m-i}, y..y^{i-1}.
std::vector<CurveMono> standard_monomials(const DeformShape& sh);

struct GenericIdeal {
  CurveRingPtr ring;  // node (absolute) or xy = s (relative) over free coefficients
  RingElement f, g;
  IdealGens ideal() const { return IdealGens(ring, {f, g}); }
};

// Generic f, g over the free algebra `coeffs`, which must contain the
// shape's names (and s when relative).
GenericIdeal generic_ideal(const DeformShape& sh, const CoeffAlgebraPtr& coeffs);
GenericIdeal generic_ideal(const DeformShape& sh);

struct RelationSet {
  PolyRingPtr ring;
  std::vector<Poly> equations;

  // Monic, deduplicated, sorted.
  void canonicalize();
  std::string to_string() const;
};

// Coefficients of e on the standard monomials of `inner` after reducing
// modulo its generic ideal (leading terms x^{m-i+1}, y^i as pivots).
std::vector<Poly> standard_coefficients(const RingElement& e, const DeformShape& inner,
                                        const GenericIdeal& inner_ideal);

// Coefficient equations of y f - b_{i-1} g and x g - c_{m-i} f.
RelationSet derive_flat_relations(const DeformShape& sh);
// The closed-form families: b_j = b_{i-1} d_{j+1}, b_{i-1} d_1 = a_0,
// b_{i-1} c_j = s a_{j+1}, c_j = c_{m-i} a_{j+1}, c_{m-i} a_0 = s d_1,
// c_{m-i} b_j = s d_{j+1} (s = 0 when absolute). Lines with no variables
// in range are dropped.
RelationSet closed_form_flat_relations(const DeformShape& sh);
// Relative case: the lines b_{i-1} c_j = s a_{j+1}, c_{m-i} a_0 = s d_1,
// c_{m-i} b_j = s d_{j+1} with j below the top index.
std::vector<Poly> closed_form_consequence_lines(const DeformShape& sh, const PolyRingPtr& ring);

// Values drawn for sampled coefficients: 0, +-p, p+q and degree 2 monomials.
std::vector<Poly> sample_values(const CoeffAlgebra& S);

struct FlatReport {
  DeformShape shape;
  uint64_t seed = 0;
  int samples = 0;
  int flat = 0;               // flat samples; the relations were checked on each
  int relations_hold = 0;     // samples satisfying the relations; flatness checked
  int rejected = 0;           // neither flat nor satisfying the relations
  int sampling_failures = 0;
  std::vector<std::string> counterexamples;
};

// Sample assignments into the maximal ideal of S (parametrized points of the
// relation variety and perturbations of them) and compare flatness against
// vanishing of the derived relations.
FlatReport verify_flat_iff(const DeformShape& sh, const CoeffAlgebraPtr& S, int trials,
                           uint64_t seed);

// Flatness and relation values of one assignment (name -> element of S).
struct PointCheck {
  bool flat = false;
  bool relations = false;
};
PointCheck check_point(const DeformShape& sh, const CoeffAlgebraPtr& S,
                       const std::map<std::string, Poly>& assignment);

struct NodeClass {
  enum class Kind { TypeC, TypeQ, NotPunctual };
  Kind kind = Kind::NotPunctual;
  int i = 0;
  int m = 0;
  Rational a;
  std::string to_string() const;
};

// Q_i^m and (y^i + a x^{m-i}) in a node ring over Q.
IdealGens node_q_ideal(const CurveRingPtr& ring, int m, int i);
IdealGens node_c_ideal(const CurveRingPtr& ring, int m, int i, const Rational& a);

NodeClass classify_node_ideal(const IdealGens& I);

struct ChainComponent {
  int i = 0;            // C_i^m: closure of (y^i + a x^{m-i}), a != 0
  int zero_limit = 0;   // a -> 0 gives Q_i^m
  int infinity_limit = 0;  // a -> infinity gives Q_{i+1}^m
};

struct PunctualChain {
  int m = 0;
  std::vector<ChainComponent> components;
  std::vector<int> gluing;  // indices i of the gluing points Q_i^m
};

PunctualChain punctual_chain(int m);

}  // namespace hilbloc
