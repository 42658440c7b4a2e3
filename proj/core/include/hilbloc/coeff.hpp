#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hilbloc/poly.hpp"

namespace hilbloc {

// Coefficient algebra of a curve ring: Q itself, a truncated polynomial
// algebra Q[p_1..p_r]/(monomials of degree >= N), or a free polynomial ring.
class CoeffAlgebra {
 public:
  enum class Kind { Rationals, TruncatedArtin, FreePoly };

  static std::shared_ptr<const CoeffAlgebra> rationals();
  static std::shared_ptr<const CoeffAlgebra> artin(std::vector<std::string> params, int nil_order);
  static std::shared_ptr<const CoeffAlgebra> free(std::vector<std::string> vars);

  Kind kind() const { return kind_; }
  const PolyRingPtr& params() const { return params_; }
  int nil_order() const { return nil_; }
  bool is_field() const { return kind_ == Kind::Rationals; }
  std::string describe() const;

  Poly zero() const { return Poly(params_); }
  Poly one() const { return Poly::constant(params_, 1); }
  Poly constant(const Rational& c) const { return Poly::constant(params_, c); }
  Poly param(std::string_view name) const { return Poly::variable(params_, name); }

  // Kill monomials of degree >= N (Artin only).
  Poly reduce(Poly p) const;
  Poly mul(const Poly& a, const Poly& b) const { return reduce(a * b); }
  Poly pow(const Poly& a, int k) const;
  // Maximal ideal membership: zero constant term.
  bool in_maximal_ideal(const Poly& a) const { return sgn(a.constant_term()) == 0; }

  // Fixed enumeration of the monomial Q-basis of an Artin algebra:
  // by total degree, then descending in the parameter grevlex order.
  const std::vector<Exponent>& basis() const { return basis_; }
  size_t dim() const { return basis_.size(); }
  std::vector<Rational> flatten(const Poly& a) const;
  size_t basis_index(const Exponent& e) const;

  bool same_as(const CoeffAlgebra& o) const;

 private:
  Kind kind_ = Kind::Rationals;
  PolyRingPtr params_;
  int nil_ = 0;
  std::vector<Exponent> basis_;
  std::map<Exponent, size_t> basis_lookup_;
};

using CoeffAlgebraPtr = std::shared_ptr<const CoeffAlgebra>;

}  // namespace hilbloc
