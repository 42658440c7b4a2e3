#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hilbloc {

using Rational = mpq_class;
using Integer = mpz_class;
using Exponent = std::vector<int>;

std::string to_string(const Rational& q);

// Monomial order. Blocks are compared left to right, grevlex inside a block.
// One block is plain grevlex; all blocks of size one is lex.
struct MonomialOrder {
  std::vector<int> blocks;  // empty means a single grevlex block

  static MonomialOrder grevlex() { return {}; }
  static MonomialOrder lex(int nvars) { return {std::vector<int>(nvars, 1)}; }
  static MonomialOrder block(std::vector<int> sizes) { return {std::move(sizes)}; }
  bool operator==(const MonomialOrder&) const = default;
};

class PolyRing {
 public:
  PolyRing(std::vector<std::string> names, MonomialOrder order = MonomialOrder::grevlex());

  size_t nvars() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(size_t i) const { return names_[i]; }
  std::optional<size_t> index(std::string_view name) const;
  const MonomialOrder& order() const { return order_; }

  // Negative, zero or positive like strcmp.
  int compare(const Exponent& a, const Exponent& b) const;
  bool same_as(const PolyRing& other) const {
    return names_ == other.names_ && order_ == other.order_;
  }

 private:
  std::vector<std::string> names_;
  MonomialOrder order_;
  std::vector<std::pair<int, int>> ranges_;
  std::map<std::string, size_t, std::less<>> lookup_;
};

using PolyRingPtr = std::shared_ptr<const PolyRing>;

PolyRingPtr make_ring(std::vector<std::string> names,
                      MonomialOrder order = MonomialOrder::grevlex());

int total_degree(const Exponent& e);
bool divides(const Exponent& a, const Exponent& b);
Exponent lcm(const Exponent& a, const Exponent& b);

struct Term {
  Exponent exp;
  Rational coef;
};

// Sparse polynomial over Q. Terms are kept in strictly descending order
// under the ring's monomial order with no zero coefficients.
class Poly {
 public:
  Poly() = default;
  explicit Poly(PolyRingPtr ring) : ring_(std::move(ring)) {}
  Poly(PolyRingPtr ring, std::vector<Term> terms);  // normalizes

  static Poly constant(PolyRingPtr ring, const Rational& c);
  static Poly variable(PolyRingPtr ring, size_t var);
  static Poly variable(PolyRingPtr ring, std::string_view name);
  static Poly monomial(PolyRingPtr ring, Exponent e, const Rational& c = 1);

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t size() const { return terms_.size(); }
  const Term& lead() const { return terms_.front(); }
  int degree() const;
  Rational constant_term() const;
  Rational coefficient(const Exponent& e) const;
  bool uses(size_t var) const;
  std::vector<size_t> support() const;  // variables that occur

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Rational& c) const;
  Poly times_term(const Exponent& e, const Rational& c) const;
  Poly pow(int k) const;

  // Divide by the leading coefficient.
  Poly monic() const;
  // Leading coefficient 1 for canonical storage of relations.
  Poly primitive() const;
  Poly with_sign_normalized() const;

  Poly substitute(size_t var, const Poly& value) const;
  Poly substitute(const std::map<size_t, Poly>& values) const;
  // Every variable of this ring must be mapped to a polynomial in `target`.
  Poly evaluate(const PolyRingPtr& target, const std::vector<Poly>& images) const;
  // Same variable names, different ring (names missing in target throw).
  Poly rehost(const PolyRingPtr& target) const;

  // Coefficient of var^1 when the polynomial is c*var + rest with c rational
  // and var absent from rest.
  std::optional<Rational> linear_coefficient(size_t var) const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // Structural total order used for canonical sorting of relation lists.
  static bool less(const Poly& a, const Poly& b);

  std::string to_string() const;

 private:
  PolyRingPtr ring_;
  std::vector<Term> terms_;
  void normalize();
};

std::string monomial_string(const PolyRing& ring, const Exponent& e);

}  // namespace hilbloc
