#pragma once

#include <optional>
#include <vector>

#include "hilbloc/linalg.hpp"
#include "hilbloc/ring.hpp"

namespace hilbloc {

struct IdealGens {
  CurveRingPtr ring;
  std::vector<RingElement> gens;

  IdealGens() = default;
  IdealGens(CurveRingPtr r, std::vector<RingElement> g);
  int max_degree() const;
  int max_y_degree() const;
  std::string to_string() const;
};

// One coordinate of the flattened quotient: a curve monomial times a basis
// monomial of the coefficient algebra (empty exponent over Q).
struct BasisEntry {
  CurveMono mono;
  Exponent smono;
  bool operator==(const BasisEntry&) const = default;
};

struct QuotientBasis {
  std::vector<BasisEntry> monomials;
  std::optional<size_t> colength;  // unset: not finite at this truncation
  int trunc = 0;
};

struct OracleOptions {
  int start = 0;   // 0 picks the a priori starting truncation
  int cap = 192;   // largest truncation tried before giving up
  int hint = 0;    // declared colength, if known (node bound)
};

// Row space of an ideal at a fixed truncation, flattened over Q.
class QuotientSpace {
 public:
  QuotientSpace(const IdealGens& ideal, int trunc);

  const CurveRingPtr& ring() const { return ring_; }
  int trunc() const { return ring_->trunc(); }
  size_t dim() const { return free_.size(); }
  std::vector<BasisEntry> basis() const;

  std::vector<Rational> flatten(const RingElement& e) const;
  // Coordinates of e modulo the ideal in the complement basis.
  std::vector<Rational> coordinates(const RingElement& e) const;
  bool contains(const RingElement& e) const;
  // Element of the ring spelled by a coordinate vector (inverse of coordinates).
  RingElement element(const std::vector<Rational>& coords) const;

 private:
  CurveRingPtr ring_;
  std::vector<CurveMono> monos_;
  size_t sdim_;
  Echelon echelon_;
  std::vector<int> free_;
  int column(size_t mono_index, size_t s_index) const;
  std::map<std::pair<int, int>, size_t> mono_index_;
};

QuotientBasis quotient_basis(const IdealGens& ideal, int trunc);

struct Stabilized {
  size_t colength;
  int trunc;
};

// Colength with automatic truncation growth; throws ResourceCap when the
// dimension does not settle below the cap (e.g. the zero ideal).
Stabilized stabilize(const IdealGens& ideal, const OracleOptions& opt = {});
size_t colength(const IdealGens& ideal, const OracleOptions& opt = {});
bool member(const RingElement& e, const IdealGens& ideal, const OracleOptions& opt = {});
// Every element lies in the ideal; one stabilization for the whole list.
bool member_all(const std::vector<RingElement>& es, const IdealGens& ideal,
                const OracleOptions& opt = {});
bool ideal_equal(const IdealGens& a, const IdealGens& b, const OracleOptions& opt = {});
// Decides whether the claimed monomials form a free basis of R_S/I_S over S.
bool s_free_rank(const IdealGens& ideal, const std::vector<CurveMono>& claimed,
                 const OracleOptions& opt = {});

}  // namespace hilbloc
