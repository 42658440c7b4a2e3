#pragma once

#include <vector>

#include "hilbloc/poly.hpp"

namespace hilbloc {

struct GroebnerOptions {
  size_t max_vars = 16;
};

// Reduced Groebner basis: monic, self-reduced, sorted by descending leading
// monomial. The unit ideal is {1}; the zero ideal has no generators.
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(PolyRingPtr ring, std::vector<Poly> gens) : ring_(std::move(ring)), gens_(std::move(gens)) {}

  const PolyRingPtr& ring() const { return ring_; }
  const std::vector<Poly>& gens() const { return gens_; }
  bool is_unit() const { return gens_.size() == 1 && gens_[0].is_constant(); }
  bool is_zero() const { return gens_.empty(); }
  bool contains(const Poly& p) const;
  bool contains_all(const std::vector<Poly>& ps) const;

 private:
  PolyRingPtr ring_;
  std::vector<Poly> gens_;
};

GroebnerBasis buchberger(const PolyRingPtr& ring, const std::vector<Poly>& gens,
                         const GroebnerOptions& opt = {});

// Fully reduced remainder; zero iff p lies in the ideal.
Poly normal_form(const Poly& p, const GroebnerBasis& G);

// Krull dimension: largest set of variables independent modulo the leading
// term ideal. Throws on the unit ideal.
int ideal_dim(const GroebnerBasis& G);

// (I : p) by intersecting with (p) through an auxiliary elimination variable.
GroebnerBasis ideal_quotient(const GroebnerBasis& I, const Poly& p, const GroebnerOptions& opt = {});

bool is_regular_sequence(const PolyRingPtr& ring, const std::vector<Poly>& polys,
                         const GroebnerOptions& opt = {});

// Generators of the module of (q_1..q_n) with sum q_j g_j = 0.
std::vector<std::vector<Poly>> syzygies(const PolyRingPtr& ring, const std::vector<Poly>& gens,
                                        const GroebnerOptions& opt = {});

bool same_ideal(const PolyRingPtr& ring, const std::vector<Poly>& a, const std::vector<Poly>& b,
                const GroebnerOptions& opt = {});

// Same tests after localizing at the origin (all variables zero): p lies in
// the local ideal iff some element of (G : p) has a nonzero constant term.
bool local_contains(const GroebnerBasis& G, const Poly& p, const GroebnerOptions& opt = {});
bool same_local_ideal(const PolyRingPtr& ring, const std::vector<Poly>& a,
                      const std::vector<Poly>& b, const GroebnerOptions& opt = {});

// a = q * b exactly, or nullopt.
std::optional<Poly> divide_exact(const Poly& a, const Poly& b);

}  // namespace hilbloc
