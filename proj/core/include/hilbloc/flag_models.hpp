#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hilbloc/errors.hpp"
#include "hilbloc/node_deform.hpp"

namespace hilbloc {

struct Block {
  char kind = 'A';  // 'A': constant index, 'B': index drops at every step
  int length = 0;
  bool operator==(const Block&) const = default;
};

// Chain Q_{i_0}^m > Q_{i_1}^{m-1} > ... of monomial ideals in the node ring;
// consecutive indices are equal or drop by one.
struct FlagPattern {
  int m = 1;
  std::vector<int> indices;

  void validate() const;
  int levels() const { return static_cast<int>(indices.size()); }
  int colength(int level) const { return m - level; }
  bool same_step(int level) const { return indices[level] == indices[level + 1]; }
  DeformShape shape(int level, bool relative) const;

  // A-blocks are the maximal constant runs of length >= 2; the remaining
  // levels group into B-blocks.
  std::vector<Block> blocks() const;
  std::string word() const;       // "A2B1"
  std::string to_string() const;  // "(4; 2,2,1,1)"

  // Image under x <-> y: index i at colength n becomes n - i + 1, so equal
  // steps and drops trade places.
  FlagPattern mirror() const;

  // "4;2,2,1,1"
  static FlagPattern parse(const std::string& text);
  bool operator==(const FlagPattern&) const = default;
};

struct EliminationStep {
  std::string var;
  Poly expr;  // in the ring of all coefficients (plus s)
};

struct LocalModel {
  FlagPattern pattern;
  bool relative = true;
  std::vector<std::string> params;
  PolyRingPtr ring;  // polynomial ring on params
  std::vector<Poly> equations;
  int ambient_dim = 0;
  // Derived models: the substitutions in the order they were made, over
  // `full_ring`. Expected models: the defined quantities, over `ring`.
  PolyRingPtr full_ring;
  std::vector<EliminationStep> trace;
  std::vector<EliminationStep> auxiliary;

  std::string to_string() const;
};

class EliminationStall : public Error {
 public:
  using Error::Error;
};

// Pieces of relation sets keep every level's coefficient names apart; shapes
// without a level tag get levels 0 (outer) and 1 (inner).
// Coefficient equations of outer f, g reduced modulo the inner generic ideal.
RelationSet derive_nesting_relations(DeformShape outer, DeformShape inner);

// Rewrites both levels' flatness relations with the nesting relations solved
// for the outer coefficients and adds the results. Levels are read off the
// coefficient names of the ring.
RelationSet derived_consequences(const RelationSet& nesting);

// Coefficients kept as coordinates of the local model, level by level.
std::vector<std::string> retained_params(const FlagPattern& p);

// All flatness and nesting relations over the ring of every coefficient.
RelationSet flag_relations(const FlagPattern& p);

// Eliminates every non-retained coefficient by linear substitution (s last),
// then drops residual equations that are locally redundant. Absolute models
// add the expression of s as an equation.
LocalModel local_model(const FlagPattern& p, bool relative = true);

// Closed-form models for single levels, words of A-blocks, A B, B A, and the
// mirrors of these. Throws Error outside that catalog.
LocalModel expected_model(const FlagPattern& p);
bool has_expected_model(const FlagPattern& p);

// Renames coefficients along x <-> y (a <-> d, b <-> c, a_0 <-> c_0).
LocalModel mirror_model(const LocalModel& model);

// Equality of the ideals in the local ring of the parameter space at 0.
// Throws Error when the parameter names differ.
bool models_equivalent(const LocalModel& a, const LocalModel& b,
                       const GroebnerOptions& opt = {});

// Regular sequence and dimension |params| - |equations|. Throws ResourceCap
// past the variable cap.
bool check_lci(const LocalModel& model, const GroebnerOptions& opt = {});

struct ModelValidation {
  FlagPattern pattern;
  uint64_t seed = 0;
  int trials = 0;
  int forward = 0;              // model points turned into chains
  int forward_pass = 0;         // every level flat, every containment holds
  int backward = 0;             // flat nested chains built level by level
  int backward_pass = 0;        // model equations and substitutions hold
  int perturbed = 0;
  int perturbed_rejected = 0;   // flatness or containment failed
  int sampling_failures = 0;
  std::vector<std::string> counterexamples;
  bool ok() const { return counterexamples.empty(); }
};

// Points of the model over S (relative patterns only). Eliminated
// coordinates are rebuilt from the trace of local_model(p); pass `derived`
// to reuse one already computed.
ModelValidation validate_model_points(const FlagPattern& p, const LocalModel& model,
                                      const CoeffAlgebraPtr& S, int trials, uint64_t seed,
                                      const LocalModel* derived = nullptr);

// Chains with 1 <= i_0 <= m-1 (i_0 = 1 when m = 1), 1 <= i_j <= m-j and steps
// 0 or 1, in lexicographic order.
std::vector<FlagPattern> enumerate_strata(int m, int depth);
// Same chains found by testing containment of the monomial ideals with the
// quotient oracle.
std::vector<FlagPattern> strata_by_containment(int m, int depth);

}  // namespace hilbloc
