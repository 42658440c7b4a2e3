#include "hilbloc/quotient.hpp"

#include <algorithm>
#include <map>

#include "hilbloc/errors.hpp"

namespace hilbloc {

IdealGens::IdealGens(CurveRingPtr r, std::vector<RingElement> g)
    : ring(std::move(r)), gens(std::move(g)) {
  for (auto& e : gens)
    if (e.ring() != ring && !e.ring()->same_as(*ring))
      throw Error("generator does not live in the ideal's ring");
}

int IdealGens::max_degree() const {
  int d = 0;
  for (auto& g : gens) d = std::max(d, g.max_degree());
  return d;
}

int IdealGens::max_y_degree() const {
  int d = 0;
  for (auto& g : gens)
    for (auto& [m, c] : g.terms()) d = std::max(d, m.y);
  return d;
}

std::string IdealGens::to_string() const {
  std::string s = "(";
  for (size_t i = 0; i < gens.size(); ++i) s += (i ? ", " : "") + gens[i].to_string();
  return s + ")";
}

namespace {

size_t coeff_dim(const CoeffAlgebra& a) {
  if (a.kind() == CoeffAlgebra::Kind::FreePoly)
    throw Error("the quotient oracle needs Q or a truncated Artin coefficient algebra");
  return a.dim();
}

}  // namespace

QuotientSpace::QuotientSpace(const IdealGens& ideal, int trunc)
    : ring_(ideal.ring->with_trunc(trunc)),
      monos_(ring_->monomials()),
      sdim_(coeff_dim(*ring_->coeff())),
      echelon_(static_cast<int>(monos_.size() * sdim_)) {
  for (size_t i = 0; i < monos_.size(); ++i) mono_index_[{monos_[i].x, monos_[i].y}] = i;
  const CoeffAlgebra& S = *ring_->coeff();
  std::vector<Poly> sbasis;
  for (auto& e : S.basis()) sbasis.push_back(Poly::monomial(S.params(), e));

  // Multipliers: canonical monomials below the truncation; the relative node
  // also needs higher powers since xy -> s lowers degree.
  int reach = trunc;
  if (ring_->kind() == CurveKind::NodeRelative) reach += ideal.max_degree() + 1;
  std::vector<CurveMono> mult;
  for (int d = 0; d < reach; ++d)
    for (int a = 0; a <= d; ++a) {
      CurveMono m{a, d - a};
      bool ok = ring_->kind() == CurveKind::Cusp ? m.x <= 1 : (m.x == 0 || m.y == 0);
      if (ok) mult.push_back(m);
    }

  std::vector<RingElement> gens;
  for (auto& g : ideal.gens) gens.push_back(g.rehost(ring_));

  // Products of basis monomials of S are basis monomials or zero.
  std::vector<std::vector<int>> table(sdim_, std::vector<int>(sdim_, -1));
  for (size_t i = 0; i < sdim_; ++i)
    for (size_t j = 0; j < sdim_; ++j) {
      Poly pr = S.mul(sbasis[i], sbasis[j]);
      if (!pr.is_zero()) table[i][j] = static_cast<int>(S.basis_index(pr.terms()[0].exp));
    }

  struct Entry {
    size_t mono;
    size_t sidx;
    Rational coef;
  };
  std::vector<Entry> shifted;
  std::map<int, Rational> acc;
  for (auto& g : gens) {
    for (auto& mu : mult) {
      // g * mu with coefficients flattened once, then spread over the S-basis
      shifted.clear();
      for (auto& [m, c] : g.terms()) {
        auto [mm, cc] = ring_->canonical(m.x + mu.x, m.y + mu.y, c);
        if (cc.is_zero()) continue;
        size_t mi = mono_index_.at({mm.x, mm.y});
        for (auto& t : cc.terms()) shifted.push_back({mi, S.basis_index(t.exp), t.coef});
      }
      if (shifted.empty()) continue;
      for (size_t si = 0; si < sdim_; ++si) {
        acc.clear();
        for (auto& e : shifted) {
          int k = table[e.sidx][si];
          if (k >= 0) acc[column(e.mono, static_cast<size_t>(k))] += e.coef;
        }
        SparseRow row;
        Integer l = 1;
        for (auto& [col, v] : acc)
          if (sgn(v) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
        for (auto& [col, v] : acc)
          if (sgn(v) != 0) row.emplace_back(col, v.get_num() * (l / v.get_den()));
        if (!row.empty()) echelon_.insert(std::move(row));
      }
    }
  }
  free_ = echelon_.free_columns();
}

int QuotientSpace::column(size_t mono_index, size_t s_index) const {
  return static_cast<int>((monos_.size() - 1 - mono_index) * sdim_ + (sdim_ - 1 - s_index));
}

std::vector<BasisEntry> QuotientSpace::basis() const {
  std::vector<BasisEntry> out;
  const CoeffAlgebra& S = *ring_->coeff();
  for (int col : free_) {
    size_t mi = monos_.size() - 1 - col / sdim_;
    size_t si = sdim_ - 1 - col % sdim_;
    out.push_back({monos_[mi], S.basis()[si]});
  }
  // ascending: smallest monomials first
  std::reverse(out.begin(), out.end());
  return out;
}

std::vector<Rational> QuotientSpace::flatten(const RingElement& e) const {
  RingElement r = e.rehost(ring_);
  std::vector<Rational> v(monos_.size() * sdim_);
  const CoeffAlgebra& S = *ring_->coeff();
  for (auto& [m, c] : r.terms()) {
    size_t mi = mono_index_.at({m.x, m.y});
    for (auto& t : c.terms()) v[column(mi, S.basis_index(t.exp))] = t.coef;
  }
  return v;
}

std::vector<Rational> QuotientSpace::coordinates(const RingElement& e) const {
  auto v = echelon_.reduce(flatten(e));
  std::vector<Rational> out;
  out.reserve(free_.size());
  for (auto it = free_.rbegin(); it != free_.rend(); ++it) out.push_back(v[*it]);
  return out;
}

bool QuotientSpace::contains(const RingElement& e) const {
  auto v = echelon_.reduce(flatten(e));
  for (auto& q : v)
    if (sgn(q) != 0) return false;
  return true;
}

RingElement QuotientSpace::element(const std::vector<Rational>& coords) const {
  auto b = basis();
  RingElement out(ring_);
  const CoeffAlgebra& S = *ring_->coeff();
  for (size_t i = 0; i < b.size() && i < coords.size(); ++i) {
    if (sgn(coords[i]) == 0) continue;
    out += RingElement::monomial(ring_, b[i].mono.x, b[i].mono.y,
                                 Poly::monomial(S.params(), b[i].smono, coords[i]));
  }
  return out;
}

QuotientBasis quotient_basis(const IdealGens& ideal, int trunc) {
  if (trunc < 2) throw Error("truncation must be at least 2");
  QuotientBasis qb;
  qb.trunc = trunc;
  QuotientSpace q0(ideal, trunc);
  qb.monomials = q0.basis();
  QuotientSpace q1(ideal, trunc + 1);
  QuotientSpace q2(ideal, trunc + 2);
  if (q0.dim() == q1.dim() && q1.dim() == q2.dim()) qb.colength = q0.dim();
  return qb;
}

namespace {

int starting_trunc(const IdealGens& ideal, const OracleOptions& opt) {
  if (opt.start > 0) return std::max(opt.start, 2);
  int bound;
  if (ideal.ring->kind() == CurveKind::Cusp) bound = 2 * ideal.max_y_degree() + 4;
  else bound = ideal.max_degree() + opt.hint;
  const CoeffAlgebra& S = *ideal.ring->coeff();
  if (S.kind() == CoeffAlgebra::Kind::TruncatedArtin) bound += S.nil_order();
  return 2 * bound + 4;
}

}  // namespace

Stabilized stabilize(const IdealGens& ideal, const OracleOptions& opt) {
  for (int d = starting_trunc(ideal, opt); d <= opt.cap; d *= 2) {
    size_t a = QuotientSpace(ideal, d).dim();
    size_t b = QuotientSpace(ideal, d + 1).dim();
    if (a != b) continue;
    size_t c = QuotientSpace(ideal, d + 2).dim();
    if (b == c) return {a, d};
  }
  throw ResourceCap("infinite colength: no stabilization up to truncation " +
                    std::to_string(opt.cap));
}

size_t colength(const IdealGens& ideal, const OracleOptions& opt) {
  return stabilize(ideal, opt).colength;
}

bool member(const RingElement& e, const IdealGens& ideal, const OracleOptions& opt) {
  if (e.ring() != ideal.ring && !e.ring()->same_as(*ideal.ring)) throw Error("ring mismatch");
  Stabilized st = stabilize(ideal, opt);
  for (int d = std::max(st.trunc, e.max_degree() + 1); d <= opt.cap; d *= 2) {
    bool a = QuotientSpace(ideal, d).contains(e);
    bool b = QuotientSpace(ideal, d + 1).contains(e);
    if (a != b) continue;
    bool c = QuotientSpace(ideal, d + 2).contains(e);
    if (b == c) return a;
  }
  throw ResourceCap("membership did not stabilize");
}

bool member_all(const std::vector<RingElement>& es, const IdealGens& ideal,
                const OracleOptions& opt) {
  if (es.empty()) return true;
  int deg = 0;
  for (auto& e : es) {
    if (e.ring() != ideal.ring && !e.ring()->same_as(*ideal.ring)) throw Error("ring mismatch");
    deg = std::max(deg, e.max_degree());
  }
  Stabilized st = stabilize(ideal, opt);
  auto in_all = [&](int d) {
    QuotientSpace q(ideal, d);
    std::vector<bool> v;
    for (auto& e : es) v.push_back(q.contains(e));
    return v;
  };
  for (int d = std::max(st.trunc, deg + 1); d <= opt.cap; d *= 2) {
    auto a = in_all(d);
    auto b = in_all(d + 1);
    if (a != b) continue;
    auto c = in_all(d + 2);
    if (b == c) return std::find(a.begin(), a.end(), false) == a.end();
  }
  throw ResourceCap("membership did not stabilize");
}

bool ideal_equal(const IdealGens& a, const IdealGens& b, const OracleOptions& opt) {
  if (!a.ring->same_as(*b.ring)) throw Error("ring mismatch");
  Stabilized sa = stabilize(a, opt);
  Stabilized sb = stabilize(b, opt);
  if (sa.colength != sb.colength) return false;
  int d = std::max(sa.trunc, sb.trunc);
  for (auto& g : b.gens) d = std::max(d, g.max_degree() + 1);
  for (auto& g : a.gens) d = std::max(d, g.max_degree() + 1);
  for (int k = 0; k < 2; ++k) {
    QuotientSpace qa(a, d + k), qb(b, d + k);
    for (auto& g : b.gens)
      if (!qa.contains(g)) return false;
    for (auto& g : a.gens)
      if (!qb.contains(g)) return false;
  }
  return true;
}

bool s_free_rank(const IdealGens& ideal, const std::vector<CurveMono>& claimed,
                 const OracleOptions& opt) {
  const CoeffAlgebra& S = *ideal.ring->coeff();
  if (S.kind() != CoeffAlgebra::Kind::TruncatedArtin)
    throw Error("s_free_rank needs a truncated Artin coefficient algebra");
  Stabilized st = stabilize(ideal, opt);
  size_t want = claimed.size() * S.dim();
  if (st.colength != want) return false;
  for (int k = 0; k < 2; ++k) {
    QuotientSpace q(ideal, st.trunc + k);
    if (q.dim() != want) return false;
    std::vector<std::vector<Rational>> vecs;
    for (auto& b : claimed) {
      for (auto& e : S.basis()) {
        auto el = RingElement::monomial(q.ring(), b.x, b.y, Poly::monomial(S.params(), e));
        vecs.push_back(q.coordinates(el));
      }
    }
    if (rank_of(vecs) != static_cast<int>(want)) return false;
  }
  return true;
}

}  // namespace hilbloc
