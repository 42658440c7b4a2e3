#include "hilbloc/ring.hpp"

#include <algorithm>
#include <stdexcept>

#include "hilbloc/errors.hpp"

namespace hilbloc {

bool graded_less(const CurveMono& a, const CurveMono& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  return a.x < b.x;
}

std::string mono_string(const CurveMono& m) {
  std::string s;
  auto part = [&](const char* v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += '*';
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  part("x", m.x);
  part("y", m.y);
  return s.empty() ? "1" : s;
}

namespace {

std::shared_ptr<CurveRing> blank() { return std::make_shared<CurveRing>(); }

}  // namespace

CurveRingPtr CurveRing::node(CoeffAlgebraPtr coeff, int trunc) {
  if (trunc < 2) throw std::invalid_argument("truncation must be at least 2");
  auto r = blank();
  r->kind_ = CurveKind::NodeAbsolute;
  r->coeff_ = std::move(coeff);
  r->base_ = r->coeff_->zero();
  r->trunc_ = trunc;
  return r;
}

CurveRingPtr CurveRing::node_relative(CoeffAlgebraPtr coeff, Poly base, int trunc) {
  if (trunc < 2) throw std::invalid_argument("truncation must be at least 2");
  if (!coeff->in_maximal_ideal(base))
    throw std::invalid_argument("relative base must lie in the maximal ideal");
  auto r = blank();
  r->kind_ = CurveKind::NodeRelative;
  r->coeff_ = std::move(coeff);
  r->base_ = r->coeff_->reduce(base.rehost(r->coeff_->params()));
  r->trunc_ = trunc;
  return r;
}

CurveRingPtr CurveRing::cusp(CoeffAlgebraPtr coeff, int trunc) {
  if (trunc < 2) throw std::invalid_argument("truncation must be at least 2");
  auto r = blank();
  r->kind_ = CurveKind::Cusp;
  r->coeff_ = std::move(coeff);
  r->base_ = r->coeff_->zero();
  r->trunc_ = trunc;
  return r;
}

std::string CurveRing::describe() const {
  std::string k;
  switch (kind_) {
    case CurveKind::NodeAbsolute: k = "node"; break;
    case CurveKind::NodeRelative: k = "node-rel(xy=" + base_.to_string() + ")"; break;
    case CurveKind::Cusp: k = "cusp"; break;
  }
  return k + " over " + coeff_->describe() + " trunc " + std::to_string(trunc_);
}

CurveRingPtr CurveRing::with_trunc(int trunc) const {
  if (trunc < 2) throw std::invalid_argument("truncation must be at least 2");
  auto r = std::make_shared<CurveRing>(*this);
  r->trunc_ = trunc;
  return r;
}

CurveRingPtr CurveRing::with_coeff(CoeffAlgebraPtr coeff, Poly base) const {
  switch (kind_) {
    case CurveKind::NodeAbsolute: return node(std::move(coeff), trunc_);
    case CurveKind::NodeRelative: return node_relative(std::move(coeff), std::move(base), trunc_);
    case CurveKind::Cusp: return cusp(std::move(coeff), trunc_);
  }
  return nullptr;
}

bool CurveRing::is_canonical(const CurveMono& m) const {
  if (m.x < 0 || m.y < 0 || m.degree() >= trunc_) return false;
  if (kind_ == CurveKind::Cusp) return m.x <= 1;
  return m.x == 0 || m.y == 0;
}

std::vector<CurveMono> CurveRing::monomials() const {
  std::vector<CurveMono> out;
  for (int d = 0; d < trunc_; ++d) {
    for (int a = 0; a <= d; ++a) {
      CurveMono m{a, d - a};
      if (is_canonical(m)) out.push_back(m);
    }
  }
  std::sort(out.begin(), out.end(), graded_less);
  return out;
}

bool CurveRing::same_as(const CurveRing& o) const {
  return kind_ == o.kind_ && trunc_ == o.trunc_ && coeff_->same_as(*o.coeff_) &&
         base_ == o.base_;
}

std::pair<CurveMono, Poly> CurveRing::canonical(int a, int b, const Poly& c) const {
  Poly coef = c;
  switch (kind_) {
    case CurveKind::NodeAbsolute:
      if (a > 0 && b > 0) return {{0, 0}, coeff_->zero()};
      break;
    case CurveKind::NodeRelative: {
      int k = std::min(a, b);
      if (k > 0) {
        if (a + b - 2 * k >= trunc_) return {{a - k, b - k}, coeff_->zero()};
        coef = coeff_->mul(coef, coeff_->pow(base_, k));
        a -= k;
        b -= k;
      }
      break;
    }
    case CurveKind::Cusp:
      b += 3 * (a / 2);
      a %= 2;
      break;
  }
  CurveMono m{a, b};
  if (m.degree() >= trunc_) return {m, coeff_->zero()};
  return {m, coeff_->reduce(std::move(coef))};
}

void RingElement::add_term(const CurveMono& m, const Poly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void RingElement::check_same(const RingElement& o) const {
  if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) throw Error("ring mismatch");
}

RingElement RingElement::reduce(CurveRingPtr ring, const RawPoly& raw) {
  RingElement e(ring);
  for (auto& [ab, c] : raw) {
    if (ab.first < 0 || ab.second < 0) throw std::invalid_argument("negative exponent");
    auto [m, coef] = ring->canonical(ab.first, ab.second, c.rehost(ring->coeff()->params()));
    e.add_term(m, coef);
  }
  return e;
}

RingElement RingElement::monomial(CurveRingPtr ring, int a, int b, const Poly& c) {
  RawPoly raw;
  raw.emplace(std::make_pair(a, b), c);
  return reduce(std::move(ring), raw);
}

RingElement RingElement::monomial(CurveRingPtr ring, int a, int b, const Rational& c) {
  Poly k = ring->coeff()->constant(c);
  return monomial(std::move(ring), a, b, k);
}

RingElement RingElement::constant(CurveRingPtr ring, const Poly& c) {
  return monomial(std::move(ring), 0, 0, c);
}

Poly RingElement::coeff(const CurveMono& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return ring_->coeff()->zero();
  return it->second;
}

int RingElement::order() const {
  int d = -1;
  for (auto& [m, c] : terms_)
    if (d < 0 || m.degree() < d) d = m.degree();
  return d;
}

int RingElement::max_degree() const {
  int d = -1;
  for (auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

bool RingElement::is_unit() const {
  auto it = terms_.find(CurveMono{0, 0});
  return it != terms_.end() && sgn(it->second.constant_term()) != 0;
}

RingElement RingElement::operator-() const {
  RingElement e = *this;
  for (auto& [m, c] : e.terms_) c = -c;
  return e;
}

RingElement& RingElement::operator+=(const RingElement& o) {
  check_same(o);
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  check_same(o);
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

RingElement operator*(const RingElement& a, const RingElement& b) {
  a.check_same(b);
  const CurveRing& r = *a.ring_;
  RingElement out(a.ring_);
  for (auto& [ma, ca] : a.terms_) {
    for (auto& [mb, cb] : b.terms_) {
      if (ma.degree() + mb.degree() >= r.trunc() && r.kind() != CurveKind::NodeRelative)
        continue;
      auto [m, c] = r.canonical(ma.x + mb.x, ma.y + mb.y, r.coeff()->mul(ca, cb));
      out.add_term(m, c);
    }
  }
  return out;
}

RingElement RingElement::scaled(const Poly& c) const {
  RingElement out(ring_);
  Poly k = c.rehost(ring_->coeff()->params());
  for (auto& [m, v] : terms_) out.add_term(m, ring_->coeff()->mul(v, k));
  return out;
}

RingElement RingElement::scaled(const Rational& c) const {
  return scaled(ring_->coeff()->constant(c));
}

RingElement RingElement::pow(int k) const {
  RingElement r = constant(ring_, ring_->coeff()->one());
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

RingElement RingElement::rehost(CurveRingPtr target) const {
  RingElement out(target);
  for (auto& [m, c] : terms_) {
    auto [mm, cc] = target->canonical(m.x, m.y, c.rehost(target->coeff()->params()));
    out.add_term(mm, cc);
  }
  return out;
}

std::vector<Poly> assignment_images(const CoeffAlgebra& from, const CoeffAlgebra& to,
                                    const std::map<std::string, Poly>& assignment) {
  std::vector<Poly> images;
  for (size_t v = 0; v < from.params()->nvars(); ++v) {
    auto it = assignment.find(from.params()->name(v));
    if (it == assignment.end()) {
      images.push_back(to.zero());
    } else {
      images.push_back(it->second.rehost(to.params()));
    }
  }
  return images;
}

RingElement RingElement::substitute(CurveRingPtr target,
                                    const std::map<std::string, Poly>& assignment) const {
  const CoeffAlgebra& from = *ring_->coeff();
  const CoeffAlgebra& to = *target->coeff();
  for (auto& [m, c] : terms_) {
    for (size_t v : c.support()) {
      if (!assignment.count(from.params()->name(v)))
        throw Error("unassigned variable " + from.params()->name(v));
    }
  }
  auto images = assignment_images(from, to, assignment);
  RingElement out(target);
  for (auto& [m, c] : terms_) {
    Poly val = to.reduce(c.evaluate(to.params(), images));
    // evaluate multiplies without truncation; truncating at the end is exact
    auto [mm, cc] = target->canonical(m.x, m.y, val);
    out.add_term(mm, cc);
  }
  return out;
}

bool RingElement::operator==(const RingElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (auto& [m, c] : terms_) {
    if (!(it->first == m) || it->second != c) return false;
    ++it;
  }
  return true;
}

std::string RingElement::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [m, c] : terms_) {
    std::string cs = c.to_string();
    std::string ms = mono_string(m);
    bool simple = c.size() == 1;
    bool neg = simple && sgn(c.lead().coef) < 0;
    if (neg) cs = (-c).to_string();
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    bool wrap = !simple;
    if (ms == "1") {
      s += wrap ? "(" + cs + ")" : cs;
    } else if (cs == "1") {
      s += ms;
    } else {
      s += (wrap ? "(" + cs + ")" : cs) + "*" + ms;
    }
  }
  return s;
}

}  // namespace hilbloc
