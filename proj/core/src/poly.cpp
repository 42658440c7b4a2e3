#include "hilbloc/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace hilbloc {

std::string to_string(const Rational& q) { return q.get_str(); }

PolyRing::PolyRing(std::vector<std::string> names, MonomialOrder order)
    : names_(std::move(names)), order_(std::move(order)) {
  for (size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw std::invalid_argument("empty variable name");
    if (!lookup_.emplace(names_[i], i).second)
      throw std::invalid_argument("duplicate variable name " + names_[i]);
  }
  int n = static_cast<int>(names_.size());
  if (order_.blocks.empty()) {
    ranges_.push_back({0, n});
  } else {
    int lo = 0;
    for (int b : order_.blocks) {
      if (b <= 0) throw std::invalid_argument("block sizes must be positive");
      ranges_.push_back({lo, lo + b});
      lo += b;
    }
    if (lo != n) throw std::invalid_argument("block sizes do not cover the variables");
  }
}

std::optional<size_t> PolyRing::index(std::string_view name) const {
  auto it = lookup_.find(name);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

int PolyRing::compare(const Exponent& a, const Exponent& b) const {
  for (auto [lo, hi] : ranges_) {
    int da = 0, db = 0;
    for (int i = lo; i < hi; ++i) {
      da += a[i];
      db += b[i];
    }
    if (da != db) return da < db ? -1 : 1;
    for (int i = hi - 1; i >= lo; --i)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
  }
  return 0;
}

PolyRingPtr make_ring(std::vector<std::string> names, MonomialOrder order) {
  return std::make_shared<const PolyRing>(std::move(names), std::move(order));
}

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool divides(const Exponent& a, const Exponent& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Poly::Poly(PolyRingPtr ring, std::vector<Term> terms)
    : ring_(std::move(ring)), terms_(std::move(terms)) {
  normalize();
}

void Poly::normalize() {
  const PolyRing& r = *ring_;
  std::sort(terms_.begin(), terms_.end(),
            [&](const Term& a, const Term& b) { return r.compare(a.exp, b.exp) > 0; });
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef += t.coef;
    } else {
      if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coef) == 0) out.pop_back();
  terms_ = std::move(out);
}

Poly Poly::constant(PolyRingPtr ring, const Rational& c) {
  Poly p(ring);
  if (sgn(c) != 0) p.terms_.push_back({Exponent(ring->nvars(), 0), c});
  return p;
}

Poly Poly::variable(PolyRingPtr ring, size_t var) {
  Exponent e(ring->nvars(), 0);
  e.at(var) = 1;
  return monomial(std::move(ring), std::move(e));
}

Poly Poly::variable(PolyRingPtr ring, std::string_view name) {
  auto idx = ring->index(name);
  if (!idx) throw std::invalid_argument("unknown variable " + std::string(name));
  return variable(std::move(ring), *idx);
}

Poly Poly::monomial(PolyRingPtr ring, Exponent e, const Rational& c) {
  Poly p(std::move(ring));
  if (sgn(c) != 0) p.terms_.push_back({std::move(e), c});
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_[0].exp) == 0);
}

int Poly::degree() const {
  int d = -1;
  for (auto& t : terms_) d = std::max(d, total_degree(t.exp));
  return d;
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return 0;
  const Term& t = terms_.back();
  return total_degree(t.exp) == 0 ? t.coef : Rational(0);
}

Rational Poly::coefficient(const Exponent& e) const {
  for (auto& t : terms_)
    if (t.exp == e) return t.coef;
  return 0;
}

bool Poly::uses(size_t var) const {
  for (auto& t : terms_)
    if (t.exp[var] != 0) return true;
  return false;
}

std::vector<size_t> Poly::support() const {
  std::vector<size_t> out;
  if (!ring_) return out;
  for (size_t v = 0; v < ring_->nvars(); ++v)
    if (uses(v)) out.push_back(v);
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

// Merge two descending term lists; sign is +1 or -1 applied to b.
std::vector<Term> merge(const PolyRing& r, const std::vector<Term>& a, const std::vector<Term>& b,
                        int sign) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    int c;
    if (i == a.size()) c = -1;
    else if (j == b.size()) c = 1;
    else c = r.compare(a[i].exp, b[j].exp);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(b[j++]);
      if (sign < 0) out.back().coef = -out.back().coef;
    } else {
      Rational s = sign > 0 ? Rational(a[i].coef + b[j].coef) : Rational(a[i].coef - b[j].coef);
      if (sgn(s) != 0) out.push_back({a[i].exp, std::move(s)});
      ++i;
      ++j;
    }
  }
  return out;
}

const PolyRingPtr& pick_ring(const Poly& a, const Poly& b) {
  if (!a.ring()) return b.ring();
  if (b.ring() && a.ring() != b.ring() && !a.ring()->same_as(*b.ring()))
    throw std::invalid_argument("polynomial ring mismatch");
  return a.ring();
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.terms_.empty()) {
    if (!ring_) ring_ = o.ring_;
    return *this;
  }
  ring_ = pick_ring(*this, o);
  terms_ = merge(*ring_, terms_, o.terms_, 1);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.terms_.empty()) {
    if (!ring_) ring_ = o.ring_;
    return *this;
  }
  ring_ = pick_ring(*this, o);
  terms_ = merge(*ring_, terms_, o.terms_, -1);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  const PolyRingPtr& ring = pick_ring(a, b);
  Poly out(ring);
  if (a.is_zero() || b.is_zero()) return out;
  const PolyRing& r = *ring;
  auto cmp = [&r](const Exponent& x, const Exponent& y) { return r.compare(x, y) > 0; };
  std::map<Exponent, Rational, decltype(cmp)> acc(cmp);
  Exponent e(r.nvars());
  for (auto& s : a.terms()) {
    for (auto& t : b.terms()) {
      for (size_t k = 0; k < e.size(); ++k) e[k] = s.exp[k] + t.exp[k];
      auto [it, fresh] = acc.try_emplace(e, 0);
      it->second += s.coef * t.coef;
    }
  }
  out.terms_.reserve(acc.size());
  for (auto& [exp, c] : acc)
    if (sgn(c) != 0) out.terms_.push_back({exp, c});
  return out;
}

Poly Poly::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Poly(ring_);
  Poly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Poly Poly::times_term(const Exponent& e, const Rational& c) const {
  if (sgn(c) == 0) return Poly(ring_);
  Poly p = *this;
  for (auto& t : p.terms_) {
    for (size_t k = 0; k < e.size(); ++k) t.exp[k] += e[k];
    t.coef *= c;
  }
  return p;
}

Poly Poly::pow(int k) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  return scaled(Rational(1) / terms_.front().coef);
}

Poly Poly::primitive() const { return monic(); }

Poly Poly::with_sign_normalized() const {
  if (terms_.empty() || sgn(terms_.front().coef) > 0) return *this;
  return -*this;
}

Poly Poly::substitute(size_t var, const Poly& value) const {
  std::map<size_t, Poly> m;
  m.emplace(var, value);
  return substitute(m);
}

Poly Poly::substitute(const std::map<size_t, Poly>& values) const {
  Poly out(ring_);
  if (terms_.empty()) return out;
  std::map<std::pair<size_t, int>, Poly> powers;
  for (auto& t : terms_) {
    Exponent rest = t.exp;
    Poly factor = constant(ring_, t.coef);
    bool any = false;
    for (auto& [v, val] : values) {
      int k = rest[v];
      if (k == 0) continue;
      rest[v] = 0;
      any = true;
      auto key = std::make_pair(v, k);
      auto it = powers.find(key);
      if (it == powers.end()) it = powers.emplace(key, val.pow(k)).first;
      factor = factor * it->second;
    }
    if (!any) {
      out += monomial(ring_, t.exp, t.coef);
    } else {
      out += factor.times_term(rest, 1);
    }
  }
  return out;
}

Poly Poly::evaluate(const PolyRingPtr& target, const std::vector<Poly>& images) const {
  Poly out(target);
  if (!ring_) return out;
  if (images.size() != ring_->nvars()) throw std::invalid_argument("evaluate: image count");
  for (auto& t : terms_) {
    Poly acc = constant(target, t.coef);
    for (size_t v = 0; v < t.exp.size(); ++v)
      if (t.exp[v]) acc = acc * images[v].pow(t.exp[v]);
    out += acc;
  }
  return out;
}

Poly Poly::rehost(const PolyRingPtr& target) const {
  if (!ring_ || ring_ == target) return Poly(target, terms_);
  std::vector<size_t> map(ring_->nvars());
  for (size_t v = 0; v < ring_->nvars(); ++v) {
    auto idx = target->index(ring_->name(v));
    if (!idx) {
      if (uses(v)) throw std::invalid_argument("rehost: variable " + ring_->name(v) + " missing");
      map[v] = SIZE_MAX;
    } else {
      map[v] = *idx;
    }
  }
  std::vector<Term> ts;
  ts.reserve(terms_.size());
  for (auto& t : terms_) {
    Exponent e(target->nvars(), 0);
    for (size_t v = 0; v < t.exp.size(); ++v)
      if (t.exp[v]) e[map[v]] = t.exp[v];
    ts.push_back({std::move(e), t.coef});
  }
  return Poly(target, std::move(ts));
}

std::optional<Rational> Poly::linear_coefficient(size_t var) const {
  std::optional<Rational> c;
  for (auto& t : terms_) {
    int k = t.exp[var];
    if (k == 0) continue;
    if (k > 1 || total_degree(t.exp) != 1 || c) return std::nullopt;
    c = t.coef;
  }
  return c;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].exp != o.terms_[i].exp || terms_[i].coef != o.terms_[i].coef) return false;
  return true;
}

bool Poly::less(const Poly& a, const Poly& b) {
  size_t n = std::min(a.terms_.size(), b.terms_.size());
  const PolyRing* r = a.ring_ ? a.ring_.get() : b.ring_.get();
  for (size_t i = 0; i < n; ++i) {
    int c = r->compare(a.terms_[i].exp, b.terms_[i].exp);
    if (c != 0) return c < 0;
    int q = cmp(a.terms_[i].coef, b.terms_[i].coef);
    if (q != 0) return q < 0;
  }
  return a.terms_.size() < b.terms_.size();
}

std::string monomial_string(const PolyRing& ring, const Exponent& e) {
  std::string s;
  for (size_t v = 0; v < e.size(); ++v) {
    if (e[v] == 0) continue;
    if (!s.empty()) s += '*';
    const std::string& n = ring.name(v);
    bool wrap = e[v] > 1 && n.find('^') != std::string::npos;
    s += wrap ? "(" + n + ")" : n;
    if (e[v] > 1) s += "^" + std::to_string(e[v]);
  }
  return s;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    Rational c = t.coef;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first) s += neg ? "-" : "";
    else s += neg ? " - " : " + ";
    first = false;
    std::string m = monomial_string(*ring_, t.exp);
    if (m.empty()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += m;
    }
  }
  return s;
}

}  // namespace hilbloc
