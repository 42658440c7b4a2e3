#include "hilbloc/coeff.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace hilbloc {

namespace {

void check_names(const std::vector<std::string>& names) {
  for (auto& n : names)
    if (n.empty()) throw std::invalid_argument("empty parameter name");
}

}  // namespace

std::shared_ptr<const CoeffAlgebra> CoeffAlgebra::rationals() {
  static const std::shared_ptr<const CoeffAlgebra> q = [] {
    auto a = std::make_shared<CoeffAlgebra>();
    a->kind_ = Kind::Rationals;
    a->params_ = make_ring({});
    a->basis_ = {Exponent{}};
    a->basis_lookup_[Exponent{}] = 0;
    return a;
  }();
  return q;
}

std::shared_ptr<const CoeffAlgebra> CoeffAlgebra::artin(std::vector<std::string> params,
                                                         int nil_order) {
  check_names(params);
  if (nil_order < 1) throw std::invalid_argument("nil order must be positive");
  auto a = std::make_shared<CoeffAlgebra>();
  a->kind_ = Kind::TruncatedArtin;
  a->params_ = make_ring(std::move(params));
  a->nil_ = nil_order;
  size_t n = a->params_->nvars();
  std::vector<Exponent> all;
  Exponent e(n, 0);
  std::function<void(size_t, int)> rec = [&](size_t v, int left) {
    if (v == n) {
      all.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[v] = k;
      rec(v + 1, left - k);
    }
    e[v] = 0;
  };
  rec(0, nil_order - 1);
  const PolyRing& r = *a->params_;
  std::sort(all.begin(), all.end(), [&](const Exponent& x, const Exponent& y) {
    int dx = total_degree(x), dy = total_degree(y);
    if (dx != dy) return dx < dy;
    return r.compare(x, y) > 0;
  });
  a->basis_ = std::move(all);
  for (size_t i = 0; i < a->basis_.size(); ++i) a->basis_lookup_[a->basis_[i]] = i;
  return a;
}

std::shared_ptr<const CoeffAlgebra> CoeffAlgebra::free(std::vector<std::string> vars) {
  check_names(vars);
  auto a = std::make_shared<CoeffAlgebra>();
  a->kind_ = Kind::FreePoly;
  a->params_ = make_ring(std::move(vars));
  return a;
}

std::string CoeffAlgebra::describe() const {
  auto join = [&] {
    std::string s;
    for (size_t i = 0; i < params_->nvars(); ++i) s += (i ? "," : "") + params_->name(i);
    return s;
  };
  switch (kind_) {
    case Kind::Rationals: return "QQ";
    case Kind::TruncatedArtin: return "QQ[" + join() + "]/(deg>=" + std::to_string(nil_) + ")";
    case Kind::FreePoly: return "QQ[" + join() + "]";
  }
  return "";
}

Poly CoeffAlgebra::reduce(Poly p) const {
  if (kind_ != Kind::TruncatedArtin) return p;
  std::vector<Term> keep;
  for (auto& t : p.terms())
    if (total_degree(t.exp) < nil_) keep.push_back(t);
  if (keep.size() == p.size()) return p;
  return Poly(params_, std::move(keep));
}

Poly CoeffAlgebra::pow(const Poly& a, int k) const {
  Poly r = one();
  for (int i = 0; i < k; ++i) {
    r = mul(r, a);
    if (r.is_zero()) break;
  }
  return r;
}

std::vector<Rational> CoeffAlgebra::flatten(const Poly& a) const {
  std::vector<Rational> v(basis_.size());
  for (auto& t : a.terms()) v[basis_index(t.exp)] = t.coef;
  return v;
}

size_t CoeffAlgebra::basis_index(const Exponent& e) const {
  auto it = basis_lookup_.find(e);
  if (it == basis_lookup_.end()) throw std::logic_error("monomial outside the algebra basis");
  return it->second;
}

bool CoeffAlgebra::same_as(const CoeffAlgebra& o) const {
  return kind_ == o.kind_ && nil_ == o.nil_ && params_->same_as(*o.params_);
}

}  // namespace hilbloc
