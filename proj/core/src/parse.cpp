#include "hilbloc/parse.hpp"

#include <cctype>
#include <climits>

namespace hilbloc {

namespace {

constexpr int kMaxExponent = 4096;

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  IdealExpr run() {
    IdealExpr out;
    out.source = s_;
    skip();
    if (at_end()) throw ParseError("empty ideal expression", pos_);
    for (;;) {
      out.gens.push_back(generator());
      skip();
      if (at_end()) break;
      if (s_[pos_] != ',') throw ParseError("expected ',' or '+'", pos_);
      ++pos_;
    }
    return out;
  }

  Rational rational_only() {
    skip();
    bool neg = false;
    if (!at_end() && (s_[pos_] == '-' || s_[pos_] == '+')) neg = s_[pos_++] == '-';
    skip();
    Rational q = number();
    skip();
    if (!at_end()) throw ParseError("trailing characters", pos_);
    return neg ? Rational(-q) : q;
  }

 private:
  const std::string& s_;
  size_t pos_ = 0;

  bool at_end() const { return pos_ >= s_.size(); }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::vector<ExprTerm> generator() {
    std::vector<ExprTerm> terms;
    skip();
    int sign = 1;
    if (!at_end() && (s_[pos_] == '+' || s_[pos_] == '-')) {
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
    }
    terms.push_back(term(sign));
    for (;;) {
      skip();
      if (at_end() || s_[pos_] == ',') break;
      if (s_[pos_] != '+' && s_[pos_] != '-') throw ParseError("expected '+', '-' or ','", pos_);
      sign = s_[pos_] == '-' ? -1 : 1;
      ++pos_;
      terms.push_back(term(sign));
    }
    return terms;
  }

  Integer digits() {
    size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError("expected a number", pos_);
    return Integer(s_.substr(start, pos_ - start));
  }

  Rational number() {
    Integer n = digits();
    Integer d = 1;
    skip();
    if (!at_end() && s_[pos_] == '/') {
      ++pos_;
      skip();
      size_t at = pos_;
      d = digits();
      if (d == 0) throw ParseError("zero denominator", at);
    }
    Rational q(n, d);
    q.canonicalize();
    return q;
  }

  int exponent() {
    skip();
    size_t at = pos_;
    Integer e = digits();
    if (e > kMaxExponent) throw ParseError("exponent overflow", at);
    return static_cast<int>(e.get_si());
  }

  ExprTerm term(int sign) {
    skip();
    ExprTerm t;
    t.coef = sign;
    bool have_number = false, have_factor = false;
    if (!at_end() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      t.coef *= number();
      have_number = true;
    }
    for (;;) {
      skip();
      if (at_end()) break;
      char c = s_[pos_];
      if (c == '*') {
        if (!have_number && !have_factor) throw ParseError("unexpected '*'", pos_);
        ++pos_;
        skip();
        if (at_end()) throw ParseError("expected a factor", pos_);
        c = s_[pos_];
        if (c != 'x' && c != 'y' && c != 'a') throw ParseError("expected x, y or a", pos_);
      }
      if (c == 'x' || c == 'y') {
        ++pos_;
        int e = 1;
        skip();
        if (!at_end() && s_[pos_] == '^') {
          ++pos_;
          e = exponent();
        }
        (c == 'x' ? t.x : t.y) += e;
        if (t.x > kMaxExponent || t.y > kMaxExponent) throw ParseError("exponent overflow", pos_);
        have_factor = true;
      } else if (c == 'a') {
        if (t.param) throw ParseError("parameter a appears twice in a term", pos_);
        ++pos_;
        t.param = true;
        have_factor = true;
      } else {
        break;
      }
    }
    if (!have_number && !have_factor) throw ParseError("expected a term", pos_);
    return t;
  }
};

std::string term_body(const ExprTerm& t) {
  std::string s;
  auto add = [&](const std::string& f) { s += (s.empty() ? "" : "*") + f; };
  if (t.param) add("a");
  if (t.x) add(t.x == 1 ? "x" : "x^" + std::to_string(t.x));
  if (t.y) add(t.y == 1 ? "y" : "y^" + std::to_string(t.y));
  return s;
}

}  // namespace

bool IdealExpr::symbolic() const {
  for (auto& g : gens)
    for (auto& t : g)
      if (t.param) return true;
  return false;
}

std::string IdealExpr::to_string() const {
  std::string out;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ", ";
    bool first = true;
    for (auto& t : gens[i]) {
      Rational c = t.coef;
      bool neg = sgn(c) < 0;
      if (neg) c = -c;
      if (first) out += neg ? "-" : "";
      else out += neg ? " - " : " + ";
      first = false;
      std::string body = term_body(t);
      if (body.empty()) out += c.get_str();
      else if (c == 1) out += body;
      else out += c.get_str() + "*" + body;
    }
  }
  return out;
}

IdealExpr parse_ideal_expr(const std::string& text) { return Parser(text).run(); }

Rational parse_rational(const std::string& text) { return Parser(text).rational_only(); }

IdealGens instantiate(const IdealExpr& expr, const CurveRingPtr& ring, std::optional<Rational> a) {
  const CoeffAlgebra& S = *ring->coeff();
  std::optional<Poly> sym;
  if (a) sym = S.constant(*a);
  else if (S.params()->index("a")) sym = S.param("a");
  std::vector<RingElement> gens;
  for (auto& g : expr.gens) {
    RawPoly raw;
    for (auto& t : g) {
      Poly c = S.constant(t.coef);
      if (t.param) {
        if (!sym) throw Error("symbolic parameter a needs a numeric value here");
        c = S.mul(c, *sym);
      }
      auto key = std::make_pair(t.x, t.y);
      auto it = raw.find(key);
      if (it == raw.end()) raw.emplace(key, c);
      else it->second += c;
    }
    gens.push_back(RingElement::reduce(ring, raw));
  }
  return IdealGens(ring, std::move(gens));
}

}  // namespace hilbloc
