#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hilbloc/errors.hpp"
#include "hilbloc/quotient.hpp"

namespace hilbloc {

class ParseError : public Error {
 public:
  ParseError(const std::string& what, size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  size_t offset() const { return offset_; }

 private:
  size_t offset_;
};

struct ExprTerm {
  Rational coef;
  bool param = false;  // multiplied by the symbolic parameter a
  int x = 0;
  int y = 0;
};

struct IdealExpr {
  std::string source;
  std::vector<std::vector<ExprTerm>> gens;
  bool symbolic() const;
  std::string to_string() const;
};

// gens separated by ','; term = [rational][*][x[^e]][*][y[^e]], optionally
// with a factor a for the symbolic parameter.
IdealExpr parse_ideal_expr(const std::string& text);

// Build generators; a symbolic parameter needs `a`, or a coefficient algebra
// with a parameter named "a".
IdealGens instantiate(const IdealExpr& expr, const CurveRingPtr& ring,
                      std::optional<Rational> a = std::nullopt);

Rational parse_rational(const std::string& text);

}  // namespace hilbloc
