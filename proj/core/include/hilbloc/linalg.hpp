#pragma once

#include <map>
#include <vector>

#include "hilbloc/poly.hpp"

namespace hilbloc {

using SparseRow = std::vector<std::pair<int, Integer>>;  // ascending columns

// Incremental fraction-free row echelon form over Z (hence Q). Column 0 has
// the highest pivot priority. Rows are kept primitive (content removed).
class Echelon {
 public:
  explicit Echelon(int ncols) : ncols_(ncols) {}

  int ncols() const { return ncols_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  bool is_pivot(int col) const { return pivot_.count(col) != 0; }
  std::vector<int> free_columns() const;

  // Returns true if the row was independent of the rows already present.
  bool insert(SparseRow row);
  bool insert_rational(const std::vector<Rational>& dense);

  // Fully reduce a dense rational vector against the pivots; the result is
  // supported on free columns only.
  std::vector<Rational> reduce(const std::vector<Rational>& dense) const;

 private:
  int ncols_;
  std::vector<SparseRow> rows_;
  std::map<int, size_t> pivot_;
};

SparseRow to_integer_row(const std::vector<Rational>& dense);
void make_primitive(SparseRow& row);

// Rank of a list of dense rational vectors of equal length.
int rank_of(const std::vector<std::vector<Rational>>& vectors);
// Basis of the right kernel {v : M v = 0} of a dense rational matrix.
std::vector<std::vector<Rational>> kernel_basis(const std::vector<std::vector<Rational>>& rows,
                                                int ncols);

}  // namespace hilbloc
