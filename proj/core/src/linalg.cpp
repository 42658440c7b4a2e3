#include "hilbloc/linalg.hpp"

#include <stdexcept>

namespace hilbloc {

void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(row.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

SparseRow to_integer_row(const std::vector<Rational>& dense) {
  Integer l = 1;
  for (auto& q : dense)
    if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
  SparseRow row;
  for (size_t i = 0; i < dense.size(); ++i) {
    if (sgn(dense[i]) == 0) continue;
    Integer v = dense[i].get_num() * (l / dense[i].get_den());
    row.emplace_back(static_cast<int>(i), std::move(v));
  }
  return row;
}

std::vector<int> Echelon::free_columns() const {
  std::vector<int> out;
  for (int c = 0; c < ncols_; ++c)
    if (!pivot_.count(c)) out.push_back(c);
  return out;
}

namespace {

// a*row - b*other, both ascending sparse.
SparseRow combine(const Integer& a, const SparseRow& row, const Integer& b,
                  const SparseRow& other) {
  SparseRow out;
  out.reserve(row.size() + other.size());
  size_t i = 0, j = 0;
  Integer t;
  while (i < row.size() || j < other.size()) {
    if (j == other.size() || (i < row.size() && row[i].first < other[j].first)) {
      out.emplace_back(row[i].first, a * row[i].second);
      ++i;
    } else if (i == row.size() || other[j].first < row[i].first) {
      out.emplace_back(other[j].first, -b * other[j].second);
      ++j;
    } else {
      t = a * row[i].second - b * other[j].second;
      if (sgn(t) != 0) out.emplace_back(row[i].first, t);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

bool Echelon::insert(SparseRow row) {
  make_primitive(row);
  while (!row.empty()) {
    auto it = pivot_.find(row.front().first);
    if (it == pivot_.end()) break;
    const SparseRow& p = rows_[it->second];
    Integer g;
    mpz_gcd(g.get_mpz_t(), p.front().second.get_mpz_t(), row.front().second.get_mpz_t());
    Integer a = p.front().second / g;
    Integer b = row.front().second / g;
    row = combine(a, row, b, p);
    make_primitive(row);
  }
  if (row.empty()) return false;
  pivot_[row.front().first] = rows_.size();
  rows_.push_back(std::move(row));
  return true;
}

bool Echelon::insert_rational(const std::vector<Rational>& dense) {
  return insert(to_integer_row(dense));
}

std::vector<Rational> Echelon::reduce(const std::vector<Rational>& dense) const {
  if (static_cast<int>(dense.size()) != ncols_) throw std::invalid_argument("reduce: length");
  std::vector<Rational> v = dense;
  for (auto& [col, idx] : pivot_) {
    if (sgn(v[col]) == 0) continue;
    const SparseRow& p = rows_[idx];
    Rational f = v[col] / Rational(p.front().second);
    for (auto& [c, val] : p) v[c] -= f * Rational(val);
  }
  return v;
}

int rank_of(const std::vector<std::vector<Rational>>& vectors) {
  if (vectors.empty()) return 0;
  Echelon e(static_cast<int>(vectors.front().size()));
  for (auto& v : vectors) e.insert_rational(v);
  return e.rank();
}

std::vector<std::vector<Rational>> kernel_basis(const std::vector<std::vector<Rational>>& rows,
                                                int ncols) {
  std::vector<std::vector<Rational>> m;
  for (auto& r : rows) {
    if (static_cast<int>(r.size()) != ncols) throw std::invalid_argument("kernel: width");
    m.push_back(r);
  }
  std::vector<int> pivcol;
  size_t rank = 0;
  for (int c = 0; c < ncols && rank < m.size(); ++c) {
    size_t p = rank;
    while (p < m.size() && sgn(m[p][c]) == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    Rational inv = Rational(1) / m[rank][c];
    for (auto& v : m[rank]) v *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == rank || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (int k = c; k < ncols; ++k) m[r][k] -= f * m[rank][k];
    }
    pivcol.push_back(c);
    ++rank;
  }
  std::vector<bool> is_piv(ncols, false);
  for (int c : pivcol) is_piv[c] = true;
  std::vector<std::vector<Rational>> basis;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Rational> v(ncols);
    v[f] = 1;
    for (size_t r = 0; r < pivcol.size(); ++r) v[pivcol[r]] = -m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace hilbloc
