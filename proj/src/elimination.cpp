#include "kzm/elimination.hpp"

#include <algorithm>
#include <utility>

#include "kzm/error.hpp"

namespace kzm {
namespace {

using SparseRow = std::vector<std::pair<std::size_t, Integer>>;

void make_primitive(SparseRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1) {
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  }
}

using RationalRow = std::vector<std::pair<std::size_t, Rational>>;

SparseRow integer_row(const RationalRow& row) {
  Integer lcm = 1;
  for (const auto& [c, x] : row) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.get_den_mpz_t());
  SparseRow out;
  for (const auto& [c, x] : row) {
    Integer v = x.get_num() * (lcm / x.get_den());
    out.emplace_back(c, std::move(v));
  }
  make_primitive(out);
  return out;
}

// a_piv * row - a_row * piv, both rows sorted by column.
SparseRow combine(const SparseRow& row, const Integer& row_scale, const SparseRow& piv, const Integer& piv_scale) {
  SparseRow out;
  out.reserve(row.size() + piv.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < piv.size()) {
    if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
      out.emplace_back(row[i].first, row_scale * row[i].second);
      ++i;
    } else if (i == row.size() || piv[j].first < row[i].first) {
      out.emplace_back(piv[j].first, -(piv_scale * piv[j].second));
      ++j;
    } else {
      Integer v = row_scale * row[i].second - piv_scale * piv[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  make_primitive(out);
  return out;
}

RowEchelon echelon_from_rows(std::vector<SparseRow> rows, std::size_t ncols) {

  // Forward pass: every remaining row has its leading entry at column >= c.
  std::vector<SparseRow> pivot_rows;
  for (std::size_t c = 0; c < ncols && !rows.empty(); ++c) {
    std::size_t best = rows.size();
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k].front().first != c) continue;
      if (best == rows.size() || rows[k].size() < rows[best].size()) best = k;
    }
    if (best == rows.size()) continue;
    SparseRow piv = std::move(rows[best]);
    rows.erase(rows.begin() + static_cast<std::ptrdiff_t>(best));
    std::vector<SparseRow> kept;
    kept.reserve(rows.size());
    for (auto& row : rows) {
      if (row.front().first == c) {
        Integer a = row.front().second;
        auto reduced = combine(row, piv.front().second, piv, a);
        if (!reduced.empty()) kept.push_back(std::move(reduced));
      } else {
        kept.push_back(std::move(row));
      }
    }
    rows = std::move(kept);
    pivot_rows.push_back(std::move(piv));
  }

  // Backward pass, still fraction free, then normalize pivots to one.
  for (std::size_t p = pivot_rows.size(); p-- > 0;) {
    const std::size_t c = pivot_rows[p].front().first;
    for (std::size_t q = 0; q < p; ++q) {
      auto it = std::find_if(pivot_rows[q].begin(), pivot_rows[q].end(), [c](const auto& e) { return e.first == c; });
      if (it == pivot_rows[q].end()) continue;
      Integer a = it->second;
      pivot_rows[q] = combine(pivot_rows[q], pivot_rows[p].front().second, pivot_rows[p], a);
    }
  }

  RowEchelon out;
  out.rref = RationalMatrix(pivot_rows.size(), ncols);
  for (std::size_t p = 0; p < pivot_rows.size(); ++p) {
    const Integer lead = pivot_rows[p].front().second;
    out.pivots.push_back(pivot_rows[p].front().first);
    for (const auto& [c, v] : pivot_rows[p]) {
      Rational q(v, lead);
      q.canonicalize();
      out.rref(p, c) = q;
    }
  }
  return out;
}

Kernel kernel_from_echelon(const RowEchelon& e, std::size_t ncols) {
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < ncols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  RationalMatrix basis(ncols, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    basis(free_cols[k], k) = 1;
    for (std::size_t p = 0; p < e.pivots.size(); ++p) basis(e.pivots[p], k) = -e.rref(p, free_cols[k]);
  }
  return {std::move(basis), std::move(free_cols)};
}

}  // namespace

RowEchelon row_echelon(const RationalMatrix& m) {
  std::vector<SparseRow> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RationalRow row;
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) row.emplace_back(c, m(r, c));
    if (!row.empty()) rows.push_back(integer_row(row));
  }
  return echelon_from_rows(std::move(rows), m.cols());
}

RowEchelon row_echelon(const SparseOperator<Rational>& m) {
  std::vector<SparseRow> rows;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    RationalRow row;
    m.for_each_in_row(r, [&](std::size_t c, const Rational& v) { row.emplace_back(c, v); });
    if (!row.empty()) rows.push_back(integer_row(row));
  }
  return echelon_from_rows(std::move(rows), m.cols());
}

RationalMatrix nullspace_exact(const RationalMatrix& m) { return kernel_from_echelon(row_echelon(m), m.cols()).basis; }

RationalMatrix nullspace_exact(const SparseOperator<Rational>& m) {
  return kernel_from_echelon(row_echelon(m), m.cols()).basis;
}

Kernel kernel_exact(const SparseOperator<Rational>& m) { return kernel_from_echelon(row_echelon(m), m.cols()); }

std::size_t rank_exact(const RationalMatrix& m) { return row_echelon(m).rank(); }

std::vector<std::size_t> independent_columns(const RationalMatrix& m) { return row_echelon(m).pivots; }

RationalMatrix inverse_exact(const RationalMatrix& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw DomainError("inverse of non-square matrix " + m.shape());
  RationalMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  const RowEchelon e = row_echelon(aug);
  if (e.rank() != n || (n > 0 && e.pivots.back() != n - 1)) throw DomainError("matrix is singular");
  RationalMatrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = e.rref(i, n + j);
  return inv;
}

}  // namespace kzm
