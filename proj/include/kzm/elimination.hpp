#pragma once

#include <cstddef>
#include <vector>

#include "kzm/matrix.hpp"

namespace kzm {

struct RowEchelon {
  RationalMatrix rref;              // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each rref row
  std::size_t rank() const { return pivots.size(); }
};

/// Reduced row echelon form via fraction-free elimination: rows are scaled to
/// primitive integer vectors and combined as p*r - a*s, so no fraction appears
/// until the final normalization.
RowEchelon row_echelon(const RationalMatrix& m);
RowEchelon row_echelon(const SparseOperator<Rational>& m);

/// Kernel basis as matrix columns. Column k is 1 at the k-th free column and
/// zero at the other free columns.
RationalMatrix nullspace_exact(const RationalMatrix& m);
RationalMatrix nullspace_exact(const SparseOperator<Rational>& m);

struct Kernel {
  RationalMatrix basis;                    // as nullspace_exact
  std::vector<std::size_t> free_columns;  // basis(free_columns[k], k) == 1
};
Kernel kernel_exact(const SparseOperator<Rational>& m);

std::size_t rank_exact(const RationalMatrix& m);

/// Columns of `m` that form a maximal independent set, lowest indices first.
std::vector<std::size_t> independent_columns(const RationalMatrix& m);

/// Throws DomainError for a singular or non-square input.
RationalMatrix inverse_exact(const RationalMatrix& m);

}  // namespace kzm
