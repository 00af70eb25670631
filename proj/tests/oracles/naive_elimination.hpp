#pragma once

// Textbook rational Gauss-Jordan elimination. Test-only oracle for the
// fraction-free kernel; it shares no code with src/elimination.cpp.

#include <utility>
#include <vector>

#include "kzm/matrix.hpp"

namespace oracle {

struct NaiveRref {
  kzm::RationalMatrix rref;
  std::vector<std::size_t> pivots;
};

inline NaiveRref naive_rref(kzm::RationalMatrix a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(p, k), a(row, k));
    const kzm::Rational inv = 1 / a(row, c);
    for (std::size_t k = 0; k < a.cols(); ++k) a(row, k) *= inv;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c) == 0) continue;
      const kzm::Rational f = a(r, c);
      for (std::size_t k = 0; k < a.cols(); ++k) a(r, k) -= f * a(row, k);
    }
    pivots.push_back(c);
    ++row;
  }
  kzm::RationalMatrix trimmed(pivots.size(), a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t k = 0; k < a.cols(); ++k) trimmed(r, k) = a(r, k);
  return {trimmed, pivots};
}

}  // namespace oracle
