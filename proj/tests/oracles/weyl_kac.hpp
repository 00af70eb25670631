#pragma once

// Graded dimensions of the level-l integrable module of affine sl_2 with top
// weight m, from the Weyl-Kac character specialized to the degree grading:
//   sum_n (m + 1 + 2Kn) q^{K n^2 + (m+1) n} / prod_j (1 - q^j)^3,  K = l + 2.
// Test-only oracle; plain integer power series.

#include <vector>

namespace oracle {

inline std::vector<long> affine_sl2_graded_dims(int level, int m, int depth) {
  const long K = level + 2;
  std::vector<long> numerator(static_cast<std::size_t>(depth) + 1, 0);
  for (long n = -depth - 2; n <= depth + 2; ++n) {
    const long power = K * n * n + (m + 1) * n;
    if (power < 0 || power > depth) continue;
    numerator[static_cast<std::size_t>(power)] += m + 1 + 2 * K * n;
  }
  // Multiply by prod_j (1 - q^j)^{-3}: three passes of 1 / (1 - q^j) per j.
  std::vector<long> series = numerator;
  for (int j = 1; j <= depth; ++j)
    for (int rep = 0; rep < 3; ++rep)
      for (int d = j; d <= depth; ++d) series[static_cast<std::size_t>(d)] += series[static_cast<std::size_t>(d - j)];
  return series;
}

}  // namespace oracle
