#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace kzm {

// Level-l fusion ring of affine sl_2. Labels are the A_1 weights 0..l.
struct FusionRing {
  int level = 0;
  std::vector<int> labels;
  std::vector<int> coeffs;  // N_ab^c at (a (l+1) + b) (l+1) + c
  double max_deviation = 0.0;  // against the S-matrix evaluation, before rounding

  int N(int a, int b, int c) const;
};

/// Coefficients from the admissibility rule, cross-checked against the
/// S-matrix; disagreement raises ConsistencyError. Needs l >= 1.
FusionRing fusion_ring(int level);

/// S_ab = sqrt(2 / (l + 2)) sin(pi (a + 1) (b + 1) / (l + 2)).
std::vector<std::vector<double>> s_matrix(int level);

/// sum_x S_ax S_bx S_cx / S_0x (S is real and symmetric).
double verlinde_coefficient(int level, int a, int b, int c);

/// Genus-0 rank as the unit coefficient of the iterated fusion product.
/// Other genera raise DomainError.
long rank(const FusionRing& ring, const std::vector<int>& labels, int genus = 0);
/// Same rank from sum_x S_0x^(2 - n) prod_i S_(a_i) x, unrounded.
double s_matrix_rank(int level, const std::vector<int>& labels);

struct InjectionReport {
  int level = 0;
  long rank = 0;            // at `level`
  long dim_invariants = 0;  // dim A_lambda
  bool equal = false;
  std::optional<int> stabilization_level;  // first scanned level with rank = dim A
  std::vector<std::pair<int, long>> ranks_by_level;
};

/// Scans levels l, l + 1, ..., l + scan_levels - 1 (at least until rank = dim A
/// is reachable). Throws ViolationError if a rank exceeds dim A or drops with l.
InjectionReport compare_invariants(int level, const std::vector<int>& labels, int scan_levels = 10);

}  // namespace kzm
