#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "kzm/lie_algebra.hpp"

namespace kzm {

// Degree-truncated integrable highest-weight module H_lambda of affine sl_2 at
// level l, lambda = m omega. Built as the quotient of the module induced from
// V_lambda (PBW monomials in negative modes times V_lambda) by the radical of
// its contravariant form, one degree at a time.
struct TruncatedModule {
  AlgebraPtr algebra;
  int level = 0;
  int weight = 0;
  int depth = 0;

  // Generators in PBW order (f < h < e), as algebra basis indices.
  std::vector<std::size_t> generators;

  std::vector<std::size_t> verma_dims;    // induced module, per degree
  std::vector<std::size_t> graded_dims;   // quotient, per degree
  std::vector<RationalMatrix> shapovalov_gram;  // quotient basis, per degree (nondegenerate)

  /// X(n) from degree `source` to degree source - n, X an algebra basis index;
  /// nullptr when either degree lies outside [0, depth].
  const RationalMatrix* mode(std::size_t x, int n, int source) const;

  /// Blocks keyed by (algebra basis index, n, source degree).
  std::map<std::tuple<std::size_t, int, int>, RationalMatrix> modes;
};

/// Throws DomainError unless 0 <= m <= level, level >= 1 and 0 <= depth <= max_depth.
TruncatedModule truncated_module(int level, int m, int depth, int max_depth = 6);

// L_n as partial operator: blocks[k] maps degree k to degree k - n and is
// absent where either degree leaves the truncation.
struct VirasoroOperator {
  int index = 0;
  std::vector<std::optional<RationalMatrix>> blocks;
};

/// Sugawara L_n = 1/(2(l + h)) sum_q sum_a :J^a(q) J^a(n - q):, with modes of
/// larger index placed to the right.
VirasoroOperator ln_operator(const TruncatedModule& mod, int n);

/// c_v = l dim g / (l + h).
Rational central_charge(const TruncatedModule& mod);
/// L_0 eigenvalue on the top degree, c_lambda / (2 (l + h)).
Rational conformal_weight(const TruncatedModule& mod);

struct CheckResult {
  Rational residual;  // max |entry| over the checked blocks
  std::size_t blocks_checked = 0;
};

/// [X(p), Y(q)] = [X, Y](p + q) + p delta_{p+q,0} kappa(X, Y) l over every
/// generator pair and |p|, |q| <= depth.
CheckResult affine_relations_check(const TruncatedModule& mod);
/// [L_p, L_q] = (p - q) L_{p+q} + delta_{p+q,0} (p^3 - p) / 12 c_v.
CheckResult virasoro_bracket_check(const TruncatedModule& mod, int p, int q);
/// [L_n, X(k)] = -k X(n + k), X an algebra basis index.
CheckResult lx_commutator_check(const TruncatedModule& mod, int n, std::size_t x, int k);
/// L_0 = (conformal weight + k) on degree k.
CheckResult l0_grading_check(const TruncatedModule& mod);

}  // namespace kzm
