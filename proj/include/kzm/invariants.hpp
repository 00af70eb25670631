#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include "kzm/complex_linalg.hpp"
#include "kzm/irrep.hpp"

namespace kzm {

using IrrepPtr = std::shared_ptr<const Irrep>;

// V_1 (x) ... (x) V_n with mixed-radix indexing: slot 0 is the most significant digit.
struct TensorSystem {
  AlgebraPtr algebra;
  std::vector<IrrepPtr> factors;
  std::size_t dim = 0;
  std::vector<std::size_t> strides;

  std::size_t size() const { return factors.size(); }
  std::size_t slot(std::size_t index, std::size_t factor) const {
    return (index / strides[factor]) % factors[factor]->dim;
  }
  std::vector<std::size_t> slots(std::size_t index) const;
  std::size_t index(const std::vector<std::size_t>& slots) const;
  Weight weight(std::size_t index) const;
};

using TensorSystemPtr = std::shared_ptr<const TensorSystem>;

/// Throws DomainError for an empty factor list or mismatched algebras.
TensorSystemPtr tensor_system(std::vector<IrrepPtr> reps);
/// Builds the irreps (sharing equal weights) and their tensor system.
TensorSystemPtr tensor_system(const AlgebraPtr& alg, const std::vector<Weight>& weights);

// g-invariant vectors of the tensor product (the space A_lambda, realized on
// vectors rather than functionals). Exact basis columns are normalized so that
// the rows listed in pivot_rows form an identity block.
struct InvariantSpace {
  TensorSystemPtr ambient;
  RationalMatrix basis;                 // ambient dim x dim A
  std::vector<std::size_t> pivot_rows;  // ambient indices
  std::size_t dim() const { return basis.cols(); }
};

struct FloatInvariantSpace {
  TensorSystemPtr ambient;
  ComplexMatrix basis;  // orthonormal columns
  std::size_t dim() const { return static_cast<std::size_t>(basis.cols()); }
};

/// Exact null space of the diagonal e_i, f_i actions on the zero-weight space.
InvariantSpace invariant_basis(const TensorSystemPtr& sys);
/// Same subspace from a rank-revealing SVD, threshold 1e-10 * max-norm.
FloatInvariantSpace invariant_basis_float(const TensorSystemPtr& sys);

/// dim A_lambda from weight multiplicities via the alternating Weyl-group sum
/// sum_w sgn(w) mult(rho - w rho). No linear algebra involved.
Integer invariant_dimension_count(const TensorSystem& sys);

struct TwoSiteOperator {
  std::size_t i = 0, j = 0;
  SparseOperator<Rational> matrix;  // on the ambient tensor space
  std::optional<RationalMatrix> restriction;
};

/// Omega_ij = sum_a rho_i(J^a) rho_j(J^a), assembled from the rational
/// directions of `basis` (sum_a rho_i(v_a) rho_j(v_a) / q_a).
TwoSiteOperator omega_pair(const TensorSystem& sys, std::size_t i, std::size_t j, const OrthonormalBasis& basis);
TwoSiteOperator omega_pair(const TensorSystem& sys, std::size_t i, std::size_t j);

/// R with Omega * B = B * R; verified exactly, ConsistencyError otherwise.
RationalMatrix restrict(const TwoSiteOperator& op, const InvariantSpace& inv);
/// B^* Omega B; a residual above 1e-9 * max(1, |Omega|) raises ConsistencyError.
ComplexMatrix restrict(const TwoSiteOperator& op, const FloatInvariantSpace& inv);

/// Permutation exchanging tensor slots i and j (factors must be equal).
SparseOperator<Rational> slot_swap(const TensorSystem& sys, std::size_t i, std::size_t j);

/// Diagonal action sum_k rho_k(x) on the ambient space.
SparseOperator<Rational> diagonal_action(const TensorSystem& sys, const AlgebraVector& x);

}  // namespace kzm
