#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "kzm/complex_linalg.hpp"
#include "kzm/matrix.hpp"

namespace kzm {

/// Integral weight in fundamental-weight coordinates.
using Weight = std::vector<int>;
/// Element of g expressed in the algebra's basis.
using AlgebraVector = std::vector<Rational>;

enum class ArithmeticMode { exact, floating };

std::string to_string(const Weight& w);

// sl_{r+1} realized as traceless (r+1)x(r+1) matrices. Basis order: E_ij for
// i<j (positive roots, by height then row), then E_ji, then h_k = E_kk - E_k+1,k+1.
// The invariant form is the trace form of the defining representation, which
// already satisfies kappa(theta, theta) = 2.
struct LieAlgebraData {
  struct BasisElement {
    std::string label;
    // Single matrix unit E_ab (root vectors) or the Cartan element h_k.
    bool is_cartan = false;
    std::size_t a = 0;  // row (root vector) or k (Cartan)
    std::size_t b = 0;
    Weight root;  // zero for Cartan elements
  };

  char series = 'A';
  std::size_t rank = 0;
  std::size_t dim = 0;
  int dual_coxeter = 0;
  std::vector<std::vector<int>> cartan_matrix;
  std::vector<Weight> positive_roots;  // aligned with the first positive_roots.size() basis elements
  Weight highest_root;
  Weight weyl_vector;
  std::vector<BasisElement> basis;
  std::vector<std::size_t> e_index, f_index, h_index;  // Chevalley generators
  RationalMatrix gram_matrix;                          // kappa on basis pairs
  RationalMatrix weight_form;                          // kappa on fundamental weights (inverse Cartan)

  std::size_t matrix_size() const { return rank + 1; }

  /// Defining-representation matrix of x.
  RationalMatrix to_matrix(const AlgebraVector& x) const;
  /// Inverse of to_matrix; throws DomainError for a matrix outside sl_{r+1}.
  AlgebraVector from_matrix(const RationalMatrix& m) const;
  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;
  AlgebraVector unit(std::size_t k) const;

  /// kappa(lambda, mu) for weights.
  Rational weight_pairing(const Weight& lambda, const Weight& mu) const;
  /// Coroot pairing <lambda, alpha^vee> for a root given in weight coordinates.
  Rational coroot_pairing(const Weight& lambda, const Weight& root) const;
};

using AlgebraPtr = std::shared_ptr<const LieAlgebraData>;

/// Throws ConfigurationError for anything but series 'A', DomainError for rank 0.
AlgebraPtr build_algebra(char series, std::size_t rank);

Rational killing_form(const LieAlgebraData& alg, const AlgebraVector& x, const AlgebraVector& y);
Complex killing_form(const LieAlgebraData& alg, const std::vector<Complex>& x, const std::vector<Complex>& y);

// Orthonormal basis for kappa. Exact mode stores each element as J = v / sqrt(q)
// with v rational and q = kappa(v, v) a nonzero rational: the elements live in
// quadratic extensions of Q, and every quantity quadratic in the J's (Casimir
// tensors, sums of kappa(X, J)kappa(Y, J)) stays rational.
struct OrthonormalBasis {
  struct Element {
    AlgebraVector direction;
    Rational norm_sq;
  };
  std::vector<Element> elements;

  std::size_t size() const { return elements.size(); }
  /// Float-mode coordinates of J^a = v_a / sqrt(q_a) (complex when q_a < 0).
  std::vector<Complex> float_element(std::size_t a) const;
  /// kappa(v_a, v_b). The J's are orthonormal iff this is diag(q_a).
  RationalMatrix direction_gram(const LieAlgebraData& alg) const;
  /// Sum_a kappa(x, J^a) kappa(y, J^a), exact.
  Rational contract(const LieAlgebraData& alg, const AlgebraVector& x, const AlgebraVector& y) const;
};

/// Gram-Schmidt over Q on the basis elements taken in `seed_order` (identity
/// order when empty). Isotropic candidates are replaced by v +/- w for a
/// pending w with kappa(v, w) != 0.
OrthonormalBasis orthonormal_basis(const LieAlgebraData& alg, std::vector<std::size_t> seed_order = {});

/// Dominant integral weights with kappa(lambda, theta) <= level, ordered by
/// kappa(lambda, theta) and then lexicographically descending.
std::vector<Weight> level_weights(const LieAlgebraData& alg, int level);

bool is_dominant(const Weight& w);

/// kappa(lambda, lambda + 2 rho), the Casimir eigenvalue on V_lambda.
Rational casimir_value(const LieAlgebraData& alg, const Weight& lambda);

/// prod over positive roots of <lambda+rho, a^vee> / <rho, a^vee>.
Integer weyl_dimension(const LieAlgebraData& alg, const Weight& lambda);

}  // namespace kzm
