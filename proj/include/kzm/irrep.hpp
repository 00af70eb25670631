#pragma once

#include <cstddef>
#include <vector>

#include "kzm/complex_linalg.hpp"
#include "kzm/lie_algebra.hpp"

namespace kzm {

// Finite-dimensional irreducible g-module V_lambda in a weight basis. Basis
// vectors are ordered by depth below lambda, ties broken by weight coordinates
// (lexicographically descending), then by generation order.
struct Irrep {
  AlgebraPtr algebra;
  Weight highest_weight;
  std::size_t dim = 0;
  std::vector<Weight> weights;  // weight of each basis vector
  std::vector<int> depth;       // number of lowering steps from the top
  // rho(x_k) for every algebra basis element x_k; exact rationals.
  std::vector<RationalMatrix> basis_matrices;
  // Contravariant form: <x v, w> = <v, x^T w>, normalized to <v_top, v_top> = 1.
  RationalMatrix contravariant_gram;

  const RationalMatrix& e(std::size_t i) const { return basis_matrices.at(algebra->e_index.at(i)); }
  const RationalMatrix& f(std::size_t i) const { return basis_matrices.at(algebra->f_index.at(i)); }
  const RationalMatrix& h(std::size_t i) const { return basis_matrices.at(algebra->h_index.at(i)); }

  RationalMatrix action(const AlgebraVector& x) const;
  ComplexMatrix float_action(const std::vector<Complex>& x) const;
};

/// Throws DomainError when lambda is not dominant integral for the algebra.
Irrep irrep(const AlgebraPtr& alg, const Weight& lambda);

struct CasimirReport {
  Rational eigenvalue;  // kappa(lambda, lambda + 2 rho)
  bool is_scalar = false;
  Rational deviation;  // max |Casimir - eigenvalue * I|
};

/// Sum_a rho(J^a)^2 = Sum_a rho(v_a)^2 / q_a, in exact arithmetic.
RationalMatrix casimir_matrix(const Irrep& rep, const OrthonormalBasis& basis);
CasimirReport casimir(const Irrep& rep);
CasimirReport casimir(const Irrep& rep, const OrthonormalBasis& basis);

struct FloatCasimirReport {
  double eigenvalue = 0.0;
  double deviation = 0.0;
  ComplexMatrix matrix;
};

/// Same operator assembled from floating-point J^a matrices.
FloatCasimirReport casimir_float(const Irrep& rep, const OrthonormalBasis& basis);

}  // namespace kzm
