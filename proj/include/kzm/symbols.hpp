#pragma once

#include <cstdint>
#include <map>
#include <random>

#include "kzm/lie_algebra.hpp"

namespace kzm {

// phi = sum_k X_k xi^{-k-1} dxi with finitely many nonzero X_k in g.
struct LaurentGVector {
  AlgebraPtr algebra;
  std::map<int, AlgebraVector> support;

  /// Adds x to the coefficient X_k (zero coefficients are dropped).
  LaurentGVector& add(int k, const AlgebraVector& x);
  const AlgebraVector* coefficient(int k) const;
  LaurentGVector operator+(const LaurentGVector& other) const;
};

// The vector field xi^{n+1} d/dxi.
struct FormalField {
  int index = 0;
};

/// 1/(2(l + h)) sum_k kappa(X_k, X_{m-k}).
Rational symbol_pairing(const LaurentGVector& phi, int m, int level);

/// The residue chain for <phi (x) phi dxi^2, L_m>:
/// 1/(2(l + h)) sum_k sum_a Res kappa(phi, J^a xi^k) Res kappa(phi, J^a xi^{m-k}),
/// evaluated with exact J^a = v_a / sqrt(q_a). For m = 0 the zero mode enters
/// once and the positive modes twice, as in L_0 without normal ordering.
Rational residue_side(const LaurentGVector& phi, int m, int level, const OrthonormalBasis& basis);
/// Same chain with floating-point J^a.
Complex residue_side_float(const LaurentGVector& phi, int m, int level, const OrthonormalBasis& basis);

/// sum_k kappa(X_k, X_{n-k}).
Rational cocycle_evaluation(const LaurentGVector& phi, int n);
Rational cocycle_evaluation(const LaurentGVector& phi, const FormalField& field);
/// Cross term sum_k kappa(X_k, Y_{n-k}).
Rational cocycle_evaluation(const LaurentGVector& phi, const LaurentGVector& psi, int n);

/// Random phi with integer-over-small-denominator coefficients on [kmin, kmax].
LaurentGVector random_laurent_vector(const AlgebraPtr& alg, std::mt19937_64& rng, int kmin, int kmax);

struct SymbolTrialReport {
  std::size_t trials = 0;
  std::size_t exact_mismatches = 0;        // residue_side != symbol_pairing
  std::size_t cocycle_mismatches = 0;      // cocycle != 2 (l + h) pairing
  std::size_t basis_mismatches = 0;        // residue side differs under a permuted basis
  double max_float_deviation = 0.0;
  bool passed() const { return exact_mismatches == 0 && cocycle_mismatches == 0 && basis_mismatches == 0 && max_float_deviation <= 1e-12; }
};

/// Seeded property trials: support in [-4, 4], m in [-3, 3], l in {1, 2, 3}.
SymbolTrialReport symbol_trials(std::size_t rank, std::size_t trials, std::uint64_t seed);

}  // namespace kzm
