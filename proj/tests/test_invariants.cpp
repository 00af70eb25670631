#include "doctest.h"
#include "kzm/elimination.hpp"
#include "kzm/invariants.hpp"
#include "oracles/naive_elimination.hpp"

using namespace kzm;

namespace {

// Dense diagonal action of every basis element, stacked; the null space is the
// invariant subspace. Oracle for small ambients only.
std::size_t naive_invariant_dim(const TensorSystem& sys) {
  const auto& alg = *sys.algebra;
  RationalMatrix stacked(alg.dim * sys.dim, sys.dim);
  for (std::size_t k = 0; k < alg.dim; ++k) {
    RationalMatrix total(sys.dim, sys.dim);
    for (std::size_t s = 0; s < sys.size(); ++s) {
      RationalMatrix term = RationalMatrix::identity(1);
      for (std::size_t t = 0; t < sys.size(); ++t) {
        const auto& f = *sys.factors[t];
        term = kronecker(term, t == s ? f.basis_matrices[k] : RationalMatrix::identity(f.dim));
      }
      total += term;
    }
    for (std::size_t r = 0; r < sys.dim; ++r)
      for (std::size_t c = 0; c < sys.dim; ++c) stacked(k * sys.dim + r, c) = total(r, c);
  }
  return sys.dim - oracle::naive_rref(stacked).pivots.size();
}

const long catalan[] = {1, 1, 2, 5, 14, 42};

}  // namespace

TEST_CASE("invariant dimensions agree with a dense oracle") {
  const auto a1 = build_algebra('A', 1);
  const auto a2 = build_algebra('A', 2);
  const std::vector<std::pair<AlgebraPtr, std::vector<Weight>>> cases = {
      {a1, {{1}, {1}}},         {a1, {{1}, {2}}},          {a1, {{2}, {2}}},
      {a1, {{1}, {1}, {2}}},    {a1, {{2}, {2}, {2}}},     {a1, {{1}, {1}, {1}, {1}}},
      {a2, {{1, 0}, {0, 1}}},   {a2, {{1, 0}, {1, 0}, {1, 0}}}, {a2, {{1, 1}, {1, 1}}},
  };
  for (const auto& [alg, weights] : cases) {
    const auto sys = tensor_system(alg, weights);
    const auto inv = invariant_basis(sys);
    const std::size_t expected = naive_invariant_dim(*sys);
    CHECK(inv.dim() == expected);
    CHECK(invariant_dimension_count(*sys) == static_cast<unsigned long>(expected));
    CHECK(invariant_basis_float(sys).dim() == expected);
    // Pivot rows are an identity block.
    for (std::size_t c = 0; c < inv.dim(); ++c)
      for (std::size_t r = 0; r < inv.dim(); ++r) CHECK(inv.basis(inv.pivot_rows[r], c) == (r == c ? 1 : 0));
  }
}

TEST_CASE("Catalan numbers for copies of the spin-1/2 module") {
  const auto a1 = build_algebra('A', 1);
  for (int m = 1; m <= 5; ++m) {
    const auto sys = tensor_system(a1, std::vector<Weight>(2 * static_cast<std::size_t>(m), Weight{1}));
    CHECK(invariant_basis(sys).dim() == static_cast<std::size_t>(catalan[m]));
    CHECK(invariant_dimension_count(*sys) == catalan[m]);
  }
  // Odd tensor powers carry no invariants.
  CHECK(invariant_basis(tensor_system(a1, {{1}, {1}, {1}})).dim() == 0);
}

TEST_CASE("invariant vectors are annihilated by every basis element") {
  const auto a2 = build_algebra('A', 2);
  // Adjoint cubed: the f and d tensors.
  const auto sys = tensor_system(a2, {{1, 1}, {1, 1}, {1, 1}});
  const auto inv = invariant_basis(sys);
  REQUIRE(inv.dim() == 2);
  for (std::size_t k = 0; k < a2->dim; ++k) CHECK(diagonal_action(*sys, a2->unit(k)).apply(inv.basis).is_zero());
}

TEST_CASE("Omega on V1 (x) V1 has eigenvalues 1/2 (x3) and -3/2") {
  const auto a1 = build_algebra('A', 1);
  const auto sys = tensor_system(a1, {{1}, {1}});
  const RationalMatrix omega = omega_pair(*sys, 0, 1).matrix.densify();
  const RationalMatrix id = RationalMatrix::identity(4);
  CHECK((omega - id * frac(1, 2)) * (omega + id * frac(3, 2)) == RationalMatrix(4, 4));
  CHECK(rank_exact(omega - id * frac(1, 2)) == 1);
  CHECK(rank_exact(omega + id * frac(3, 2)) == 3);
  // On the singlet Omega acts by -3/2.
  const auto inv = invariant_basis(sys);
  const RationalMatrix r = restrict(omega_pair(*sys, 0, 1), inv);
  CHECK(r == RationalMatrix::identity(1) * frac(-3, 2));
  CHECK_THROWS_AS(omega_pair(*sys, 1, 1), DomainError);
}

TEST_CASE("sum of Omega_ij on invariants is minus half the total Casimir") {
  const auto a1 = build_algebra('A', 1);
  const auto a2 = build_algebra('A', 2);
  const std::vector<std::pair<AlgebraPtr, std::vector<Weight>>> cases = {
      {a1, {{1}, {1}, {1}, {1}}}, {a1, {{2}, {1}, {1}}}, {a2, {{1, 0}, {1, 0}, {1, 0}}}, {a2, {{1, 0}, {0, 1}, {1, 1}}}};
  for (const auto& [alg, weights] : cases) {
    const auto sys = tensor_system(alg, weights);
    const auto inv = invariant_basis(sys);
    const auto finv = invariant_basis_float(sys);
    RationalMatrix total(inv.dim(), inv.dim());
    ComplexMatrix ftotal = ComplexMatrix::Zero(static_cast<Eigen::Index>(finv.dim()), static_cast<Eigen::Index>(finv.dim()));
    Rational c = 0;
    for (const auto& w : weights) c += casimir_value(*alg, w);
    for (std::size_t i = 0; i < weights.size(); ++i)
      for (std::size_t j = i + 1; j < weights.size(); ++j) {
        const auto op = omega_pair(*sys, i, j);
        total += restrict(op, inv);
        ftotal += restrict(op, finv);
      }
    CHECK(total == RationalMatrix::identity(inv.dim()) * (-c / 2));
    const ComplexMatrix expect = -to_double(c) / 2 * ComplexMatrix::Identity(ftotal.rows(), ftotal.cols());
    CHECK(max_abs(ftotal - expect) < 1e-10);
  }
}

TEST_CASE("Omega_ij commutes with the diagonal action and respects slot swaps") {
  const auto a1 = build_algebra('A', 1);
  const auto sys = tensor_system(a1, {{1}, {2}, {1}});
  const auto omega01 = omega_pair(*sys, 0, 1).matrix.densify();
  for (std::size_t k = 0; k < a1->dim; ++k) {
    const RationalMatrix d = diagonal_action(*sys, a1->unit(k)).densify();
    CHECK(commutator(omega01, d).is_zero());
  }
  // P_02 Omega_01 P_02 = Omega_21.
  const RationalMatrix p = slot_swap(*sys, 0, 2).densify();
  CHECK(p * p == RationalMatrix::identity(sys->dim));
  CHECK(p * omega01 * p == omega_pair(*sys, 2, 1).matrix.densify());
  CHECK(omega_pair(*sys, 0, 1).matrix.densify() == omega_pair(*sys, 1, 0).matrix.densify());
  CHECK_THROWS(slot_swap(*sys, 0, 1));
}

TEST_CASE("Omega does not depend on the orthonormal basis") {
  const auto a2 = build_algebra('A', 2);
  const auto sys = tensor_system(a2, {{1, 0}, {0, 1}});
  const auto b1 = orthonormal_basis(*a2);
  const auto b2 = orthonormal_basis(*a2, {7, 6, 5, 4, 3, 2, 1, 0});
  CHECK(omega_pair(*sys, 0, 1, b1).matrix.densify() == omega_pair(*sys, 0, 1, b2).matrix.densify());
}

TEST_CASE("tensor system indexing and errors") {
  const auto a1 = build_algebra('A', 1);
  const auto sys = tensor_system(a1, {{1}, {2}});
  CHECK(sys->dim == 6);
  CHECK(sys->slots(5) == std::vector<std::size_t>{1, 2});
  CHECK(sys->index({1, 2}) == 5);
  CHECK(sys->weight(0) == Weight{3});
  CHECK_THROWS_AS(tensor_system(std::vector<IrrepPtr>{}), DomainError);
  const auto a2 = build_algebra('A', 2);
  auto x = std::make_shared<const Irrep>(irrep(a1, {1}));
  auto y = std::make_shared<const Irrep>(irrep(a2, {1, 0}));
  CHECK_THROWS_AS(tensor_system({x, y}), DomainError);
}
