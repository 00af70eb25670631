#include <random>

#include "doctest.h"
#include "kzm/symbols.hpp"

using namespace kzm;

namespace {

struct Sl2 {
  AlgebraPtr alg = build_algebra('A', 1);
  AlgebraVector e() const { return alg->unit(alg->e_index[0]); }
  AlgebraVector f() const { return alg->unit(alg->f_index[0]); }
  AlgebraVector h() const { return alg->unit(alg->h_index[0]); }
  LaurentGVector empty() const { return {alg, {}}; }
};

}  // namespace

TEST_CASE("symbol pairing examples") {
  const Sl2 s;
  const auto basis = orthonormal_basis(*s.alg);
  LaurentGVector phi = s.empty();
  phi.add(0, s.h());
  // kappa(h, h) = 2, 1 / (2 (1 + 2)) * 2 = 1/3
  CHECK(symbol_pairing(phi, 0, 1) == frac(1, 3));
  CHECK(residue_side(phi, 0, 1, basis) == frac(1, 3));

  CHECK(symbol_pairing(s.empty(), 2, 1) == 0);
  CHECK(residue_side(s.empty(), 2, 1, basis) == 0);

  LaurentGVector psi = s.empty();
  psi.add(1, s.e()).add(2, s.f());
  // Both orderings k = 1, 2 contribute kappa(e, f) = 1.
  CHECK(symbol_pairing(psi, 3, 2) == frac(1, 4));
  CHECK(residue_side(psi, 3, 2, basis) == frac(1, 4));
  CHECK(std::abs(residue_side_float(psi, 3, 2, basis) - 0.25) < 1e-15);
}

TEST_CASE("cocycle evaluation examples") {
  const Sl2 s;
  LaurentGVector phi = s.empty();
  phi.add(0, s.h());
  CHECK(cocycle_evaluation(phi, 0) == 2);
  CHECK(cocycle_evaluation(phi, FormalField{0}) == 2);
  LaurentGVector e1 = s.empty();
  e1.add(1, s.e());
  CHECK(cocycle_evaluation(e1, 2) == 0);
}

TEST_CASE("zero coefficients leave the support") {
  const Sl2 s;
  LaurentGVector phi = s.empty();
  phi.add(3, s.e());
  AlgebraVector minus_e = s.e();
  for (auto& v : minus_e) v = -v;
  phi.add(3, minus_e);
  CHECK(phi.support.empty());
  CHECK_THROWS_AS(phi.add(0, AlgebraVector(2)), ShapeError);
}

TEST_CASE("residue side equals the closed form on random inputs") {
  std::mt19937_64 rng(2024);
  for (std::size_t rank : {1u, 2u}) {
    const auto alg = build_algebra('A', rank);
    const auto basis = orthonormal_basis(*alg);
    for (int t = 0; t < 100; ++t) {
      const LaurentGVector phi = random_laurent_vector(alg, rng, -4, 4);
      const int m = static_cast<int>(rng() % 7) - 3;
      const int level = static_cast<int>(rng() % 3) + 1;
      const Rational closed = symbol_pairing(phi, m, level);
      CHECK(residue_side(phi, m, level, basis) == closed);
      CHECK(std::abs(residue_side_float(phi, m, level, basis) - to_double(closed)) <= 1e-12);
      for (int l = 1; l <= 4; ++l) CHECK(cocycle_evaluation(phi, m) == 2 * (l + alg->dual_coxeter) * symbol_pairing(phi, m, l));
    }
  }
}

TEST_CASE("residue side does not depend on the orthonormal basis") {
  const auto alg = build_algebra('A', 2);
  const auto b1 = orthonormal_basis(*alg);
  const auto b2 = orthonormal_basis(*alg, {3, 7, 0, 5, 1, 6, 2, 4});
  std::mt19937_64 rng(7);
  for (int t = 0; t < 20; ++t) {
    const LaurentGVector phi = random_laurent_vector(alg, rng, -3, 3);
    for (int m = -2; m <= 2; ++m) CHECK(residue_side(phi, m, 2, b1) == residue_side(phi, m, 2, b2));
  }
}

TEST_CASE("bilinearity with the cross term") {
  const auto alg = build_algebra('A', 1);
  std::mt19937_64 rng(99);
  for (int t = 0; t < 30; ++t) {
    const LaurentGVector phi = random_laurent_vector(alg, rng, -4, 0);
    const LaurentGVector psi = random_laurent_vector(alg, rng, 1, 4);
    for (int n = -3; n <= 3; ++n) {
      CHECK(cocycle_evaluation(phi + psi, n) ==
            cocycle_evaluation(phi, n) + cocycle_evaluation(psi, n) + 2 * cocycle_evaluation(phi, psi, n));
      CHECK(cocycle_evaluation(phi, psi, n) == cocycle_evaluation(psi, phi, n));
    }
  }
}

TEST_CASE("reindexing k -> m - k leaves the pairing unchanged") {
  const auto alg = build_algebra('A', 1);
  std::mt19937_64 rng(5);
  for (int t = 0; t < 30; ++t) {
    const LaurentGVector phi = random_laurent_vector(alg, rng, -4, 4);
    for (int m = -3; m <= 3; ++m) {
      LaurentGVector mirrored{alg, {}};
      for (const auto& [k, x] : phi.support) mirrored.add(m - k, x);
      CHECK(symbol_pairing(mirrored, m, 1) == symbol_pairing(phi, m, 1));
    }
  }
}

TEST_CASE("seeded trial runner") {
  const auto rep = symbol_trials(1, 100, 7);
  CHECK(rep.trials == 100);
  CHECK(rep.passed());
  const auto again = symbol_trials(1, 100, 7);
  CHECK(again.max_float_deviation == rep.max_float_deviation);
}
