#include "doctest.h"
#include "kzm/sugawara.hpp"
#include "oracles/weyl_kac.hpp"

using namespace kzm;

namespace {

std::size_t idx(const TruncatedModule& mod, char which) {
  const auto& alg = *mod.algebra;
  return which == 'e' ? alg.e_index[0] : which == 'f' ? alg.f_index[0] : alg.h_index[0];
}

}  // namespace

TEST_CASE("Weyl-Kac oracle reproduces the level-one vacuum series") {
  CHECK(oracle::affine_sl2_graded_dims(1, 0, 4) == std::vector<long>{1, 3, 4, 7, 13});
}

TEST_CASE("graded dimensions match the Weyl-Kac character") {
  for (int level = 1; level <= 3; ++level)
    for (int m = 0; m <= level; ++m) {
      const int depth = level == 3 ? 3 : 4;
      const auto mod = truncated_module(level, m, depth);
      const auto expected = oracle::affine_sl2_graded_dims(level, m, depth);
      for (int k = 0; k <= depth; ++k) CHECK(static_cast<long>(mod.graded_dims[static_cast<std::size_t>(k)]) == expected[static_cast<std::size_t>(k)]);
      CHECK(mod.graded_dims[0] == static_cast<std::size_t>(m + 1));
    }
}

TEST_CASE("truncated module errors and trivial cases") {
  CHECK_THROWS_AS(truncated_module(2, 3, 2), DomainError);
  CHECK_THROWS_AS(truncated_module(0, 0, 2), DomainError);
  CHECK_THROWS_AS(truncated_module(1, 0, 7), DomainError);
  CHECK_NOTHROW(truncated_module(1, 0, 7, 7));
  const auto vac = truncated_module(1, 0, 0);
  CHECK(vac.graded_dims == std::vector<std::size_t>{1});
  // PBW order f < h < e.
  CHECK(vac.generators == std::vector<std::size_t>{idx(vac, 'f'), idx(vac, 'h'), idx(vac, 'e')});
}

TEST_CASE("Shapovalov grams are nondegenerate and the Verma radical is visible") {
  const auto mod = truncated_module(1, 0, 3);
  // Level-one vacuum: f(-1)|0> is null, so degree one keeps 3 of 3 but degree 2 drops to 4 of 9.
  CHECK(mod.verma_dims == std::vector<std::size_t>{1, 3, 9, 22});
  CHECK(mod.graded_dims == std::vector<std::size_t>{1, 3, 4, 7});
  for (const auto& g : mod.shapovalov_gram) CHECK(g == g.transpose());
}

TEST_CASE("affine relations hold exactly") {
  for (int level = 1; level <= 2; ++level)
    for (int m = 0; m <= level; ++m) {
      const auto r = affine_relations_check(truncated_module(level, m, 3));
      CHECK(r.residual == 0);
      CHECK(r.blocks_checked > 0);
    }
}

TEST_CASE("L0 grading and conformal weight") {
  const auto mod = truncated_module(2, 1, 3);
  // c_lambda / (2 (l + 2)) = (3/2) / 8
  CHECK(conformal_weight(mod) == frac(3, 16));
  CHECK(l0_grading_check(mod).residual == 0);
  const auto l0 = ln_operator(mod, 0);
  CHECK((*l0.blocks[0])(0, 0) == frac(3, 16));
  // L_n kills the top degree for n > 0: the blocks are absent rather than zero.
  CHECK(!ln_operator(mod, 1).blocks[0].has_value());
  CHECK(ln_operator(mod, 1).blocks[1].has_value());
  CHECK(ln_operator(mod, 1).blocks[1]->rows() == mod.graded_dims[0]);
}

TEST_CASE("Virasoro relations") {
  const auto m4 = truncated_module(1, 0, 4);
  CHECK(central_charge(m4) == 1);
  CHECK(virasoro_bracket_check(m4, 1, -1).residual == 0);
  CHECK(virasoro_bracket_check(m4, 2, -2).residual == 0);
  CHECK(virasoro_bracket_check(m4, 1, 2).residual == 0);
  for (int level = 1; level <= 2; ++level)
    for (int m = 0; m <= level; ++m) {
      const auto mod = truncated_module(level, m, 4);
      CHECK(central_charge(mod) == Rational(3 * level) / (level + 2));
      for (int p = -2; p <= 2; ++p)
        for (int q = -2; q <= 2; ++q) {
          const auto r = virasoro_bracket_check(mod, p, q);
          CHECK(r.residual == 0);
        }
    }
  CHECK_THROWS_AS(virasoro_bracket_check(m4, 3, 2), DomainError);
}

TEST_CASE("the anomaly term is present on the vacuum") {
  // L_2 L_-2 |0> = (4 L_0 + c_v / 2) |0>, and L_2 |0> = 0.
  const auto mod = truncated_module(1, 0, 4);
  const auto l2 = ln_operator(mod, 2), lm2 = ln_operator(mod, -2), l0 = ln_operator(mod, 0);
  const RationalMatrix on_top = *l2.blocks[2] * *lm2.blocks[0] - 4 * *l0.blocks[0];
  CHECK(on_top(0, 0) == frac(1, 2));  // c_v / 2
}

TEST_CASE("[L_n, X(k)] = -k X(n + k)") {
  for (int level = 1; level <= 2; ++level)
    for (int m = 0; m <= level; ++m) {
      const auto mod = truncated_module(level, m, 3);
      for (char x : {'e', 'f', 'h'})
        for (int n = -2; n <= 2; ++n)
          for (int k = -2; k <= 2; ++k) {
            if (std::abs(n + k) > 3) continue;
            CHECK(lx_commutator_check(mod, n, idx(mod, x), k).residual == 0);
          }
    }
}
