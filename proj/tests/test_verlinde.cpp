#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "kzm/error.hpp"
#include "kzm/invariants.hpp"
#include "kzm/verlinde.hpp"
#include "oracles/su2_counting.hpp"

using namespace kzm;

namespace {

// All nondecreasing tuples of length n with entries in [0, top].
void multisets(int n, int top, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(cur);
    return;
  }
  for (int a = cur.empty() ? 0 : cur.back(); a <= top; ++a) {
    cur.push_back(a);
    multisets(n, top, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> tuples_up_to(int nmax, int top) {
  std::vector<std::vector<int>> out;
  for (int n = 0; n <= nmax; ++n) {
    std::vector<int> cur;
    multisets(n, top, cur, out);
  }
  return out;
}

}  // namespace

TEST_CASE("fusion coefficients") {
  const auto r1 = fusion_ring(1);
  CHECK(r1.N(1, 1, 0) == 1);
  CHECK(r1.N(1, 1, 1) == 0);
  const auto r2 = fusion_ring(2);
  CHECK(r2.N(1, 1, 2) == 1);
  CHECK(r2.N(2, 2, 2) == 0);
  CHECK(r2.N(2, 2, 0) == 1);
  for (int l = 1; l <= 8; ++l) {
    const auto r = fusion_ring(l);
    CHECK(r.max_deviation < 1e-9);
    for (int a = 0; a <= l; ++a)
      for (int c = 0; c <= l; ++c) CHECK(r.N(a, 0, c) == (a == c ? 1 : 0));
  }
  CHECK_THROWS_AS(fusion_ring(0), DomainError);
  CHECK_THROWS_AS(r1.N(2, 0, 0), DomainError);
}

TEST_CASE("fusion ring axioms") {
  for (int l = 1; l <= 6; ++l) {
    const auto r = fusion_ring(l);
    for (int a = 0; a <= l; ++a)
      for (int b = 0; b <= l; ++b) {
        for (int c = 0; c <= l; ++c) CHECK(r.N(a, b, c) == r.N(b, a, c));
        for (int c = 0; c <= l; ++c)
          for (int d = 0; d <= l; ++d) {
            int lhs = 0, rhs = 0;
            for (int e = 0; e <= l; ++e) {
              lhs += r.N(a, b, e) * r.N(e, c, d);
              rhs += r.N(b, c, e) * r.N(a, e, d);
            }
            CHECK(lhs == rhs);
          }
      }
  }
}

TEST_CASE("rank examples") {
  const auto r1 = fusion_ring(1);
  CHECK(rank(r1, {1, 1, 1, 1}) == 1);
  CHECK(rank(r1, {1, 1, 1}) == 0);
  CHECK(rank(r1, {}) == 1);
  // 2 x 2 = 0 at level 2, so the three-point rank vanishes.
  CHECK(rank(fusion_ring(2), {2, 2, 2}) == 0);
  CHECK(rank(fusion_ring(3), {2, 2, 2}) == 1);
  CHECK_THROWS_AS(rank(r1, {2}), DomainError);
  CHECK_THROWS_AS(rank(r1, {1, 1}, 1), DomainError);
  CHECK_THROWS_AS(s_matrix_rank(1, {2}), DomainError);
}

TEST_CASE("fusion ranks match the S-matrix sums and the oracle") {
  double worst = 0.0;
  for (int l = 1; l <= 8; ++l) {
    const auto r = fusion_ring(l);
    for (const auto& t : tuples_up_to(6, std::min(l, 4))) {
      const double s = s_matrix_rank(l, t);
      worst = std::max(worst, std::abs(s - std::round(s)));
      CHECK(rank(r, t) == std::lround(s));
      CHECK(std::abs(oracle::verlinde_rank(l, t) - s) < 1e-9);
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("rank is invariant under permutations") {
  const auto r = fusion_ring(3);
  std::vector<int> t{0, 1, 2, 2, 3};
  const long base = rank(r, t);
  do CHECK(rank(r, t) == base);
  while (std::next_permutation(t.begin(), t.end()));
}

TEST_CASE("two-point ranks detect equal labels") {
  for (int l = 1; l <= 5; ++l) {
    const auto r = fusion_ring(l);
    for (int a = 0; a <= l; ++a)
      for (int b = 0; b <= l; ++b) CHECK(rank(r, {a, b}) == (a == b ? 1 : 0));
  }
}

TEST_CASE("ranks grow with the level up to dim A") {
  for (const auto& t : tuples_up_to(6, 4)) {
    const long dim_a = oracle::su2_singlets(t);
    long prev = 0;
    const int lo = t.empty() ? 1 : std::max(1, *std::max_element(t.begin(), t.end()));
    for (int l = lo; l <= 8; ++l) {
      const long r = rank(fusion_ring(l), t);
      CHECK(r <= dim_a);
      CHECK(r >= prev);
      prev = r;
    }
  }
}

TEST_CASE("comparison against invariants") {
  const auto rep = compare_invariants(1, {1, 1, 1, 1});
  CHECK(rep.dim_invariants == 2);
  CHECK(rep.rank == 1);
  CHECK_FALSE(rep.equal);
  REQUIRE(rep.stabilization_level);
  CHECK(*rep.stabilization_level == 2);
  for (const auto& [l, r] : rep.ranks_by_level) CHECK(r == (l == 1 ? 1 : 2));

  for (int l = 1; l <= 4; ++l) {
    const auto two = compare_invariants(l, {1, 1}, 3);
    CHECK(two.rank == 1);
    CHECK(two.dim_invariants == 1);
    CHECK(two.equal);
  }
  const auto three = compare_invariants(2, {2, 2, 2});
  CHECK(three.rank == 0);
  CHECK(three.dim_invariants == 1);
  CHECK(*three.stabilization_level == 3);

  const auto odd = compare_invariants(1, {1, 1, 1});
  CHECK(odd.rank == 0);
  CHECK(odd.dim_invariants == 0);
  CHECK(*odd.stabilization_level == 1);

  CHECK_THROWS_AS(compare_invariants(1, {2}), DomainError);
}

TEST_CASE("dim A agrees with the exact null space and Clebsch-Gordan counting") {
  const auto alg = build_algebra('A', 1);
  for (const auto& t : tuples_up_to(4, 3)) {
    if (t.empty()) continue;
    std::vector<Weight> w;
    for (int a : t) w.push_back({a});
    const auto sys = tensor_system(alg, w);
    const long dim_a = compare_invariants(std::max(1, *std::max_element(t.begin(), t.end())), t, 1).dim_invariants;
    CHECK(dim_a == oracle::su2_singlets(t));
    CHECK(static_cast<long>(invariant_basis(sys).dim()) == dim_a);
  }
}

TEST_CASE("every tested tuple stabilizes") {
  for (const auto& t : tuples_up_to(6, 4)) {
    const int lo = t.empty() ? 1 : std::max(1, *std::max_element(t.begin(), t.end()));
    const auto rep = compare_invariants(lo, t, 1);
    REQUIRE(rep.stabilization_level);
    CHECK(rep.ranks_by_level.back().second == rep.dim_invariants);
  }
}
