#include "kzm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "kzm/irrep.hpp"
#include "kzm/kz.hpp"
#include "kzm/sugawara.hpp"
#include "kzm/symbols.hpp"
#include "kzm/verlinde.hpp"

namespace kzm {
namespace {

using nlohmann::json;

std::vector<Weight> a1_weights(const std::vector<int>& labels) {
  std::vector<Weight> w;
  for (int a : labels) w.push_back({a});
  return w;
}

json float_value(double x) { return json{{"float", x}}; }

double dist_to_identity(const ComplexMatrix& m) {
  double d = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) d = std::max(d, std::abs(m(r, c) - Complex(r == c ? 1.0 : 0.0, 0.0)));
  return d;
}

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

}  // namespace

bool SelftestReport::passed() const {
  return std::all_of(criteria.begin(), criteria.end(), [](const CriterionResult& c) { return c.passed; });
}

json SelftestReport::to_json() const {
  json out;
  out["seed"] = seed;
  out["passed"] = passed();
  json list = json::array();
  for (const auto& c : criteria) list.push_back({{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"details", c.details}});
  out["criteria"] = list;
  return out;
}

CriterionResult check_flatness() {
  CriterionResult res{1, "flatness", true, json::array()};
  const auto a1 = build_algebra('A', 1);
  const auto a2 = build_algebra('A', 2);
  const std::vector<std::vector<int>> a1_cases{{1, 1, 1, 1}, {1, 1, 2, 2}, {2, 2, 2, 2}, {1, 1, 1, 1, 2}, {2, 2, 2, 2, 2}, {3, 3, 3, 3}, {1, 1, 2, 2, 2}};
  auto record = [&](const KZSystem& sys, const std::string& label) {
    const auto rep = flatness_residual(sys);
    const bool ok = rep.exact_residual == 0;
    res.passed = res.passed && ok;
    res.details.push_back({{"system", label}, {"dim_invariants", sys.dim()}, {"ambient_dim", sys.ambient->dim},
                           {"relations", rep.relations}, {"residual", to_string(rep.exact_residual)}});
  };
  for (const auto& c : a1_cases) {
    std::string label = "A1";
    for (int a : c) label += " " + std::to_string(a);
    record(kz_system_at_level(a1, a1_weights(c), 3), label);
  }
  record(kz_system(a2, {{1, 0}, {0, 1}, {1, 1}}, Rational(5)), "A2 (1,0) (0,1) (1,1)");
  return res;
}

CriterionResult check_contractible_loop() {
  CriterionResult res{2, "contractible_loop", false, json::object()};
  const auto a1 = build_algebra('A', 1);
  const KZSystem sys = kz_system(a1, a1_weights({1, 1, 1, 1}), Rational(3));
  const ConfigPoint z0 = default_basepoint(4);
  // z_4 moves by 0.3, then z_3 by 0.3i, then both return.
  ConfigPoint z1 = z0, z2, z3;
  z1[3] += 0.3;
  z2 = z1;
  z2[2] += Complex(0.0, 0.3);
  z3 = z2;
  z3[3] -= 0.3;
  ConfigPath loop = ConfigPath::line(z0, z1);
  loop.then(ConfigPath::line(z1, z2)).then(ConfigPath::line(z2, z3)).then(ConfigPath::line(z3, z0));
  const auto h = parallel_transport(sys, loop, 1e-8);
  const double d = dist_to_identity(h.matrix);
  res.passed = d < 1e-7;
  res.details = {{"max_deviation_from_identity", float_value(d)}, {"estimated_error", float_value(h.estimated_error)},
                 {"steps_taken", h.steps_taken}, {"tol", float_value(1e-8)}};
  return res;
}

CriterionResult check_local_monodromy() {
  CriterionResult res{3, "local_monodromy", true, json::array()};
  const auto a1 = build_algebra('A', 1);
  const std::vector<std::vector<int>> cases{{1, 1}, {2, 2}, {1, 1, 2}, {2, 2, 2}, {1, 2, 1}};
  const std::vector<Rational> kappas{Rational(3), Rational(4), frac(7, 2)};
  for (const auto& c : cases)
    for (const auto& kappa : kappas) {
      const KZSystem sys = kz_system(a1, a1_weights(c), kappa);
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          const auto rep = eigenvalue_check(sys, i, j, 1e-9);
          const bool ok = rep.max_deviation < 1e-6;
          res.passed = res.passed && ok;
          std::string label = "A1";
          for (int a : c) label += " " + std::to_string(a);
          res.details.push_back({{"system", label}, {"kappa", to_string(kappa)}, {"pair", {i + 1, j + 1}},
                                 {"max_deviation", float_value(rep.max_deviation)}});
        }
    }
  return res;
}

CriterionResult check_sugawara(int depth) {
  CriterionResult res{4, "sugawara_virasoro", true, json::array()};
  for (int level = 1; level <= 2; ++level)
    for (int m = 0; m <= level; ++m) {
      const auto mod = truncated_module(level, m, depth);
      Rational affine = affine_relations_check(mod).residual;
      Rational vir = 0, lx = 0;
      std::size_t checks = 0;
      for (int p = -depth; p <= depth; ++p)
        for (int q = -depth; q <= depth; ++q) {
          if (std::abs(p + q) > depth) continue;
          vir = std::max(vir, virasoro_bracket_check(mod, p, q).residual);
          for (std::size_t x = 0; x < mod.algebra->dim; ++x) lx = std::max(lx, lx_commutator_check(mod, p, x, q).residual);
          ++checks;
        }
      const Rational l0 = l0_grading_check(mod).residual;
      const bool ok = affine == 0 && vir == 0 && lx == 0 && l0 == 0 && central_charge(mod) == Rational(3 * level) / (level + 2);
      res.passed = res.passed && ok;
      res.details.push_back({{"level", level}, {"weight", m}, {"depth", depth}, {"graded_dims", mod.graded_dims},
                             {"central_charge", to_string(central_charge(mod))}, {"affine_residual", to_string(affine)},
                             {"virasoro_residual", to_string(vir)}, {"lx_residual", to_string(lx)},
                             {"l0_residual", to_string(l0)}, {"index_pairs", checks}});
    }
  return res;
}

CriterionResult check_symbols(std::uint64_t seed, std::size_t trials) {
  CriterionResult res{5, "symbol_identity", true, json::array()};
  for (std::size_t rank : {1u, 2u}) {
    const auto rep = symbol_trials(rank, trials, seed + rank);
    res.passed = res.passed && rep.passed();
    res.details.push_back({{"rank", rank}, {"trials", rep.trials}, {"exact_mismatches", rep.exact_mismatches},
                           {"cocycle_mismatches", rep.cocycle_mismatches}, {"basis_mismatches", rep.basis_mismatches},
                           {"max_float_deviation", float_value(rep.max_float_deviation)}});
  }
  return res;
}

CriterionResult check_verlinde(std::uint64_t seed) {
  CriterionResult res{6, "verlinde", true, json::object()};
  double worst = 0.0;
  std::size_t tuples = 0, mismatches = 0;
  for (int l = 1; l <= 8; ++l) {
    const auto ring = fusion_ring(l);
    worst = std::max(worst, ring.max_deviation);
    for (int n = 0; n <= 6; ++n) {
      std::vector<int> cur;
      std::vector<std::vector<int>> list;
      multisets(n, std::min(l, 4), cur, list);
      for (const auto& t : list) {
        const double s = s_matrix_rank(l, t);
        worst = std::max(worst, std::abs(s - std::round(s)));
        if (rank(ring, t) != std::lround(s)) ++mismatches;
        ++tuples;
      }
    }
  }
  // Injection and stabilization, started at the smallest admissible level.
  std::size_t unstable = 0, compared = 0;
  for (int n = 0; n <= 6; ++n) {
    std::vector<int> cur;
    std::vector<std::vector<int>> list;
    multisets(n, 4, cur, list);
    for (const auto& t : list) {
      const int lo = t.empty() ? 1 : std::max(1, t.back());
      const auto rep = compare_invariants(lo, t, 1);
      if (!rep.stabilization_level) ++unstable;
      ++compared;
    }
  }
  // Permutation invariance on seeded tuples.
  std::mt19937_64 rng(seed);
  std::size_t perm_failures = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int l = 1 + static_cast<int>(rng() % 8);
    std::vector<int> t(rng() % 7);
    for (auto& a : t) a = static_cast<int>(rng() % static_cast<std::uint64_t>(std::min(l, 4) + 1));
    const auto ring = fusion_ring(l);
    const long base = rank(ring, t);
    std::vector<int> shuffled = t;
    std::reverse(shuffled.begin(), shuffled.end());
    if (!shuffled.empty()) std::rotate(shuffled.begin(), shuffled.begin() + static_cast<long>(rng() % shuffled.size()), shuffled.end());
    if (rank(ring, shuffled) != base) ++perm_failures;
  }
  res.passed = worst < 1e-9 && mismatches == 0 && unstable == 0 && perm_failures == 0;
  res.details = {{"tuples", tuples}, {"rank_mismatches", mismatches}, {"max_s_matrix_deviation", float_value(worst)},
                 {"compared_with_invariants", compared}, {"unstabilized", unstable}, {"permutation_failures", perm_failures}};
  return res;
}

CriterionResult check_representations() {
  CriterionResult res{7, "representations", true, json::object()};
  std::size_t casimir_cases = 0, casimir_failures = 0;
  const auto a1 = build_algebra('A', 1);
  for (int m = 0; m <= 8; ++m) {
    const auto rep = irrep(a1, {m});
    const auto c = casimir(rep);
    if (!c.is_scalar || c.eigenvalue != casimir_value(*a1, {m})) ++casimir_failures;
    ++casimir_cases;
  }
  const auto a2 = build_algebra('A', 2);
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b) {
      if (weyl_dimension(*a2, {a, b}) > 15) continue;
      const auto c = casimir(irrep(a2, {a, b}));
      if (!c.is_scalar || c.eigenvalue != casimir_value(*a2, {a, b})) ++casimir_failures;
      ++casimir_cases;
    }
  json catalan = json::array();
  Integer cat = 1;
  for (int m = 1; m <= 5; ++m) {
    cat = cat * 2 * (2 * m - 1) / (m + 1);
    const auto sys = tensor_system(a1, std::vector<Weight>(2 * m, Weight{1}));
    const std::size_t dim = invariant_basis(sys).dim();
    const Integer count = invariant_dimension_count(*sys);
    const bool ok = Integer(static_cast<long>(dim)) == cat && count == cat;
    res.passed = res.passed && ok;
    catalan.push_back({{"m", m}, {"dim_invariants", dim}, {"catalan", cat.get_str()}});
  }
  res.passed = res.passed && casimir_failures == 0;
  res.details = {{"casimir_cases", casimir_cases}, {"casimir_failures", casimir_failures}, {"catalan", catalan}};
  return res;
}

CriterionResult check_determinism(std::uint64_t seed) {
  CriterionResult res{8, "determinism", false, json::object()};
  const auto a = check_symbols(seed, 20).details.dump();
  const auto b = check_symbols(seed, 20).details.dump();
  const auto h1 = check_contractible_loop().details.dump();
  const auto h2 = check_contractible_loop().details.dump();
  res.passed = a == b && h1 == h2;
  res.details = {{"seeded_rerun_identical", a == b}, {"transport_rerun_identical", h1 == h2}};
  return res;
}

SelftestReport selftest(std::uint64_t seed) {
  SelftestReport rep;
  rep.seed = seed;
  rep.criteria = {check_flatness(),   check_contractible_loop(), check_local_monodromy(), check_sugawara(),
                  check_symbols(seed), check_verlinde(seed),      check_representations(), check_determinism(seed)};
  return rep;
}

}  // namespace kzm
