// One line per acceptance criterion: PASS/FAIL, name, runtime against its budget.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "kzm/cli.hpp"
#include "kzm/irrep.hpp"
#include "kzm/kz.hpp"
#include "kzm/sugawara.hpp"
#include "kzm/symbols.hpp"
#include "kzm/verlinde.hpp"
#include "oracles/freudenthal.hpp"
#include "oracles/naive_elimination.hpp"
#include "oracles/su2_counting.hpp"
#include "oracles/weyl_kac.hpp"

using namespace kzm;

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::vector<Weight> a1(const std::vector<int>& labels) {
  std::vector<Weight> w;
  for (int a : labels) w.push_back({a});
  return w;
}

// 1. Exact flatness.
bool flatness(std::string& note) {
  const auto alg1 = build_algebra('A', 1);
  const std::vector<std::vector<int>> cases{{1, 1, 1, 1}, {2, 2, 2, 2}, {1, 1, 2, 2, 2}, {3, 3, 3, 3, 3}, {4, 4, 4, 4, 4}, {1, 2, 3, 4, 4}};
  std::size_t systems = 0;
  for (const auto& c : cases) {
    const KZSystem sys = kz_system(alg1, a1(c), Rational(3));
    if (sys.ambient->dim > 4096) return note = "ambient too large", false;
    if (flatness_residual(sys).exact_residual != 0) return note = "nonzero residual", false;
    ++systems;
  }
  const KZSystem a2 = kz_system(build_algebra('A', 2), {{1, 0}, {0, 1}, {1, 1}}, Rational(4));
  const auto rep = flatness_residual(a2);
  if (rep.exact_residual != 0 || a2.dim() == 0) return note = "A2 residual", false;
  note = std::to_string(systems + 1) + " systems, residual 0";
  return true;
}

// 2. Contractible rectangle.
bool rectangle(std::string& note) {
  const KZSystem sys = kz_system(build_algebra('A', 1), a1({1, 1, 1, 1}), Rational(3));
  ConfigPoint z0 = default_basepoint(4), z1 = z0, z2, z3;
  z1[3] += 0.25;
  z2 = z1;
  z2[1] += Complex(0.0, 0.25);
  z3 = z2;
  z3[3] -= 0.25;
  ConfigPath loop = ConfigPath::line(z0, z1);
  loop.then(ConfigPath::line(z1, z2)).then(ConfigPath::line(z2, z3)).then(ConfigPath::line(z3, z0));
  const auto h = parallel_transport(sys, loop, 1e-8);
  const double d = (h.matrix - ComplexMatrix::Identity(h.matrix.rows(), h.matrix.cols())).cwiseAbs().maxCoeff();
  note = "max |M - I| = " + sci(d);
  return d < 1e-7;
}

// 3. Local monodromy spectrum. Candidate eigenvalues come from Clebsch-Gordan,
// multiplicities from naive ranks of (R - mu I).
bool spectrum(std::string& note) {
  const auto alg = build_algebra('A', 1);
  const std::vector<std::vector<int>> cases{{1, 1}, {2, 2}, {1, 1, 2}, {2, 2, 2}, {2, 1, 1}};
  double worst = 0.0;
  for (const auto& c : cases)
    for (const Rational& kappa : {Rational(3), Rational(4), frac(7, 2)}) {
      const KZSystem sys = kz_system(alg, a1(c), kappa);
      const std::size_t d = sys.dim();
      for (std::size_t i = 0; i < c.size(); ++i)
        for (std::size_t j = i + 1; j < c.size(); ++j) {
          const RationalMatrix& R = sys.exact_omega(i, j);
          std::vector<std::complex<double>> expected;
          auto cas = [](int m) { return frac(m * (m + 2), 2); };
          for (int nu = std::abs(c[i] - c[j]); nu <= c[i] + c[j]; nu += 2) {
            const Rational mu = (cas(nu) - cas(c[i]) - cas(c[j])) / 2;
            RationalMatrix shifted = R;
            for (std::size_t k = 0; k < d; ++k) shifted(k, k) -= mu;
            const std::size_t mult = d - oracle::naive_rref(shifted).pivots.size();
            for (std::size_t k = 0; k < mult; ++k)
              expected.push_back(std::exp(std::complex<double>(0.0, 2.0 * M_PI * to_double(mu / kappa))));
          }
          if (expected.size() != d) return note = "Omega not diagonalized by Casimir values", false;
          const auto h = braid_monodromy(sys, i, j, default_basepoint(c.size()), 1e-10);
          Eigen::ComplexEigenSolver<ComplexMatrix> es(h.matrix);
          std::vector<std::complex<double>> got(es.eigenvalues().data(), es.eigenvalues().data() + d);
          for (const auto& e : expected) {
            std::size_t best = 0;
            for (std::size_t k = 1; k < got.size(); ++k)
              if (std::abs(got[k] - e) < std::abs(got[best] - e)) best = k;
            worst = std::max(worst, std::abs(got[best] - e));
            got.erase(got.begin() + static_cast<long>(best));
          }
        }
    }
  note = "max eigenvalue deviation " + sci(worst);
  return worst < 1e-6;
}

// 4. Sugawara relations at depth 4.
bool sugawara(std::string& note) {
  std::size_t checks = 0;
  for (int level = 1; level <= 2; ++level)
    for (int m = 0; m <= level; ++m) {
      const auto mod = truncated_module(level, m, 4);
      const auto dims = oracle::affine_sl2_graded_dims(level, m, 4);
      for (std::size_t k = 0; k < dims.size(); ++k)
        if (static_cast<long>(mod.graded_dims[k]) != dims[k]) return note = "graded dims differ from Weyl-Kac", false;
      if (central_charge(mod) != frac(3 * level, level + 2)) return note = "central charge", false;
      if (affine_relations_check(mod).residual != 0 || l0_grading_check(mod).residual != 0) return note = "affine/L0", false;
      for (int p = -4; p <= 4; ++p)
        for (int q = -4; q <= 4; ++q) {
          if (std::abs(p + q) > 4) continue;
          if (virasoro_bracket_check(mod, p, q).residual != 0) return note = "Virasoro bracket", false;
          for (std::size_t x = 0; x < mod.algebra->dim; ++x)
            if (lx_commutator_check(mod, p, x, q).residual != 0) return note = "[L_n, X(k)]", false;
          ++checks;
        }
    }
  note = std::to_string(checks) + " index pairs, residual 0";
  return true;
}

// 5. Symbol identity against a trace-form closed form.
bool symbols(std::string& note) {
  const auto alg = build_algebra('A', 1);
  const auto basis = orthonormal_basis(*alg);
  auto trace_form = [&](const AlgebraVector& x, const AlgebraVector& y) {
    const RationalMatrix p = alg->to_matrix(x) * alg->to_matrix(y);
    Rational t = 0;
    for (std::size_t k = 0; k < p.rows(); ++k) t += p(k, k);
    return t;
  };
  std::mt19937_64 rng(2718);
  for (int trial = 0; trial < 100; ++trial) {
    const auto phi = random_laurent_vector(alg, rng, -4, 4);
    const int m = static_cast<int>(rng() % 7) - 3;
    for (int level = 1; level <= 3; ++level) {
      Rational expected = 0;
      for (const auto& [k, x] : phi.support)
        if (const AlgebraVector* y = phi.coefficient(m - k)) expected += trace_form(x, *y);
      const Rational cocycle = expected;
      expected /= 2 * (level + 2);
      if (residue_side(phi, m, level, basis) != expected || symbol_pairing(phi, m, level) != expected)
        return note = "mismatch at trial " + std::to_string(trial), false;
      if (cocycle_evaluation(phi, m) != cocycle) return note = "cocycle mismatch", false;
    }
  }
  note = "100 trials x 3 levels exact";
  return true;
}

// 6. Verlinde ranks.
bool verlinde(std::string& note) {
  double worst = 0.0;
  std::size_t tuples = 0;
  std::function<bool(std::vector<int>&, int, int, const FusionRing&)> walk = [&](std::vector<int>& t, int n, int top, const FusionRing& ring) {
    if (static_cast<int>(t.size()) == n) {
      const double s = oracle::verlinde_rank(ring.level, t);
      worst = std::max(worst, std::abs(s - std::round(s)));
      ++tuples;
      return rank(ring, t) == std::lround(s) && rank(ring, t) <= oracle::su2_singlets(t);
    }
    for (int a = t.empty() ? 0 : t.back(); a <= top; ++a) {
      t.push_back(a);
      const bool ok = walk(t, n, top, ring);
      t.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int l = 1; l <= 8; ++l) {
    const auto ring = fusion_ring(l);
    for (int n = 0; n <= 6; ++n) {
      std::vector<int> t;
      if (!walk(t, n, std::min(l, 4), ring)) return note = "rank mismatch at level " + std::to_string(l), false;
    }
  }
  // Stabilization: rank reaches dim A at a finite level for every tuple.
  std::vector<int> t;
  std::function<bool(int)> stab = [&](int n) {
    if (static_cast<int>(t.size()) == n) {
      const int lo = t.empty() ? 1 : std::max(1, t.back());
      const auto rep = compare_invariants(lo, t, 1);
      return rep.stabilization_level.has_value() && rep.dim_invariants == oracle::su2_singlets(t);
    }
    for (int a = t.empty() ? 0 : t.back(); a <= 4; ++a) {
      t.push_back(a);
      const bool ok = stab(n);
      t.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  for (int n = 0; n <= 6; ++n)
    if (!stab(n)) return note = "no stabilization", false;
  note = std::to_string(tuples) + " tuples, S-matrix deviation " + sci(worst);
  return worst < 1e-9;
}

// 7. Casimir scalars and Catalan numbers.
bool representations(std::string& note) {
  auto check = [](const AlgebraPtr& alg, const Weight& w) {
    const Irrep rep = irrep(alg, w);
    oracle::W lr(w.begin(), w.end());
    oracle::W two_rho(w.size(), 2);
    for (std::size_t k = 0; k < lr.size(); ++k) two_rho[k] += lr[k];
    const Rational c = oracle::type_a_inner(lr, two_rho);
    const RationalMatrix m = casimir_matrix(rep, orthonormal_basis(*alg));
    for (std::size_t r = 0; r < rep.dim; ++r)
      for (std::size_t s = 0; s < rep.dim; ++s)
        if (m(r, s) != (r == s ? c : Rational(0))) return false;
    return true;
  };
  const auto alg1 = build_algebra('A', 1), alg2 = build_algebra('A', 2);
  for (int m = 0; m <= 8; ++m)
    if (!check(alg1, {m})) return note = "A1 Casimir", false;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      if (weyl_dimension(*alg2, {a, b}) <= 15 && !check(alg2, {a, b})) return note = "A2 Casimir", false;
  // Brute force: weight-zero spin chains of length 2m killed by the raising operator.
  for (int m = 1; m <= 5; ++m) {
    const int n = 2 * m;
    std::map<unsigned, std::size_t> zero, up;
    for (unsigned s = 0; s < (1u << n); ++s) {
      const int ones = __builtin_popcount(s);
      if (ones == m) zero.emplace(s, zero.size());
      if (ones == m + 1) up.emplace(s, up.size());
    }
    RationalMatrix e(up.size(), zero.size());
    for (const auto& [s, col] : zero)
      for (int b = 0; b < n; ++b)
        if (!(s >> b & 1u)) e(up.at(s | (1u << b)), col) += 1;
    const std::size_t brute = zero.size() - oracle::naive_rref(e).pivots.size();
    const auto sys = tensor_system(alg1, std::vector<Weight>(static_cast<std::size_t>(n), Weight{1}));
    if (invariant_basis(sys).dim() != brute) return note = "dim A differs at m = " + std::to_string(m), false;
    long catalan = 1;
    for (int k = 0; k < m; ++k) catalan = catalan * 2 * (2 * k + 1) / (k + 2);
    if (static_cast<long>(brute) != catalan) return note = "Catalan", false;
  }
  note = "Casimir scalar, Catalan 1..42";
  return true;
}

// 8. Byte-identical selftest output.
bool determinism(std::string& note) {
  std::ostringstream a, b, err;
  const int ca = cli::run({"selftest", "--seed", "7"}, a, err);
  const int cb = cli::run({"selftest", "--seed", "7"}, b, err);
  note = std::to_string(a.str().size()) + " bytes";
  return ca == 0 && cb == 0 && a.str() == b.str() && !a.str().empty();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    bool (*run)(std::string&);
  };
  const Criterion criteria[] = {
      {1, "flatness", 60, flatness},         {2, "contractible loop", 10, rectangle},
      {3, "local monodromy", 30, spectrum},  {4, "sugawara/virasoro", 120, sugawara},
      {5, "symbol identity", 5, symbols},    {6, "verlinde", 30, verlinde},
      {7, "representations", 60, representations}, {8, "determinism", 600, determinism},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string note;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget) {
      ok = false;
      note += " (over budget)";
    }
    std::printf("%s criterion %d %s: %s [%.2f s / %.0f s]\n", ok ? "PASS" : "FAIL", c.id, c.name, note.c_str(), secs, c.budget);
    std::fflush(stdout);
    failures += ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
