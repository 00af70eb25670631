#include "kzm/symbols.hpp"

#include <algorithm>
#include <cmath>

#include "kzm/error.hpp"

namespace kzm {
namespace {

bool is_zero(const AlgebraVector& x) {
  return std::all_of(x.begin(), x.end(), [](const Rational& v) { return v == 0; });
}

// Scalar Laurent series sum_e c_e xi^e.
template <typename T>
using Laurent = std::map<int, T>;

template <typename T>
T residue(const Laurent<T>& s) {
  auto it = s.find(-1);
  return it == s.end() ? T(0) : it->second;
}

// kappa(phi, y) xi^k as a Laurent series in xi (the dxi is implicit).
Laurent<Rational> pair_with_mode(const LaurentGVector& phi, const AlgebraVector& y, int k) {
  Laurent<Rational> out;
  for (const auto& [j, x] : phi.support) {
    const Rational c = killing_form(*phi.algebra, x, y);
    if (c != 0) out[k - j - 1] += c;
  }
  return out;
}

Laurent<Complex> pair_with_mode(const LaurentGVector& phi, const std::vector<Complex>& y, int k) {
  Laurent<Complex> out;
  for (const auto& [j, x] : phi.support) {
    std::vector<Complex> xc;
    for (const auto& v : x) xc.emplace_back(to_double(v), 0.0);
    const Complex c = killing_form(*phi.algebra, xc, y);
    if (c != Complex(0.0, 0.0)) out[k - j - 1] += c;
  }
  return out;
}

// Mode indices k with a possibly nonzero Res kappa(phi, J xi^k).
std::pair<int, int> mode_window(const LaurentGVector& phi) {
  if (phi.support.empty()) return {0, -1};
  return {phi.support.begin()->first, phi.support.rbegin()->first};
}

// Sum over k of w(k) r_a(k) r_a(m - k) with the L_0 weighting for m = 0.
template <typename T, typename R>
T residue_chain(const LaurentGVector& phi, int m, R&& res) {
  const auto [lo, hi] = mode_window(phi);
  T total(0);
  if (m == 0) {
    total += res(0, 0);
    for (int k = 1; k <= std::max(std::abs(lo), std::abs(hi)); ++k) total += T(2) * res(-k, k);
    return total;
  }
  for (int k = lo; k <= hi; ++k) total += res(k, m - k);
  return total;
}

}  // namespace

LaurentGVector& LaurentGVector::add(int k, const AlgebraVector& x) {
  if (x.size() != algebra->dim) throw ShapeError("Laurent coefficient has the wrong length");
  auto [it, inserted] = support.try_emplace(k, AlgebraVector(algebra->dim, Rational(0)));
  for (std::size_t t = 0; t < x.size(); ++t) it->second[t] += x[t];
  if (is_zero(it->second)) support.erase(it);
  return *this;
}

const AlgebraVector* LaurentGVector::coefficient(int k) const {
  auto it = support.find(k);
  return it == support.end() ? nullptr : &it->second;
}

LaurentGVector LaurentGVector::operator+(const LaurentGVector& other) const {
  LaurentGVector out = *this;
  for (const auto& [k, x] : other.support) out.add(k, x);
  return out;
}

Rational cocycle_evaluation(const LaurentGVector& phi, const LaurentGVector& psi, int n) {
  Rational s = 0;
  for (const auto& [k, x] : phi.support)
    if (const AlgebraVector* y = psi.coefficient(n - k)) s += killing_form(*phi.algebra, x, *y);
  return s;
}

Rational cocycle_evaluation(const LaurentGVector& phi, int n) { return cocycle_evaluation(phi, phi, n); }

Rational cocycle_evaluation(const LaurentGVector& phi, const FormalField& field) { return cocycle_evaluation(phi, field.index); }

Rational symbol_pairing(const LaurentGVector& phi, int m, int level) {
  if (level < 1) throw DomainError("level must be at least 1");
  return cocycle_evaluation(phi, m) / (2 * (level + phi.algebra->dual_coxeter));
}

Rational residue_side(const LaurentGVector& phi, int m, int level, const OrthonormalBasis& basis) {
  if (level < 1) throw DomainError("level must be at least 1");
  Rational total = 0;
  for (const auto& el : basis.elements) {
    // Res kappa(phi, J xi^k) Res kappa(phi, J xi^p) = Res(.., v xi^k) Res(.., v xi^p) / q
    auto res = [&](int k, int p) -> Rational { return residue(pair_with_mode(phi, el.direction, k)) * residue(pair_with_mode(phi, el.direction, p)); };
    total += residue_chain<Rational>(phi, m, res) / el.norm_sq;
  }
  return total / (2 * (level + phi.algebra->dual_coxeter));
}

Complex residue_side_float(const LaurentGVector& phi, int m, int level, const OrthonormalBasis& basis) {
  if (level < 1) throw DomainError("level must be at least 1");
  Complex total = 0;
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const auto j = basis.float_element(a);
    auto res = [&](int k, int p) { return residue(pair_with_mode(phi, j, k)) * residue(pair_with_mode(phi, j, p)); };
    total += residue_chain<Complex>(phi, m, res);
  }
  return total / (2.0 * (level + phi.algebra->dual_coxeter));
}

LaurentGVector random_laurent_vector(const AlgebraPtr& alg, std::mt19937_64& rng, int kmin, int kmax) {
  // Raw engine output only, so draws are identical across standard libraries.
  auto draw = [&](long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1)); };
  LaurentGVector phi{alg, {}};
  const long entries = draw(0, 4);
  for (long e = 0; e < entries; ++e) {
    const int k = static_cast<int>(draw(kmin, kmax));
    AlgebraVector x(alg->dim, Rational(0));
    for (auto& v : x) v = frac(draw(-5, 5), draw(1, 3));
    phi.add(k, x);
  }
  return phi;
}

SymbolTrialReport symbol_trials(std::size_t rank, std::size_t trials, std::uint64_t seed) {
  const auto alg = build_algebra('A', rank);
  const auto basis = orthonormal_basis(*alg);
  std::vector<std::size_t> reversed;
  for (std::size_t k = alg->dim; k-- > 0;) reversed.push_back(k);
  const auto other = orthonormal_basis(*alg, reversed);

  std::mt19937_64 rng(seed);
  SymbolTrialReport rep;
  for (std::size_t t = 0; t < trials; ++t) {
    const LaurentGVector phi = random_laurent_vector(alg, rng, -4, 4);
    const int m = static_cast<int>(rng() % 7) - 3;
    const int level = static_cast<int>(rng() % 3) + 1;
    const Rational lhs = residue_side(phi, m, level, basis);
    const Rational rhs = symbol_pairing(phi, m, level);
    ++rep.trials;
    if (lhs != rhs) ++rep.exact_mismatches;
    if (residue_side(phi, m, level, other) != lhs) ++rep.basis_mismatches;
    if (cocycle_evaluation(phi, m) != 2 * (level + alg->dual_coxeter) * rhs) ++rep.cocycle_mismatches;
    const Complex f = residue_side_float(phi, m, level, basis);
    rep.max_float_deviation = std::max(rep.max_float_deviation, std::abs(f - to_double(rhs)));
  }
  return rep;
}

}  // namespace kzm
