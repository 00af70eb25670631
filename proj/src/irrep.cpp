#include "kzm/irrep.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>

#include "kzm/error.hpp"

namespace kzm {
namespace {

using Key = std::uint64_t;
using SparseVec = std::map<Key, Rational>;

void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, 0);
    it->second += a * v;
    if (it->second == 0) y.erase(it);
  }
}

// V_lambda sits inside the tensor product of lambda_i copies of the i-th
// fundamental module Lambda^i(C^n). Wedge basis vectors are bitmasks.
class Ambient {
 public:
  Ambient(std::size_t n, const Weight& lambda) : n_(n) {
    for (std::size_t i = 0; i < lambda.size(); ++i)
      for (int c = 0; c < lambda[i]; ++c) factors_.push_back(i + 1);
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<std::uint32_t> masks;
      for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (static_cast<std::size_t>(__builtin_popcount(m)) == k) masks.push_back(m);
      subsets_.push_back(masks);
    }
    radix_.assign(factors_.size(), 0);
    Key stride = 1;
    strides_.assign(factors_.size(), 0);
    for (std::size_t p = factors_.size(); p-- > 0;) {
      radix_[p] = subsets_[factors_[p] - 1].size();
      strides_[p] = stride;
      stride *= radix_[p];
    }
  }

  // Masks are sorted, so e_1 ^ ... ^ e_k (the lowest k-bit mask) has index 0
  // in every factor and the highest-weight pure tensor has key 0.
  SparseVec highest_vector() const { return {{Key{0}, Rational(1)}}; }

  // Leibniz action of the gl_n matrix m.
  SparseVec apply(const RationalMatrix& m, const SparseVec& v) const {
    SparseVec out;
    for (const auto& [key, coef] : v) {
      for (std::size_t p = 0; p < factors_.size(); ++p) {
        const auto& masks = subsets_[factors_[p] - 1];
        const Key idx = (key / strides_[p]) % radix_[p];
        const std::uint32_t s = masks[idx];
        for (std::size_t a = 0; a < n_; ++a)
          for (std::size_t b = 0; b < n_; ++b) {
            if (m(a, b) == 0 || !(s >> b & 1u)) continue;
            if (a == b) {
              accumulate(out, key, coef * m(a, b));
              continue;
            }
            if (s >> a & 1u) continue;
            const std::uint32_t t = (s & ~(1u << b)) | (1u << a);
            const std::uint32_t lo = std::min(a, b), hi = std::max(a, b);
            const std::uint32_t between = s & (((1u << hi) - 1) & ~((1u << (lo + 1)) - 1));
            const int sign = (__builtin_popcount(between) % 2) ? -1 : 1;
            const auto tidx = static_cast<Key>(std::lower_bound(masks.begin(), masks.end(), t) - masks.begin());
            accumulate(out, key - idx * strides_[p] + tidx * strides_[p], coef * m(a, b) * sign);
          }
      }
    }
    return out;
  }

 private:
  static void accumulate(SparseVec& out, Key k, const Rational& v) {
    auto [it, inserted] = out.try_emplace(k, 0);
    it->second += v;
    if (it->second == 0) out.erase(it);
  }

  std::size_t n_;
  std::vector<std::size_t> factors_;
  std::vector<std::vector<std::uint32_t>> subsets_;
  std::vector<Key> radix_;
  std::vector<Key> strides_;
};

// Gauss-Jordan span of vectors sharing one weight; rows stay fully reduced so
// coordinates can be read off in any order.
class WeightSpace {
 public:
  // Returns false when v is already in the span.
  bool add(const SparseVec& v) {
    auto [residual, coeffs] = reduce(v);
    if (residual.empty()) return false;
    const std::size_t local = count_++;
    for (auto& row : rows_) row.coeffs.resize(count_, Rational(0));
    for (auto& c : coeffs) c = -c;
    coeffs.resize(count_, Rational(0));
    coeffs[local] = 1;
    const Key pivot = residual.begin()->first;
    const Rational inv = 1 / residual.begin()->second;
    for (auto& [k, x] : residual) x *= inv;
    for (auto& c : coeffs) c *= inv;
    for (auto& row : rows_) {
      auto it = row.vec.find(pivot);
      if (it == row.vec.end()) continue;
      const Rational f = it->second;
      axpy(row.vec, -f, residual);
      for (std::size_t j = 0; j < count_; ++j) row.coeffs[j] -= f * coeffs[j];
    }
    rows_.push_back({pivot, std::move(residual), std::move(coeffs)});
    return true;
  }

  // Coordinates with respect to the added vectors, in insertion order.
  std::vector<Rational> coordinates(const SparseVec& v) const {
    auto [residual, coeffs] = reduce(v);
    if (!residual.empty()) throw ConsistencyError("irrep: vector escapes its weight space");
    return coeffs;
  }

  std::vector<std::size_t> global;  // local insertion index -> basis index

 private:
  struct Row {
    Key pivot;
    SparseVec vec;
    std::vector<Rational> coeffs;
  };

  std::pair<SparseVec, std::vector<Rational>> reduce(SparseVec w) const {
    std::vector<Rational> c(count_, Rational(0));
    for (const auto& row : rows_) {
      auto it = w.find(row.pivot);
      if (it == w.end()) continue;
      const Rational f = it->second;
      axpy(w, -f, row.vec);
      for (std::size_t j = 0; j < count_; ++j) c[j] += f * row.coeffs[j];
    }
    return {std::move(w), std::move(c)};
  }

  std::size_t count_ = 0;
  std::vector<Row> rows_;
};

}  // namespace

RationalMatrix Irrep::action(const AlgebraVector& x) const {
  if (x.size() != algebra->dim) throw ShapeError("irrep action: algebra vector length mismatch");
  RationalMatrix out(dim, dim);
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0) out += basis_matrices[k] * x[k];
  return out;
}

ComplexMatrix Irrep::float_action(const std::vector<Complex>& x) const {
  if (x.size() != algebra->dim) throw ShapeError("irrep action: algebra vector length mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k] != 0.0) out += x[k] * to_complex(basis_matrices[k]);
  return out;
}

Irrep irrep(const AlgebraPtr& alg, const Weight& lambda) {
  if (lambda.size() != alg->rank) {
    throw DomainError("weight " + to_string(lambda) + " does not have rank " + std::to_string(alg->rank));
  }
  if (!is_dominant(lambda)) throw DomainError("weight " + to_string(lambda) + " is not dominant");

  const std::size_t n = alg->matrix_size();
  const Ambient ambient(n, lambda);
  std::vector<RationalMatrix> mats;
  for (std::size_t k = 0; k < alg->dim; ++k) mats.push_back(alg->to_matrix(alg->unit(k)));

  struct Generated {
    SparseVec vec;
    Weight weight;
    int depth;
    std::size_t local;
  };
  std::vector<Generated> basis;
  std::map<Weight, WeightSpace> spaces;

  auto top = ambient.highest_vector();
  spaces[lambda].add(top);
  spaces[lambda].global.push_back(0);
  basis.push_back({top, lambda, 0, 0});

  std::size_t level_begin = 0;
  for (int d = 0; level_begin < basis.size(); ++d) {
    const std::size_t level_end = basis.size();
    std::vector<Generated> next;
    for (std::size_t j = level_begin; j < level_end; ++j)
      for (std::size_t i = 0; i < alg->rank; ++i) {
        SparseVec w = ambient.apply(mats[alg->f_index[i]], basis[j].vec);
        if (w.empty()) continue;
        Weight wt = basis[j].weight;
        for (std::size_t t = 0; t < alg->rank; ++t) wt[t] -= alg->cartan_matrix[i][t];
        auto& space = spaces[wt];
        if (!space.add(w)) continue;
        next.push_back({std::move(w), wt, d + 1, space.global.size()});
        space.global.push_back(0);
      }
    std::stable_sort(next.begin(), next.end(), [](const Generated& a, const Generated& b) { return a.weight > b.weight; });
    for (auto& g : next) basis.push_back(std::move(g));
    level_begin = level_end;
  }

  Irrep rep;
  rep.algebra = alg;
  rep.highest_weight = lambda;
  rep.dim = basis.size();
  for (std::size_t j = 0; j < basis.size(); ++j) {
    rep.weights.push_back(basis[j].weight);
    rep.depth.push_back(basis[j].depth);
    spaces[basis[j].weight].global[basis[j].local] = j;
  }
  const Integer expected = weyl_dimension(*alg, lambda);
  if (expected != static_cast<unsigned long>(rep.dim)) {
    throw ConsistencyError("irrep " + to_string(lambda) + ": generated dimension " + std::to_string(rep.dim) +
                           " differs from the Weyl dimension " + expected.get_str());
  }

  for (std::size_t k = 0; k < alg->dim; ++k) {
    RationalMatrix m(rep.dim, rep.dim);
    for (std::size_t j = 0; j < rep.dim; ++j) {
      SparseVec w = ambient.apply(mats[k], basis[j].vec);
      if (w.empty()) continue;
      Weight wt = basis[j].weight;
      for (std::size_t t = 0; t < alg->rank; ++t) wt[t] += alg->basis[k].root[t];
      auto it = spaces.find(wt);
      if (it == spaces.end()) throw ConsistencyError("irrep: image has a weight outside the module");
      const auto coords = it->second.coordinates(w);
      for (std::size_t l = 0; l < coords.size(); ++l) m(it->second.global[l], j) = coords[l];
    }
    rep.basis_matrices.push_back(std::move(m));
  }

  // The ambient dot product is contravariant (E_ab^T = E_ba) and restricts to
  // the unique such form on V_lambda.
  rep.contravariant_gram = RationalMatrix(rep.dim, rep.dim);
  for (std::size_t i = 0; i < rep.dim; ++i)
    for (std::size_t j = 0; j < rep.dim; ++j) {
      if (basis[i].weight != basis[j].weight) continue;
      Rational s = 0;
      for (const auto& [key, v] : basis[i].vec) {
        auto it = basis[j].vec.find(key);
        if (it != basis[j].vec.end()) s += v * it->second;
      }
      rep.contravariant_gram(i, j) = s;
    }
  return rep;
}

RationalMatrix casimir_matrix(const Irrep& rep, const OrthonormalBasis& basis) {
  RationalMatrix c(rep.dim, rep.dim);
  for (const auto& el : basis.elements) {
    const RationalMatrix x = rep.action(el.direction);
    c += (x * x) * (1 / el.norm_sq);
  }
  return c;
}

CasimirReport casimir(const Irrep& rep, const OrthonormalBasis& basis) {
  CasimirReport r;
  r.eigenvalue = casimir_value(*rep.algebra, rep.highest_weight);
  const RationalMatrix c = casimir_matrix(rep, basis);
  r.deviation = max_abs(c - RationalMatrix::identity(rep.dim) * r.eigenvalue);
  r.is_scalar = r.deviation == 0;
  return r;
}

CasimirReport casimir(const Irrep& rep) { return casimir(rep, orthonormal_basis(*rep.algebra)); }

FloatCasimirReport casimir_float(const Irrep& rep, const OrthonormalBasis& basis) {
  FloatCasimirReport r;
  const auto n = static_cast<Eigen::Index>(rep.dim);
  r.matrix = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const ComplexMatrix j = rep.float_action(basis.float_element(a));
    r.matrix += j * j;
  }
  r.eigenvalue = to_double(casimir_value(*rep.algebra, rep.highest_weight));
  r.deviation = max_abs(r.matrix - r.eigenvalue * ComplexMatrix::Identity(n, n));
  return r;
}

}  // namespace kzm
