#include "kzm/invariants.hpp"

#include <algorithm>
#include <map>

#include "kzm/elimination.hpp"
#include "kzm/error.hpp"

namespace kzm {
namespace {

struct Entry {
  std::size_t row;
  Rational value;
};

// Nonzeros of m grouped by column.
std::vector<std::vector<Entry>> by_column(const RationalMatrix& m) {
  std::vector<std::vector<Entry>> cols(m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c)
      if (m(r, c) != 0) cols[c].push_back({r, m(r, c)});
  return cols;
}

std::vector<std::size_t> zero_weight_indices(const TensorSystem& sys) {
  std::vector<std::size_t> out;
  for (std::size_t idx = 0; idx < sys.dim; ++idx) {
    const Weight w = sys.weight(idx);
    if (std::all_of(w.begin(), w.end(), [](int x) { return x == 0; })) out.push_back(idx);
  }
  return out;
}

// Rows: images of the zero-weight vectors under every diagonal e_i and f_i.
SparseOperator<Rational> invariance_constraints(const TensorSystem& sys, const std::vector<std::size_t>& zero) {
  const auto& alg = *sys.algebra;
  std::vector<SparseOperator<Rational>::Triplet> triplets;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> row_of;
  std::vector<std::size_t> generators;
  for (std::size_t i = 0; i < alg.rank; ++i) {
    generators.push_back(alg.e_index[i]);
    generators.push_back(alg.f_index[i]);
  }
  for (std::size_t g = 0; g < generators.size(); ++g) {
    std::vector<std::vector<std::vector<Entry>>> cols;
    for (const auto& f : sys.factors) cols.push_back(by_column(f->basis_matrices[generators[g]]));
    for (std::size_t z = 0; z < zero.size(); ++z) {
      const std::size_t idx = zero[z];
      for (std::size_t p = 0; p < sys.size(); ++p) {
        const std::size_t s = sys.slot(idx, p);
        for (const auto& e : cols[p][s]) {
          const std::size_t target = idx - s * sys.strides[p] + e.row * sys.strides[p];
          auto [it, inserted] = row_of.try_emplace({g, target}, row_of.size());
          triplets.push_back({it->second, z, e.value});
        }
      }
    }
  }
  return SparseOperator<Rational>(row_of.size(), zero.size(), std::move(triplets));
}

}  // namespace

std::vector<std::size_t> TensorSystem::slots(std::size_t idx) const {
  std::vector<std::size_t> out(size());
  for (std::size_t p = 0; p < size(); ++p) out[p] = slot(idx, p);
  return out;
}

std::size_t TensorSystem::index(const std::vector<std::size_t>& s) const {
  if (s.size() != size()) throw ShapeError("tensor index has wrong number of slots");
  std::size_t idx = 0;
  for (std::size_t p = 0; p < size(); ++p) {
    if (s[p] >= factors[p]->dim) throw ShapeError("tensor slot out of range");
    idx += s[p] * strides[p];
  }
  return idx;
}

Weight TensorSystem::weight(std::size_t idx) const {
  Weight w(algebra->rank, 0);
  for (std::size_t p = 0; p < size(); ++p) {
    const Weight& wp = factors[p]->weights[slot(idx, p)];
    for (std::size_t t = 0; t < w.size(); ++t) w[t] += wp[t];
  }
  return w;
}

TensorSystemPtr tensor_system(std::vector<IrrepPtr> reps) {
  if (reps.empty()) throw DomainError("tensor system needs at least one factor");
  auto sys = std::make_shared<TensorSystem>();
  sys->algebra = reps.front()->algebra;
  for (const auto& r : reps) {
    if (r->algebra->series != sys->algebra->series || r->algebra->rank != sys->algebra->rank) {
      throw DomainError("tensor factors are defined over different Lie algebras");
    }
  }
  sys->factors = std::move(reps);
  sys->strides.assign(sys->size(), 1);
  std::size_t stride = 1;
  for (std::size_t p = sys->size(); p-- > 0;) {
    sys->strides[p] = stride;
    stride *= sys->factors[p]->dim;
  }
  sys->dim = stride;
  return sys;
}

TensorSystemPtr tensor_system(const AlgebraPtr& alg, const std::vector<Weight>& weights) {
  std::map<Weight, IrrepPtr> cache;
  std::vector<IrrepPtr> reps;
  for (const auto& w : weights) {
    auto it = cache.find(w);
    if (it == cache.end()) it = cache.emplace(w, std::make_shared<const Irrep>(irrep(alg, w))).first;
    reps.push_back(it->second);
  }
  return tensor_system(std::move(reps));
}

InvariantSpace invariant_basis(const TensorSystemPtr& sys) {
  const auto zero = zero_weight_indices(*sys);
  const Kernel kernel = kernel_exact(invariance_constraints(*sys, zero));
  InvariantSpace inv;
  inv.ambient = sys;
  inv.basis = RationalMatrix(sys->dim, kernel.basis.cols());
  for (std::size_t z = 0; z < zero.size(); ++z)
    for (std::size_t k = 0; k < kernel.basis.cols(); ++k) inv.basis(zero[z], k) = kernel.basis(z, k);
  for (auto f : kernel.free_columns) inv.pivot_rows.push_back(zero[f]);
  return inv;
}

FloatInvariantSpace invariant_basis_float(const TensorSystemPtr& sys) {
  const auto zero = zero_weight_indices(*sys);
  const auto constraints = invariance_constraints(*sys, zero);
  const ComplexMatrix dense = to_complex(constraints.densify());
  const ComplexMatrix kernel = nullspace_float(dense);
  FloatInvariantSpace inv;
  inv.ambient = sys;
  inv.basis = ComplexMatrix::Zero(static_cast<Eigen::Index>(sys->dim), kernel.cols());
  for (std::size_t z = 0; z < zero.size(); ++z) inv.basis.row(static_cast<Eigen::Index>(zero[z])) = kernel.row(static_cast<Eigen::Index>(z));
  return inv;
}

Integer invariant_dimension_count(const TensorSystem& sys) {
  const auto& alg = *sys.algebra;
  std::map<Weight, Integer> mult{{Weight(alg.rank, 0), Integer(1)}};
  for (const auto& f : sys.factors) {
    std::map<Weight, Integer> next;
    for (const auto& [w, m] : mult)
      for (const auto& fw : f->weights) {
        Weight s = w;
        for (std::size_t t = 0; t < s.size(); ++t) s[t] += fw[t];
        next[s] += m;
      }
    mult = std::move(next);
  }

  // The orbit of rho is regular, so orbit points label Weyl group elements and
  // BFS distance is the length.
  std::map<Weight, int> sign{{alg.weyl_vector, 1}};
  std::vector<Weight> frontier{alg.weyl_vector};
  while (!frontier.empty()) {
    std::vector<Weight> next;
    for (const auto& w : frontier)
      for (std::size_t i = 0; i < alg.rank; ++i) {
        Weight r = w;
        for (std::size_t t = 0; t < r.size(); ++t) r[t] -= w[i] * alg.cartan_matrix[i][t];
        if (sign.emplace(r, -sign[w]).second) next.push_back(r);
      }
    frontier = std::move(next);
  }

  Integer total = 0;
  for (const auto& [w, s] : sign) {
    Weight shift = alg.weyl_vector;
    for (std::size_t t = 0; t < shift.size(); ++t) shift[t] -= w[t];
    auto it = mult.find(shift);
    if (it != mult.end()) total += s * it->second;
  }
  return total;
}

SparseOperator<Rational> diagonal_action(const TensorSystem& sys, const AlgebraVector& x) {
  std::vector<std::vector<std::vector<Entry>>> cols;
  for (const auto& f : sys.factors) cols.push_back(by_column(f->action(x)));
  std::vector<SparseOperator<Rational>::Triplet> triplets;
  for (std::size_t idx = 0; idx < sys.dim; ++idx)
    for (std::size_t p = 0; p < sys.size(); ++p) {
      const std::size_t s = sys.slot(idx, p);
      for (const auto& e : cols[p][s]) triplets.push_back({idx - s * sys.strides[p] + e.row * sys.strides[p], idx, e.value});
    }
  return SparseOperator<Rational>(sys.dim, sys.dim, std::move(triplets));
}

TwoSiteOperator omega_pair(const TensorSystem& sys, std::size_t i, std::size_t j, const OrthonormalBasis& basis) {
  if (i >= sys.size() || j >= sys.size()) throw DomainError("omega_pair: factor index out of range");
  if (i == j) throw DomainError("omega_pair: Omega_ij needs distinct factors (got i = j = " + std::to_string(i) + ")");
  const Irrep& ri = *sys.factors[i];
  const Irrep& rj = *sys.factors[j];
  RationalMatrix block(ri.dim * rj.dim, ri.dim * rj.dim);
  for (const auto& el : basis.elements) {
    block += kronecker(ri.action(el.direction), rj.action(el.direction)) * (1 / el.norm_sq);
  }
  const auto cols = by_column(block);
  std::vector<SparseOperator<Rational>::Triplet> triplets;
  for (std::size_t idx = 0; idx < sys.dim; ++idx) {
    const std::size_t si = sys.slot(idx, i), sj = sys.slot(idx, j);
    const std::size_t base = idx - si * sys.strides[i] - sj * sys.strides[j];
    for (const auto& e : cols[si * rj.dim + sj]) {
      const std::size_t ti = e.row / rj.dim, tj = e.row % rj.dim;
      triplets.push_back({base + ti * sys.strides[i] + tj * sys.strides[j], idx, e.value});
    }
  }
  TwoSiteOperator op;
  op.i = i;
  op.j = j;
  op.matrix = SparseOperator<Rational>(sys.dim, sys.dim, std::move(triplets));
  return op;
}

TwoSiteOperator omega_pair(const TensorSystem& sys, std::size_t i, std::size_t j) {
  return omega_pair(sys, i, j, orthonormal_basis(*sys.algebra));
}

RationalMatrix restrict(const TwoSiteOperator& op, const InvariantSpace& inv) {
  if (op.matrix.rows() != inv.ambient->dim) throw ShapeError("restrict: operator and invariant space disagree on the ambient");
  const RationalMatrix image = op.matrix.apply(inv.basis);
  RationalMatrix r(inv.dim(), inv.dim());
  for (std::size_t k = 0; k < inv.dim(); ++k)
    for (std::size_t c = 0; c < inv.dim(); ++c) r(k, c) = image(inv.pivot_rows[k], c);
  if (!(inv.basis * r == image)) {
    throw ConsistencyError("restrict: Omega_" + std::to_string(op.i + 1) + std::to_string(op.j + 1) +
                           " does not preserve the invariant subspace");
  }
  return r;
}

ComplexMatrix restrict(const TwoSiteOperator& op, const FloatInvariantSpace& inv) {
  if (op.matrix.rows() != inv.ambient->dim) throw ShapeError("restrict: operator and invariant space disagree on the ambient");
  ComplexMatrix image = ComplexMatrix::Zero(inv.basis.rows(), inv.basis.cols());
  double omega_norm = 0.0;
  for (std::size_t row = 0; row < op.matrix.rows(); ++row) {
    op.matrix.for_each_in_row(row, [&](std::size_t c, const Rational& v) {
      const double x = to_double(v);
      omega_norm = std::max(omega_norm, std::abs(x));
      image.row(static_cast<Eigen::Index>(row)) += x * inv.basis.row(static_cast<Eigen::Index>(c));
    });
  }
  const ComplexMatrix r = inv.basis.adjoint() * image;
  const double residual = max_abs(image - inv.basis * r);
  if (residual > 1e-9 * std::max(1.0, omega_norm)) {
    throw ConsistencyError("restrict: float residual " + std::to_string(residual) + " exceeds tolerance");
  }
  return r;
}

SparseOperator<Rational> slot_swap(const TensorSystem& sys, std::size_t i, std::size_t j) {
  if (i >= sys.size() || j >= sys.size()) throw DomainError("slot_swap: factor index out of range");
  if (sys.factors[i]->highest_weight != sys.factors[j]->highest_weight) throw DomainError("slot_swap: factors differ");
  std::vector<SparseOperator<Rational>::Triplet> triplets;
  for (std::size_t idx = 0; idx < sys.dim; ++idx) {
    auto s = sys.slots(idx);
    std::swap(s[i], s[j]);
    triplets.push_back({sys.index(s), idx, Rational(1)});
  }
  return SparseOperator<Rational>(sys.dim, sys.dim, std::move(triplets));
}

}  // namespace kzm
