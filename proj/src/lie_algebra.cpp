#include "kzm/lie_algebra.hpp"

#include <algorithm>
#include <functional>

#include "kzm/elimination.hpp"
#include "kzm/error.hpp"

namespace kzm {

std::string to_string(const Weight& w) {
  std::string out = "(";
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ",";
    out += std::to_string(w[k]);
  }
  return out + ")";
}

RationalMatrix LieAlgebraData::to_matrix(const AlgebraVector& x) const {
  if (x.size() != dim) throw ShapeError("algebra vector has length " + std::to_string(x.size()) + ", expected " + std::to_string(dim));
  RationalMatrix m(matrix_size(), matrix_size());
  for (std::size_t k = 0; k < dim; ++k) {
    if (x[k] == 0) continue;
    const auto& el = basis[k];
    if (el.is_cartan) {
      m(el.a, el.a) += x[k];
      m(el.a + 1, el.a + 1) -= x[k];
    } else {
      m(el.a, el.b) += x[k];
    }
  }
  return m;
}

AlgebraVector LieAlgebraData::from_matrix(const RationalMatrix& m) const {
  const std::size_t n = matrix_size();
  if (m.rows() != n || m.cols() != n) throw ShapeError("from_matrix: expected " + std::to_string(n) + "x" + std::to_string(n));
  AlgebraVector x(dim, Rational(0));
  Rational trace = 0;
  for (std::size_t k = 0; k < dim; ++k) {
    const auto& el = basis[k];
    if (!el.is_cartan) x[k] = m(el.a, el.b);
  }
  Rational running = 0;
  for (std::size_t k = 0; k < rank; ++k) {
    running += m(k, k);
    x[h_index[k]] = running;
  }
  for (std::size_t k = 0; k < n; ++k) trace += m(k, k);
  if (trace != 0) throw DomainError("from_matrix: matrix is not traceless");
  return x;
}

AlgebraVector LieAlgebraData::bracket(const AlgebraVector& x, const AlgebraVector& y) const {
  return from_matrix(commutator(to_matrix(x), to_matrix(y)));
}

AlgebraVector LieAlgebraData::unit(std::size_t k) const {
  AlgebraVector x(dim, Rational(0));
  x.at(k) = 1;
  return x;
}

Rational LieAlgebraData::weight_pairing(const Weight& lambda, const Weight& mu) const {
  if (lambda.size() != rank || mu.size() != rank) throw ShapeError("weight has wrong rank");
  Rational s = 0;
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j)
      if (lambda[i] != 0 && mu[j] != 0) s += weight_form(i, j) * lambda[i] * mu[j];
  return s;
}

Rational LieAlgebraData::coroot_pairing(const Weight& lambda, const Weight& root) const {
  return 2 * weight_pairing(lambda, root) / weight_pairing(root, root);
}

AlgebraPtr build_algebra(char series, std::size_t rank) {
  if (series != 'A') {
    throw ConfigurationError(std::string("unsupported Lie algebra series '") + series + "'; supported series: A");
  }
  if (rank == 0) throw DomainError("rank must be at least 1");

  auto alg = std::make_shared<LieAlgebraData>();
  alg->series = series;
  alg->rank = rank;
  const std::size_t n = rank + 1;
  alg->dim = n * n - 1;
  alg->dual_coxeter = static_cast<int>(n);

  alg->cartan_matrix.assign(rank, std::vector<int>(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) {
    alg->cartan_matrix[i][i] = 2;
    if (i + 1 < rank) alg->cartan_matrix[i][i + 1] = alg->cartan_matrix[i + 1][i] = -1;
  }

  // alpha_a + ... + alpha_{b-1} in weight coordinates (rows of the Cartan matrix).
  auto root_of = [&](std::size_t a, std::size_t b) {
    Weight w(rank, 0);
    for (std::size_t s = a; s < b; ++s)
      for (std::size_t t = 0; t < rank; ++t) w[t] += alg->cartan_matrix[s][t];
    return w;
  };
  auto negate = [](Weight w) {
    for (auto& x : w) x = -x;
    return w;
  };

  std::vector<std::pair<std::size_t, std::size_t>> positive;
  for (std::size_t height = 1; height <= rank; ++height)
    for (std::size_t a = 0; a + height <= rank; ++a) positive.emplace_back(a, a + height);

  auto label = [](const char* p, std::size_t a, std::size_t b) {
    return std::string(p) + std::to_string(a + 1) + std::to_string(b + 1);
  };
  for (auto [a, b] : positive) {
    alg->basis.push_back({label("E", a, b), false, a, b, root_of(a, b)});
    alg->positive_roots.push_back(root_of(a, b));
  }
  for (auto [a, b] : positive) alg->basis.push_back({label("E", b, a), false, b, a, negate(root_of(a, b))});
  for (std::size_t k = 0; k < rank; ++k) alg->basis.push_back({"h" + std::to_string(k + 1), true, k, k, Weight(rank, 0)});

  const std::size_t npos = positive.size();
  for (std::size_t i = 0; i < rank; ++i) {
    alg->e_index.push_back(i);  // simple roots come first (height 1)
    alg->f_index.push_back(npos + i);
    alg->h_index.push_back(2 * npos + i);
  }
  alg->highest_root = root_of(0, rank);
  alg->weyl_vector.assign(rank, 1);

  alg->gram_matrix = RationalMatrix(alg->dim, alg->dim);
  std::vector<RationalMatrix> mats;
  for (std::size_t k = 0; k < alg->dim; ++k) mats.push_back(alg->to_matrix(alg->unit(k)));
  for (std::size_t p = 0; p < alg->dim; ++p)
    for (std::size_t q = 0; q < alg->dim; ++q) {
      Rational tr = 0;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) tr += mats[p](a, b) * mats[q](b, a);
      alg->gram_matrix(p, q) = tr;
    }

  RationalMatrix cartan(rank, rank);
  for (std::size_t i = 0; i < rank; ++i)
    for (std::size_t j = 0; j < rank; ++j) cartan(i, j) = alg->cartan_matrix[i][j];
  alg->weight_form = inverse_exact(cartan);
  return alg;
}

Rational killing_form(const LieAlgebraData& alg, const AlgebraVector& x, const AlgebraVector& y) {
  if (x.size() != alg.dim || y.size() != alg.dim) throw ShapeError("killing_form: vectors must have length " + std::to_string(alg.dim));
  Rational s = 0;
  for (std::size_t p = 0; p < alg.dim; ++p) {
    if (x[p] == 0) continue;
    for (std::size_t q = 0; q < alg.dim; ++q)
      if (y[q] != 0 && alg.gram_matrix(p, q) != 0) s += x[p] * alg.gram_matrix(p, q) * y[q];
  }
  return s;
}

Complex killing_form(const LieAlgebraData& alg, const std::vector<Complex>& x, const std::vector<Complex>& y) {
  if (x.size() != alg.dim || y.size() != alg.dim) throw ShapeError("killing_form: vectors must have length " + std::to_string(alg.dim));
  Complex s = 0;
  for (std::size_t p = 0; p < alg.dim; ++p)
    for (std::size_t q = 0; q < alg.dim; ++q)
      if (alg.gram_matrix(p, q) != 0) s += x[p] * to_double(alg.gram_matrix(p, q)) * y[q];
  return s;
}

std::vector<Complex> OrthonormalBasis::float_element(std::size_t a) const {
  const auto& el = elements.at(a);
  const Complex scale = 1.0 / std::sqrt(Complex(to_double(el.norm_sq), 0.0));
  std::vector<Complex> out;
  out.reserve(el.direction.size());
  for (const auto& x : el.direction) out.push_back(scale * to_double(x));
  return out;
}

RationalMatrix OrthonormalBasis::direction_gram(const LieAlgebraData& alg) const {
  RationalMatrix g(size(), size());
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = 0; b < size(); ++b) g(a, b) = killing_form(alg, elements[a].direction, elements[b].direction);
  return g;
}

Rational OrthonormalBasis::contract(const LieAlgebraData& alg, const AlgebraVector& x, const AlgebraVector& y) const {
  Rational s = 0;
  for (const auto& el : elements) s += killing_form(alg, x, el.direction) * killing_form(alg, y, el.direction) / el.norm_sq;
  return s;
}

OrthonormalBasis orthonormal_basis(const LieAlgebraData& alg, std::vector<std::size_t> seed_order) {
  if (seed_order.empty()) {
    for (std::size_t k = 0; k < alg.dim; ++k) seed_order.push_back(k);
  }
  {
    auto sorted = seed_order;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t k = 0; k < sorted.size(); ++k)
      if (sorted.size() != alg.dim || sorted[k] != k) throw DomainError("seed order must be a permutation of the basis indices");
  }

  auto axpy = [](AlgebraVector& y, const Rational& a, const AlgebraVector& x) {
    for (std::size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
  };

  OrthonormalBasis out;
  std::vector<AlgebraVector> pending;
  for (auto k : seed_order) pending.push_back(alg.unit(k));

  while (!pending.empty()) {
    for (auto& v : pending)
      for (const auto& el : out.elements) {
        const Rational c = killing_form(alg, v, el.direction) / el.norm_sq;
        if (c != 0) axpy(v, -c, el.direction);
      }
    AlgebraVector v = pending.front();
    pending.erase(pending.begin());
    Rational q = killing_form(alg, v, v);
    if (q == 0) {
      bool fixed = false;
      for (const auto& w : pending) {
        const Rational b = killing_form(alg, v, w);
        if (b == 0) continue;
        const Rational c = killing_form(alg, w, w);
        axpy(v, (2 * b + c != 0) ? Rational(1) : Rational(-1), w);
        q = killing_form(alg, v, v);
        fixed = true;
        break;
      }
      if (!fixed || q == 0) throw ConsistencyError("orthonormal_basis: invariant form is degenerate");
    }
    out.elements.push_back({std::move(v), q});
  }
  return out;
}

bool is_dominant(const Weight& w) {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

std::vector<Weight> level_weights(const LieAlgebraData& alg, int level) {
  if (level < 1) throw DomainError("level must be at least 1");
  std::vector<Weight> out;
  Weight w(alg.rank, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == alg.rank) {
      if (alg.weight_pairing(w, alg.highest_root) <= level) out.push_back(w);
      return;
    }
    for (int m = 0; m <= level; ++m) {
      w[i] = m;
      rec(i + 1);
    }
    w[i] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const Weight& a, const Weight& b) {
    const Rational la = alg.weight_pairing(a, alg.highest_root);
    const Rational lb = alg.weight_pairing(b, alg.highest_root);
    if (la != lb) return la < lb;
    return a > b;
  });
  return out;
}

Rational casimir_value(const LieAlgebraData& alg, const Weight& lambda) {
  Weight shifted = lambda;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += 2 * alg.weyl_vector[i];
  return alg.weight_pairing(lambda, shifted);
}

Integer weyl_dimension(const LieAlgebraData& alg, const Weight& lambda) {
  Rational d = 1;
  Weight shifted = lambda;
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] += alg.weyl_vector[i];
  for (const auto& root : alg.positive_roots) d *= alg.coroot_pairing(shifted, root) / alg.coroot_pairing(alg.weyl_vector, root);
  if (d.get_den() != 1) throw ConsistencyError("Weyl dimension is not an integer");
  return d.get_num();
}

}  // namespace kzm
