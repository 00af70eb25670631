#include "kzm/sugawara.hpp"

#include <algorithm>
#include <functional>

#include "kzm/elimination.hpp"
#include "kzm/error.hpp"
#include "kzm/irrep.hpp"

namespace kzm {
namespace {

// Negative mode X(-n) stored as (n, generator position in PBW order).
using Mode = std::pair<int, int>;

struct Key {
  std::vector<Mode> modes;  // n descending, generator ascending within equal n
  int top = 0;              // basis index in V_lambda
  auto operator<=>(const Key&) const = default;
};

using Vec = std::map<Key, Rational>;

void axpy(Vec& y, const Rational& a, const Vec& x) {
  if (a == 0) return;
  for (const auto& [k, v] : x) {
    auto [it, inserted] = y.try_emplace(k, 0);
    it->second += a * v;
    if (it->second == 0) y.erase(it);
  }
}

// Mode algebra of the induced module. Generators are relabelled 0..dim-1 in
// PBW order; structure constants come from the finite algebra.
class InducedModule {
 public:
  InducedModule(const AlgebraPtr& alg, int level, const Irrep& top) : alg_(alg), level_(level), top_(top) {
    const std::size_t d = alg->dim;
    for (std::size_t k = 0; k < d; ++k) order_.push_back(k);
    // Negative root vectors, then the Cartan part, then positive root vectors.
    auto sign = [&](std::size_t k) {
      const auto& e = alg->basis[k];
      return e.is_cartan ? 0 : (e.a < e.b ? 1 : -1);
    };
    std::stable_sort(order_.begin(), order_.end(), [&](std::size_t a, std::size_t b) { return sign(a) < sign(b); });
    position_.assign(d, 0);
    for (std::size_t p = 0; p < d; ++p) position_[order_[p]] = static_cast<int>(p);

    bracket_.assign(d, std::vector<std::vector<std::pair<int, Rational>>>(d));
    kappa_.assign(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        const auto br = alg->bracket(alg->unit(order_[a]), alg->unit(order_[b]));
        for (std::size_t c = 0; c < d; ++c)
          if (br[c] != 0) bracket_[a][b].emplace_back(position_[c], br[c]);
        kappa_[a][b] = alg->gram_matrix(order_[a], order_[b]);
      }
    // Contravariant anti-involution: E_ab -> E_ba, h -> h.
    omega_.assign(d, 0);
    for (std::size_t k = 0; k < d; ++k) {
      const auto& el = alg->basis[k];
      std::size_t image = k;
      if (!el.is_cartan)
        for (std::size_t t = 0; t < d; ++t)
          if (!alg->basis[t].is_cartan && alg->basis[t].a == el.b && alg->basis[t].b == el.a) image = t;
      omega_[static_cast<std::size_t>(position_[k])] = position_[image];
    }
  }

  const std::vector<std::size_t>& order() const { return order_; }
  int position(std::size_t basis_index) const { return position_[basis_index]; }

  // X(p) applied to a PBW monomial, in normal form.
  const Vec& apply(int x, int p, const Key& key) {
    const auto memo_key = std::make_tuple(x, p, key);
    if (auto it = memo_.find(memo_key); it != memo_.end()) return it->second;
    Vec out;
    if (p < 0 && (key.modes.empty() || precedes({-p, x}, key.modes.front()))) {
      Key k = key;
      k.modes.insert(k.modes.begin(), {-p, x});
      out.emplace(std::move(k), 1);
    } else if (key.modes.empty()) {
      if (p == 0) {
        const RationalMatrix& m = top_.basis_matrices[order_[static_cast<std::size_t>(x)]];
        for (std::size_t r = 0; r < m.rows(); ++r)
          if (m(r, static_cast<std::size_t>(key.top)) != 0) out.emplace(Key{{}, static_cast<int>(r)}, m(r, static_cast<std::size_t>(key.top)));
      }
    } else {
      // X(p) Y(-n) R = Y(-n) X(p) R + [X(p), Y(-n)] R
      const Mode first = key.modes.front();
      Key rest = key;
      rest.modes.erase(rest.modes.begin());
      const Vec inner = apply(x, p, rest);
      for (const auto& [k, v] : inner) axpy(out, v, apply(first.second, -first.first, k));
      const int q = -first.first;
      for (const auto& [c, coef] : bracket_[static_cast<std::size_t>(x)][static_cast<std::size_t>(first.second)]) axpy(out, coef, apply(c, p + q, rest));
      if (p + q == 0) {
        const Rational central = kappa_[static_cast<std::size_t>(x)][static_cast<std::size_t>(first.second)] * p * level_;
        if (central != 0) axpy(out, central, Vec{{rest, Rational(1)}});
      }
    }
    return memo_.emplace(memo_key, std::move(out)).first->second;
  }

  int omega(int x) const { return omega_[static_cast<std::size_t>(x)]; }
  std::size_t dim() const { return order_.size(); }

 private:
  static bool precedes(const Mode& a, const Mode& b) { return a.first > b.first || (a.first == b.first && a.second <= b.second); }

  AlgebraPtr alg_;
  int level_;
  const Irrep& top_;
  std::vector<std::size_t> order_;
  std::vector<int> position_;
  std::vector<std::vector<std::vector<std::pair<int, Rational>>>> bracket_;
  std::vector<std::vector<Rational>> kappa_;
  std::vector<int> omega_;
  std::map<std::tuple<int, int, Key>, Vec> memo_;
};

// PBW monomials of degree k, modes in canonical order, then the V_lambda index.
std::vector<Key> monomials(int k, int generators, int top_dim) {
  std::vector<Key> out;
  std::vector<Mode> current;
  std::function<void(int, Mode)> rec = [&](int remaining, Mode bound) {
    if (remaining == 0) {
      for (int s = 0; s < top_dim; ++s) out.push_back({current, s});
      return;
    }
    for (int n = std::min(remaining, bound.first); n >= 1; --n)
      for (int g = (n == bound.first ? bound.second : 0); g < generators; ++g) {
        current.push_back({n, g});
        rec(remaining - n, {n, g});
        current.pop_back();
      }
  };
  rec(k, {k, 0});
  return out;
}

}  // namespace

const RationalMatrix* TruncatedModule::mode(std::size_t x, int n, int source) const {
  auto it = modes.find({x, n, source});
  return it == modes.end() ? nullptr : &it->second;
}

TruncatedModule truncated_module(int level, int m, int depth, int max_depth) {
  if (level < 1) throw DomainError("level must be at least 1");
  if (m < 0 || m > level) {
    throw DomainError("weight " + std::to_string(m) + " is not integrable at level " + std::to_string(level) + " (need 0 <= m <= level)");
  }
  if (depth < 0 || depth > max_depth) {
    throw DomainError("depth " + std::to_string(depth) + " outside [0, " + std::to_string(max_depth) + "]");
  }
  TruncatedModule mod;
  mod.algebra = build_algebra('A', 1);
  mod.level = level;
  mod.weight = m;
  mod.depth = depth;
  const Irrep top = irrep(mod.algebra, {m});
  InducedModule induced(mod.algebra, level, top);
  mod.generators = induced.order();
  const int gens = static_cast<int>(induced.dim());

  std::vector<std::vector<Key>> basis(static_cast<std::size_t>(depth) + 1);
  std::vector<std::map<Key, std::size_t>> index(basis.size());
  std::vector<RationalMatrix> gram(basis.size());
  std::vector<std::vector<std::size_t>> kept(basis.size());
  std::vector<RationalMatrix> projection(basis.size());

  for (int k = 0; k <= depth; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    basis[uk] = monomials(k, gens, static_cast<int>(top.dim));
    for (std::size_t t = 0; t < basis[uk].size(); ++t) index[uk][basis[uk][t]] = t;
    const std::size_t n = basis[uk].size();
    RationalMatrix g(n, n);
    if (k == 0) {
      g = top.contravariant_gram;
    } else {
      // <Y(-n) R, t> = <R, omega(Y)(n) t>
      for (std::size_t s = 0; s < n; ++s) {
        const Key& key = basis[uk][s];
        const Mode first = key.modes.front();
        Key rest = key;
        rest.modes.erase(rest.modes.begin());
        const auto lower = static_cast<std::size_t>(k - first.first);
        const std::size_t r = index[lower].at(rest);
        for (std::size_t t = s; t < n; ++t) {
          Rational v = 0;
          for (const auto& [u, c] : induced.apply(induced.omega(first.second), first.first, basis[uk][t])) v += c * gram[lower](r, index[lower].at(u));
          g(s, t) = v;
          g(t, s) = v;
        }
      }
    }
    gram[uk] = g;
    kept[uk] = independent_columns(g);
    const std::size_t b = kept[uk].size();
    RationalMatrix gbb(b, b), gb(b, n);
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) gbb(i, j) = g(kept[uk][i], kept[uk][j]);
      for (std::size_t j = 0; j < n; ++j) gb(i, j) = g(kept[uk][i], j);
    }
    projection[uk] = inverse_exact(gbb) * gb;
    mod.verma_dims.push_back(n);
    mod.graded_dims.push_back(b);
    mod.shapovalov_gram.push_back(gbb);
  }

  for (int xi = 0; xi < gens; ++xi)
    for (int p = -depth; p <= depth; ++p)
      for (int k = 0; k <= depth; ++k) {
        const int target = k - p;
        if (target < 0 || target > depth) continue;
        const auto uk = static_cast<std::size_t>(k), ut = static_cast<std::size_t>(target);
        RationalMatrix raw(basis[ut].size(), kept[uk].size());
        for (std::size_t c = 0; c < kept[uk].size(); ++c)
          for (const auto& [key, v] : induced.apply(xi, p, basis[uk][kept[uk][c]])) raw(index[ut].at(key), c) = v;
        mod.modes.emplace(std::make_tuple(mod.generators[static_cast<std::size_t>(xi)], p, k), projection[ut] * raw);
      }
  return mod;
}

Rational central_charge(const TruncatedModule& mod) {
  return Rational(mod.level * static_cast<long>(mod.algebra->dim)) / (mod.level + mod.algebra->dual_coxeter);
}

Rational conformal_weight(const TruncatedModule& mod) {
  return casimir_value(*mod.algebra, {mod.weight}) / (2 * (mod.level + mod.algebra->dual_coxeter));
}

VirasoroOperator ln_operator(const TruncatedModule& mod, int n) {
  const auto& alg = *mod.algebra;
  const int d = mod.depth;
  if (n < -d || n > d) throw DomainError("|n| must not exceed the truncation depth " + std::to_string(d));
  const RationalMatrix ginv = inverse_exact(alg.gram_matrix);
  const Rational norm = Rational(1) / (2 * (mod.level + alg.dual_coxeter));

  VirasoroOperator op;
  op.index = n;
  op.blocks.resize(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    const int target = k - n;
    if (target < 0 || target > d) continue;
    RationalMatrix block(mod.graded_dims[static_cast<std::size_t>(target)], mod.graded_dims[static_cast<std::size_t>(k)]);
    // Normal ordered pairs x(n - q) x(q) with q >= n - q acting first; q > k annihilates.
    for (int q = (n >= 0 ? (n + 1) / 2 : -((-n) / 2)); q <= k; ++q) {
      const int p = n - q;
      const Rational mult = (p == q) ? Rational(1) : Rational(2);
      for (std::size_t b = 0; b < alg.dim; ++b)
        for (std::size_t c = 0; c < alg.dim; ++c) {
          if (ginv(b, c) == 0) continue;
          const RationalMatrix* right = mod.mode(c, q, k);
          const RationalMatrix* left = mod.mode(b, p, k - q);
          if (!right || !left) throw ConsistencyError("Sugawara term leaves the truncation");
          block += (*left * *right) * (mult * ginv(b, c));
        }
    }
    op.blocks[static_cast<std::size_t>(k)] = block * norm;
  }
  return op;
}

namespace {

void record(CheckResult& r, const RationalMatrix& m) {
  const Rational v = max_abs(m);
  if (v > r.residual) r.residual = v;
  ++r.blocks_checked;
}

bool in_range(const TruncatedModule& mod, std::initializer_list<int> degrees) {
  return std::all_of(degrees.begin(), degrees.end(), [&](int x) { return x >= 0 && x <= mod.depth; });
}

}  // namespace

CheckResult affine_relations_check(const TruncatedModule& mod) {
  CheckResult r;
  r.residual = 0;
  const auto& alg = *mod.algebra;
  const int d = mod.depth;
  for (std::size_t x = 0; x < alg.dim; ++x)
    for (std::size_t y = 0; y < alg.dim; ++y) {
      const auto br = alg.bracket(alg.unit(x), alg.unit(y));
      for (int p = -d; p <= d; ++p)
        for (int q = -d; q <= d; ++q)
          for (int k = 0; k <= d; ++k) {
            if (!in_range(mod, {k, k - q, k - p, k - p - q})) continue;
            RationalMatrix lhs = *mod.mode(x, p, k - q) * *mod.mode(y, q, k) - *mod.mode(y, q, k - p) * *mod.mode(x, p, k);
            for (std::size_t c = 0; c < alg.dim; ++c)
              if (br[c] != 0) lhs -= *mod.mode(c, p + q, k) * br[c];
            if (p + q == 0) lhs -= RationalMatrix::identity(lhs.rows()) * (alg.gram_matrix(x, y) * p * mod.level);
            record(r, lhs);
          }
    }
  return r;
}

CheckResult virasoro_bracket_check(const TruncatedModule& mod, int p, int q) {
  CheckResult r;
  r.residual = 0;
  const int d = mod.depth;
  if (std::abs(p) > d || std::abs(q) > d || std::abs(p + q) > d) throw DomainError("Virasoro indices exceed the truncation depth");
  const auto lp = ln_operator(mod, p), lq = ln_operator(mod, q), lpq = ln_operator(mod, p + q);
  const Rational central = (p + q == 0) ? frac(p * p * p - p, 12) * central_charge(mod) : Rational(0);
  for (int k = 0; k <= d; ++k) {
    if (!in_range(mod, {k, k - q, k - p, k - p - q})) continue;
    const auto uk = static_cast<std::size_t>(k);
    RationalMatrix lhs = *lp.blocks[static_cast<std::size_t>(k - q)] * *lq.blocks[uk] - *lq.blocks[static_cast<std::size_t>(k - p)] * *lp.blocks[uk];
    lhs -= *lpq.blocks[uk] * Rational(p - q);
    if (central != 0) lhs -= RationalMatrix::identity(lhs.rows()) * central;
    record(r, lhs);
  }
  return r;
}

CheckResult lx_commutator_check(const TruncatedModule& mod, int n, std::size_t x, int k) {
  CheckResult r;
  r.residual = 0;
  const int d = mod.depth;
  if (x >= mod.algebra->dim) throw DomainError("generator index out of range");
  if (std::abs(n) > d || std::abs(k) > d || std::abs(n + k) > d) throw DomainError("mode indices exceed the truncation depth");
  const auto ln = ln_operator(mod, n);
  for (int s = 0; s <= d; ++s) {
    if (!in_range(mod, {s, s - k, s - n, s - n - k})) continue;
    RationalMatrix lhs = *ln.blocks[static_cast<std::size_t>(s - k)] * *mod.mode(x, k, s) - *mod.mode(x, k, s - n) * *ln.blocks[static_cast<std::size_t>(s)];
    lhs += *mod.mode(x, n + k, s) * Rational(k);
    record(r, lhs);
  }
  return r;
}

CheckResult l0_grading_check(const TruncatedModule& mod) {
  CheckResult r;
  r.residual = 0;
  const auto l0 = ln_operator(mod, 0);
  const Rational delta = conformal_weight(mod);
  for (int k = 0; k <= mod.depth; ++k) {
    const RationalMatrix& b = *l0.blocks[static_cast<std::size_t>(k)];
    record(r, b - RationalMatrix::identity(b.rows()) * (delta + k));
  }
  return r;
}

}  // namespace kzm
