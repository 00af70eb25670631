#include "kzm/verlinde.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "kzm/error.hpp"
#include "kzm/invariants.hpp"

namespace kzm {
namespace {

void check_labels(int level, const std::vector<int>& labels) {
  for (int a : labels)
    if (a < 0 || a > level)
      throw DomainError("label " + std::to_string(a) + " is not a level " + std::to_string(level) + " weight");
}

int admissible(int level, int a, int b, int c) {
  return std::abs(a - b) <= c && c <= std::min(a + b, 2 * level - a - b) && (a + b + c) % 2 == 0;
}

}  // namespace

int FusionRing::N(int a, int b, int c) const {
  const int s = level + 1;
  if (a < 0 || b < 0 || c < 0 || a > level || b > level || c > level) throw DomainError("fusion label out of range");
  return coeffs[static_cast<std::size_t>((a * s + b) * s + c)];
}

std::vector<std::vector<double>> s_matrix(int level) {
  if (level < 1) throw DomainError("level must be at least 1");
  const int s = level + 1;
  const double k = level + 2;
  std::vector<std::vector<double>> S(s, std::vector<double>(s));
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) S[a][b] = std::sqrt(2.0 / k) * std::sin(std::numbers::pi * (a + 1) * (b + 1) / k);
  return S;
}

double verlinde_coefficient(int level, int a, int b, int c) {
  check_labels(level, {a, b, c});
  const auto S = s_matrix(level);
  double n = 0.0;
  for (int x = 0; x <= level; ++x) n += S[a][x] * S[b][x] * S[c][x] / S[0][x];
  return n;
}

FusionRing fusion_ring(int level) {
  if (level < 1) throw DomainError("level must be at least 1");
  FusionRing ring;
  ring.level = level;
  const int s = level + 1;
  for (int a = 0; a < s; ++a) ring.labels.push_back(a);
  ring.coeffs.resize(static_cast<std::size_t>(s * s * s));
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b)
      for (int c = 0; c < s; ++c) {
        const int n = admissible(level, a, b, c);
        ring.coeffs[static_cast<std::size_t>((a * s + b) * s + c)] = n;
        const double v = verlinde_coefficient(level, a, b, c);
        const double dev = std::abs(v - n);
        ring.max_deviation = std::max(ring.max_deviation, dev);
        if (dev >= 1e-9)
          throw ConsistencyError("fusion coefficient N_" + std::to_string(a) + std::to_string(b) + "^" + std::to_string(c) +
                                 " disagrees with the S-matrix value " + std::to_string(v));
      }
  return ring;
}

long rank(const FusionRing& ring, const std::vector<int>& labels, int genus) {
  if (genus != 0) throw DomainError("only genus 0 is supported");
  check_labels(ring.level, labels);
  const int s = ring.level + 1;
  std::vector<long> v(s, 0);
  v[0] = 1;
  for (int a : labels) {
    std::vector<long> w(s, 0);
    for (int b = 0; b < s; ++b)
      if (v[b] != 0)
        for (int c = 0; c < s; ++c) w[c] += v[b] * ring.N(b, a, c);
    v = std::move(w);
  }
  return v[0];
}

double s_matrix_rank(int level, const std::vector<int>& labels) {
  check_labels(level, labels);
  const auto S = s_matrix(level);
  const int n = static_cast<int>(labels.size());
  double total = 0.0;
  for (int x = 0; x <= level; ++x) {
    double t = std::pow(S[0][x], 2 - n);
    for (int a : labels) t *= S[a][x];
    total += t;
  }
  return total;
}

InjectionReport compare_invariants(int level, const std::vector<int>& labels, int scan_levels) {
  if (level < 1) throw DomainError("level must be at least 1");
  if (scan_levels < 1) throw DomainError("scan_levels must be at least 1");
  check_labels(level, labels);

  InjectionReport rep;
  rep.level = level;
  if (labels.empty()) {
    rep.dim_invariants = 1;
  } else {
    const auto alg = build_algebra('A', 1);
    std::vector<Weight> weights;
    for (int a : labels) weights.push_back({a});
    rep.dim_invariants = invariant_dimension_count(*tensor_system(alg, weights)).get_si();
  }

  // rank = dim A once 2l >= sum of labels, so the scan always has an end.
  int sum = 0;
  for (int a : labels) sum += a;
  const int last = std::max(level + scan_levels - 1, (sum + 1) / 2);
  long previous = 0;
  for (int l = level; l <= last; ++l) {
    const long r = rank(fusion_ring(l), labels);
    if (r > rep.dim_invariants)
      throw ViolationError("rank " + std::to_string(r) + " at level " + std::to_string(l) + " exceeds dim A = " +
                           std::to_string(rep.dim_invariants));
    if (r < previous) throw ViolationError("rank drops from level " + std::to_string(l - 1) + " to " + std::to_string(l));
    previous = r;
    rep.ranks_by_level.emplace_back(l, r);
    if (l == level) rep.rank = r;
    if (r == rep.dim_invariants && !rep.stabilization_level) rep.stabilization_level = l;
  }
  rep.equal = rep.rank == rep.dim_invariants;
  return rep;
}

}  // namespace kzm
