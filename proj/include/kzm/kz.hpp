#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kzm/complex_linalg.hpp"
#include "kzm/invariants.hpp"

namespace kzm {

// KZ connection on the invariant bundle: a section F(z) with values in A_lambda
// is flat when dF/dz_i = A_i(z) F with A_i = (1/kappa) sum_{j != i} Omega_ij / (z_i - z_j).
struct KZSystem {
  ArithmeticMode mode = ArithmeticMode::exact;
  TensorSystemPtr ambient;
  std::optional<InvariantSpace> invariants;             // exact mode
  std::optional<FloatInvariantSpace> float_invariants;  // float mode
  std::vector<Weight> weights;
  std::size_t n = 0;
  Complex kappa;
  std::optional<Rational> exact_kappa;  // set when kappa is a rational number

  // Restricted Omega_ij for i < j, in pair_index order.
  std::vector<RationalMatrix> exact_omegas;  // exact mode only
  std::vector<ComplexMatrix> omegas;

  std::size_t dim() const;
  std::size_t pair_index(std::size_t i, std::size_t j) const;  // symmetric, i != j
  const ComplexMatrix& omega(std::size_t i, std::size_t j) const { return omegas[pair_index(i, j)]; }
  const RationalMatrix& exact_omega(std::size_t i, std::size_t j) const;
};

/// Needs at least two points and kappa != 0 (DomainError otherwise).
KZSystem kz_system(const AlgebraPtr& alg, const std::vector<Weight>& weights, Complex kappa,
                   ArithmeticMode mode = ArithmeticMode::exact);
KZSystem kz_system(const AlgebraPtr& alg, const std::vector<Weight>& weights, const Rational& kappa,
                   ArithmeticMode mode = ArithmeticMode::exact);
/// kappa = level + h^vee, the WZW value.
KZSystem kz_system_at_level(const AlgebraPtr& alg, const std::vector<Weight>& weights, int level,
                            ArithmeticMode mode = ArithmeticMode::exact);

using ConfigPoint = std::vector<Complex>;

/// min_{i<j} |z_i - z_j| (infinity for fewer than two points).
double min_pair_distance(const ConfigPoint& z);

/// A_i(z). Coincident coordinates raise SingularityError naming the pair.
ComplexMatrix connection_matrix(const KZSystem& sys, std::size_t i, const ConfigPoint& z);

struct FlatnessReport {
  ArithmeticMode mode = ArithmeticMode::exact;
  Rational exact_residual;  // exact mode
  double residual = 0.0;    // max |entry| over all commutators (both modes)
  std::size_t relations = 0;
};

/// Infinitesimal pure-braid relations [O_ij, O_ik + O_jk] and [O_ij, O_kl].
FlatnessReport flatness_residual(const KZSystem& sys);

// Piecewise smooth path in configuration space, each piece parameterized by
// t in [0, 1]. An optional ease in (-1, 1) reparameterizes s = t + ease sin(2 pi t) / (2 pi).
struct PathSegment {
  enum class Kind { line, arc };
  Kind kind = Kind::line;
  ConfigPoint from, to;  // line endpoints
  ConfigPoint base;      // arc: every point but the mover stays here
  std::size_t mover = 0;
  Complex center;
  double radius = 0.0, theta0 = 0.0, sweep = 0.0;
  double ease = 0.0;

  ConfigPoint at(double t) const;
  ConfigPoint velocity(double t) const;
  ConfigPoint start() const { return at(0.0); }
  ConfigPoint end() const { return at(1.0); }
  PathSegment reversed() const;
};

class ConfigPath {
 public:
  ConfigPath() = default;
  static ConfigPath line(const ConfigPoint& from, const ConfigPoint& to);
  /// Moves point `mover` of `base` along a circle about `center` through angle `sweep`.
  static ConfigPath arc(const ConfigPoint& base, std::size_t mover, Complex center, double sweep);

  /// Appends `next`; its start must match the current end.
  ConfigPath& then(const ConfigPath& next);
  ConfigPath reversed() const;
  /// Image under z -> c z + b (c != 0).
  ConfigPath transformed(Complex c, Complex b) const;
  ConfigPath eased(double ease) const;

  const std::vector<PathSegment>& segments() const { return segments_; }
  ConfigPoint start() const;
  ConfigPoint end() const;
  bool closed(double tol = 1e-12) const;
  /// Sampled minimum pairwise distance along the whole path.
  double min_distance(std::size_t samples_per_segment = 256) const;
  /// Throws SingularityError when the path touches a diagonal.
  void validate() const;

 private:
  std::vector<PathSegment> segments_;
};

struct HolonomyResult {
  ComplexMatrix matrix;
  double estimated_error = 0.0;
  std::size_t steps_taken = 0;
};

/// Solves dF/dt = (sum_i zdot_i A_i(z(t))) F, F(0) = I. Columns are transported
/// independently on up to KZM_THREADS workers. tol must lie in (0, 1e-2].
HolonomyResult parallel_transport(const KZSystem& sys, const ConfigPath& path, double tol);

/// z_k = k for k = 1..n.
ConfigPoint default_basepoint(std::size_t n);

/// Loop realizing the pure-braid generator A_ij: z_j travels to distance r of
/// z_i, where r is half the distance from z_i to its nearest neighbour, circles
/// z_i once counterclockwise and returns the same way. Obstructed routes detour
/// on the left of the direction from z_i to z_j. Indices are 0-based.
ConfigPath braid_generator_path(const ConfigPoint& basepoint, std::size_t i, std::size_t j);

HolonomyResult braid_monodromy(const KZSystem& sys, std::size_t i, std::size_t j, const ConfigPoint& basepoint, double tol);

/// Parses "A12"-style labels (1-based) into 0-based (i, j).
std::pair<std::size_t, std::size_t> parse_braid_label(const std::string& label, std::size_t n);

struct SpectrumEntry {
  Rational mu;  // eigenvalue of restricted Omega_ij
  std::size_t multiplicity = 0;
  Complex expected;  // exp(2 pi i mu / kappa)
};

struct EigenvalueReport {
  std::size_t i = 0, j = 0;
  std::vector<SpectrumEntry> spectrum;
  std::vector<Complex> observed;  // monodromy eigenvalues, matched to the expanded spectrum
  double max_deviation = 0.0;
  double det_modulus_deviation = 0.0;  // ||det M| - |exp(2 pi i tr R / kappa)||
  HolonomyResult holonomy;
};

/// Exact spectrum of restricted Omega_ij from the Casimir values
/// mu = (c_nu - c_i - c_j) / 2 over nu in V_i (x) V_j; exact mode only.
std::vector<SpectrumEntry> omega_spectrum(const KZSystem& sys, std::size_t i, std::size_t j);

EigenvalueReport eigenvalue_check(const KZSystem& sys, std::size_t i, std::size_t j, double tol,
                                  const ConfigPoint& basepoint = {});

}  // namespace kzm
