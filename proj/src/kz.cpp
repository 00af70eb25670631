#include "kzm/kz.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "kzm/elimination.hpp"
#include "kzm/error.hpp"
#include "kzm/ode.hpp"

namespace kzm {
namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

std::size_t worker_count(std::size_t jobs) {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("KZM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) n = static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::min(n, jobs));
}

double ease_s(double t, double ease) { return t + ease * std::sin(two_pi * t) / two_pi; }
double ease_ds(double t, double ease) { return 1.0 + ease * std::cos(two_pi * t); }

std::string point_text(const ConfigPoint& z) {
  std::ostringstream out;
  out << "(";
  for (std::size_t k = 0; k < z.size(); ++k) out << (k ? ", " : "") << z[k].real() << (z[k].imag() < 0 ? "-" : "+") << std::abs(z[k].imag()) << "i";
  out << ")";
  return out.str();
}

void require_same_size(const ConfigPoint& a, const ConfigPoint& b) {
  if (a.size() != b.size()) throw ShapeError("configuration points have different sizes");
}

}  // namespace

std::size_t KZSystem::dim() const { return omegas.empty() ? (invariants ? invariants->dim() : float_invariants->dim()) : static_cast<std::size_t>(omegas.front().rows()); }

std::size_t KZSystem::pair_index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n || j >= n) throw DomainError("invalid point pair (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
  if (i > j) std::swap(i, j);
  // Row-major enumeration of i < j.
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

const RationalMatrix& KZSystem::exact_omega(std::size_t i, std::size_t j) const {
  if (mode != ArithmeticMode::exact) throw DomainError("exact Omega requested from a float-mode KZ system");
  return exact_omegas[pair_index(i, j)];
}

KZSystem kz_system(const AlgebraPtr& alg, const std::vector<Weight>& weights, Complex kappa, ArithmeticMode mode) {
  if (weights.size() < 2) throw DomainError("the KZ connection needs at least two points");
  if (kappa == Complex(0.0, 0.0)) throw DomainError("kappa must be nonzero");
  KZSystem sys;
  sys.mode = mode;
  sys.ambient = tensor_system(alg, weights);
  sys.weights = weights;
  sys.n = weights.size();
  sys.kappa = kappa;
  const auto basis = orthonormal_basis(*alg);
  if (mode == ArithmeticMode::exact) {
    sys.invariants = invariant_basis(sys.ambient);
  } else {
    sys.float_invariants = invariant_basis_float(sys.ambient);
  }
  for (std::size_t i = 0; i < sys.n; ++i)
    for (std::size_t j = i + 1; j < sys.n; ++j) {
      const TwoSiteOperator op = omega_pair(*sys.ambient, i, j, basis);
      if (mode == ArithmeticMode::exact) {
        sys.exact_omegas.push_back(restrict(op, *sys.invariants));
        sys.omegas.push_back(to_complex(sys.exact_omegas.back()));
      } else {
        sys.omegas.push_back(restrict(op, *sys.float_invariants));
      }
    }
  return sys;
}

KZSystem kz_system(const AlgebraPtr& alg, const std::vector<Weight>& weights, const Rational& kappa, ArithmeticMode mode) {
  if (kappa == 0) throw DomainError("kappa must be nonzero");
  KZSystem sys = kz_system(alg, weights, Complex(to_double(kappa), 0.0), mode);
  sys.exact_kappa = kappa;
  return sys;
}

KZSystem kz_system_at_level(const AlgebraPtr& alg, const std::vector<Weight>& weights, int level, ArithmeticMode mode) {
  if (level < 1) throw DomainError("level must be at least 1");
  return kz_system(alg, weights, Rational(level + alg->dual_coxeter), mode);
}

double min_pair_distance(const ConfigPoint& z) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) best = std::min(best, std::abs(z[i] - z[j]));
  return best;
}

ComplexMatrix connection_matrix(const KZSystem& sys, std::size_t i, const ConfigPoint& z) {
  if (z.size() != sys.n) throw ShapeError("configuration point has " + std::to_string(z.size()) + " coordinates, expected " + std::to_string(sys.n));
  if (i >= sys.n) throw DomainError("point index out of range");
  const auto d = static_cast<Eigen::Index>(sys.dim());
  ComplexMatrix a = ComplexMatrix::Zero(d, d);
  for (std::size_t j = 0; j < sys.n; ++j) {
    if (j == i) continue;
    const Complex diff = z[i] - z[j];
    if (diff == Complex(0.0, 0.0)) {
      throw SingularityError("coincident points z" + std::to_string(std::min(i, j) + 1) + " and z" + std::to_string(std::max(i, j) + 1));
    }
    a += sys.omega(i, j) / (sys.kappa * diff);
  }
  return a;
}

FlatnessReport flatness_residual(const KZSystem& sys) {
  FlatnessReport rep;
  rep.mode = sys.mode;
  rep.exact_residual = 0;
  const bool exact = sys.mode == ArithmeticMode::exact;
  auto record = [&](std::size_t a, std::size_t b, std::optional<std::size_t> c) {
    ++rep.relations;
    if (exact) {
      RationalMatrix rhs = sys.exact_omegas[b];
      if (c) rhs += sys.exact_omegas[*c];
      const Rational r = max_abs(commutator(sys.exact_omegas[a], rhs));
      if (r > rep.exact_residual) rep.exact_residual = r;
      rep.residual = std::max(rep.residual, to_double(r));
    } else {
      ComplexMatrix rhs = sys.omegas[b];
      if (c) rhs += sys.omegas[*c];
      const ComplexMatrix& x = sys.omegas[a];
      rep.residual = std::max(rep.residual, max_abs(ComplexMatrix(x * rhs - rhs * x)));
    }
  };
  const std::size_t n = sys.n;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        if (i < j) record(sys.pair_index(i, j), sys.pair_index(i, k), sys.pair_index(j, k));
      }
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = k + 1; l < n; ++l) {
          if (k == i || k == j || l == i || l == j) continue;
          if (std::make_pair(i, j) < std::make_pair(k, l)) record(sys.pair_index(i, j), sys.pair_index(k, l), std::nullopt);
        }
  return rep;
}

ConfigPoint PathSegment::at(double t) const {
  const double s = ease_s(t, ease);
  if (kind == Kind::line) {
    ConfigPoint z(from.size());
    for (std::size_t k = 0; k < z.size(); ++k) z[k] = from[k] + s * (to[k] - from[k]);
    if (t == 1.0) return to;
    return z;
  }
  ConfigPoint z = base;
  z[mover] = center + radius * std::polar(1.0, theta0 + sweep * s);
  return z;
}

ConfigPoint PathSegment::velocity(double t) const {
  const double ds = ease_ds(t, ease);
  ConfigPoint v(kind == Kind::line ? from.size() : base.size(), Complex(0.0, 0.0));
  if (kind == Kind::line) {
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = ds * (to[k] - from[k]);
  } else {
    const double s = ease_s(t, ease);
    v[mover] = ds * Complex(0.0, sweep) * radius * std::polar(1.0, theta0 + sweep * s);
  }
  return v;
}

PathSegment PathSegment::reversed() const {
  PathSegment r = *this;
  // 1 - s(1 - t) = s(t), so the ease carries over unchanged.
  if (kind == Kind::line) {
    std::swap(r.from, r.to);
  } else {
    r.theta0 = theta0 + sweep;
    r.sweep = -sweep;
  }
  return r;
}

ConfigPath ConfigPath::line(const ConfigPoint& from, const ConfigPoint& to) {
  require_same_size(from, to);
  ConfigPath p;
  PathSegment s;
  s.kind = PathSegment::Kind::line;
  s.from = from;
  s.to = to;
  p.segments_.push_back(std::move(s));
  return p;
}

ConfigPath ConfigPath::arc(const ConfigPoint& base, std::size_t mover, Complex center, double sweep) {
  if (mover >= base.size()) throw DomainError("arc mover index out of range");
  const Complex offset = base[mover] - center;
  if (std::abs(offset) == 0.0) throw DomainError("arc radius is zero");
  ConfigPath p;
  PathSegment s;
  s.kind = PathSegment::Kind::arc;
  s.base = base;
  s.mover = mover;
  s.center = center;
  s.radius = std::abs(offset);
  s.theta0 = std::arg(offset);
  s.sweep = sweep;
  p.segments_.push_back(std::move(s));
  return p;
}

ConfigPoint ConfigPath::start() const {
  if (segments_.empty()) throw DomainError("empty path");
  return segments_.front().start();
}

ConfigPoint ConfigPath::end() const {
  if (segments_.empty()) throw DomainError("empty path");
  return segments_.back().end();
}

ConfigPath& ConfigPath::then(const ConfigPath& next) {
  if (!segments_.empty() && !next.segments_.empty()) {
    const ConfigPoint a = end(), b = next.start();
    require_same_size(a, b);
    double scale = 1.0, gap = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
      scale = std::max(scale, std::abs(a[k]));
      gap = std::max(gap, std::abs(a[k] - b[k]));
    }
    if (gap > 1e-9 * scale) throw DomainError("path segments do not chain: gap " + std::to_string(gap));
  }
  segments_.insert(segments_.end(), next.segments_.begin(), next.segments_.end());
  return *this;
}

ConfigPath ConfigPath::reversed() const {
  ConfigPath r;
  for (auto it = segments_.rbegin(); it != segments_.rend(); ++it) r.segments_.push_back(it->reversed());
  return r;
}

ConfigPath ConfigPath::transformed(Complex c, Complex b) const {
  if (c == Complex(0.0, 0.0)) throw DomainError("transform scale must be nonzero");
  auto map = [&](ConfigPoint z) {
    for (auto& x : z) x = c * x + b;
    return z;
  };
  ConfigPath r;
  for (PathSegment s : segments_) {
    if (s.kind == PathSegment::Kind::line) {
      s.from = map(s.from);
      s.to = map(s.to);
    } else {
      s.base = map(s.base);
      s.center = c * s.center + b;
      s.radius *= std::abs(c);
      s.theta0 += std::arg(c);
    }
    r.segments_.push_back(std::move(s));
  }
  return r;
}

ConfigPath ConfigPath::eased(double ease) const {
  if (!(std::abs(ease) < 1.0)) throw DomainError("ease must lie in (-1, 1)");
  ConfigPath r = *this;
  for (auto& s : r.segments_) s.ease = ease;
  return r;
}

bool ConfigPath::closed(double tol) const {
  const ConfigPoint a = start(), b = end();
  for (std::size_t k = 0; k < a.size(); ++k)
    if (std::abs(a[k] - b[k]) > tol * std::max(1.0, std::abs(a[k]))) return false;
  return true;
}

double ConfigPath::min_distance(std::size_t samples_per_segment) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& s : segments_)
    for (std::size_t k = 0; k <= samples_per_segment; ++k)
      best = std::min(best, min_pair_distance(s.at(static_cast<double>(k) / static_cast<double>(samples_per_segment))));
  return best;
}

void ConfigPath::validate() const {
  if (segments_.empty()) throw DomainError("empty path");
  for (std::size_t k = 0; k < segments_.size(); ++k) {
    double seg_min = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s <= 256; ++s) seg_min = std::min(seg_min, min_pair_distance(segments_[k].at(s / 256.0)));
    if (!(seg_min > 0.0)) {
      throw SingularityError("path segment " + std::to_string(k) + " meets a diagonal (min pairwise distance " + std::to_string(seg_min) + ")");
    }
  }
}

HolonomyResult parallel_transport(const KZSystem& sys, const ConfigPath& path, double tol) {
  if (!(tol > 0.0 && tol <= 1e-2)) throw DomainError("tolerance must lie in (0, 1e-2]");
  path.validate();
  if (path.start().size() != sys.n) throw ShapeError("path has " + std::to_string(path.start().size()) + " points, system has " + std::to_string(sys.n));

  const std::size_t d = sys.dim();
  HolonomyResult result;
  result.matrix = ComplexMatrix::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
  if (d == 0) return result;

  std::vector<ComplexMatrix> scaled;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < sys.n; ++i)
    for (std::size_t j = i + 1; j < sys.n; ++j) {
      scaled.push_back(sys.omega(i, j) / sys.kappa);
      pairs.emplace_back(i, j);
    }

  for (std::size_t seg = 0; seg < path.segments().size(); ++seg) {
    const PathSegment& s = path.segments()[seg];
    const MatrixField field = [&](double t) {
      const ConfigPoint z = s.at(t), v = s.velocity(t);
      ComplexMatrix a = ComplexMatrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        const auto [i, j] = pairs[p];
        const Complex dv = v[i] - v[j];
        if (dv == Complex(0.0, 0.0)) continue;
        a += (dv / (z[i] - z[j])) * scaled[p];
      }
      return a;
    };
    OdeOptions opts;
    opts.tol = tol;
    const double arc_cap = (s.kind == PathSegment::Kind::arc && tol <= 1e-8 && s.sweep != 0.0)
                               ? two_pi / (720.0 * std::abs(s.sweep) * (1.0 + std::abs(s.ease)))
                               : std::numeric_limits<double>::infinity();
    opts.max_step = [&s, arc_cap](double t) {
      const ConfigPoint v = s.velocity(t);
      double speed = 0.0;
      for (const auto& x : v) speed = std::max(speed, std::abs(x));
      const double pole = speed > 0.0 ? 0.1 * min_pair_distance(s.at(t)) / speed : std::numeric_limits<double>::infinity();
      return std::min(pole, arc_cap);
    };

    // Columns do not interact; transporting them separately keeps the result
    // independent of the worker count.
    const ComplexMatrix current = result.matrix;
    std::vector<OdeResult> columns(d);
    std::vector<std::exception_ptr> failures(d);
    const std::size_t workers = worker_count(d);
    auto run = [&](std::size_t w) {
      for (std::size_t c = w; c < d; c += workers) {
        try {
          columns[c] = ode_transport(field, 0.0, 1.0, current.col(static_cast<Eigen::Index>(c)), opts);
        } catch (...) {
          failures[c] = std::current_exception();
        }
      }
    };
    if (workers == 1) {
      run(0);
    } else {
      std::vector<std::thread> pool;
      for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
      for (auto& t : pool) t.join();
    }
    for (std::size_t c = 0; c < d; ++c) {
      if (!failures[c]) continue;
      try {
        std::rethrow_exception(failures[c]);
      } catch (const StepUnderflowError& e) {
        throw SingularityError("transport stalled on segment " + std::to_string(seg) + " near a diagonal at t=" + std::to_string(e.t()) +
                               " (min pairwise distance " + std::to_string(min_pair_distance(s.at(e.t()))) + ")");
      }
    }
    double seg_err = 0.0;
    std::size_t seg_steps = 0;
    for (std::size_t c = 0; c < d; ++c) {
      result.matrix.col(static_cast<Eigen::Index>(c)) = columns[c].value;
      seg_err = std::max(seg_err, columns[c].estimated_error);
      seg_steps = std::max(seg_steps, columns[c].steps_taken);
    }
    result.estimated_error += seg_err;
    result.steps_taken += seg_steps;
  }
  return result;
}

ConfigPoint default_basepoint(std::size_t n) {
  ConfigPoint z;
  for (std::size_t k = 1; k <= n; ++k) z.emplace_back(static_cast<double>(k), 0.0);
  return z;
}

ConfigPath braid_generator_path(const ConfigPoint& z, std::size_t i, std::size_t j) {
  const std::size_t n = z.size();
  if (i == j || i >= n || j >= n) throw DomainError("braid generator needs two distinct point indices below " + std::to_string(n));
  if (!(min_pair_distance(z) > 0.0)) throw SingularityError("basepoint " + point_text(z) + " has coincident points");

  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < n; ++k)
    if (k != i) nearest = std::min(nearest, std::abs(z[k] - z[i]));
  const double r = nearest / 2.0;
  const Complex u = (z[j] - z[i]) / std::abs(z[j] - z[i]);
  const Complex w = Complex(0.0, 1.0) * u;
  const Complex target = z[i] + r * u;

  double clearance = r;
  for (std::size_t k = 0; k < n; ++k)
    if (k != j && k != i) clearance = std::min(clearance, std::abs(z[k] - z[j]));
  clearance /= 2.0;

  // Mover distance to the stationary points along a polyline.
  auto route_clearance = [&](const std::vector<Complex>& corners) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c + 1 < corners.size(); ++c)
      for (std::size_t k = 0; k < n; ++k) {
        if (k == j) continue;
        const Complex a = corners[c], b = corners[c + 1];
        const double len2 = std::norm(b - a);
        double s = len2 > 0.0 ? std::real(std::conj(b - a) * (z[k] - a)) / len2 : 0.0;
        s = std::clamp(s, 0.0, 1.0);
        best = std::min(best, std::abs(z[k] - (a + s * (b - a))));
      }
    return best;
  };

  std::vector<Complex> corners;
  if (route_clearance({z[j], target}) >= clearance) {
    corners = {z[j], target};
  } else {
    for (double height = r; height < 1e6 * (nearest + std::abs(z[j] - z[i])); height *= 2.0) {
      std::vector<Complex> cand = {z[j], z[j] + height * w, target + height * w, target};
      if (route_clearance(cand) >= clearance) {
        corners = std::move(cand);
        break;
      }
    }
    if (corners.empty()) throw SingularityError("no clear route for z" + std::to_string(j + 1) + " around z" + std::to_string(i + 1));
  }

  ConfigPath approach;
  ConfigPoint current = z;
  for (std::size_t c = 0; c + 1 < corners.size(); ++c) {
    ConfigPoint next = current;
    next[j] = corners[c + 1];
    approach.then(ConfigPath::line(current, next));
    current = next;
  }
  ConfigPath loop = approach;
  loop.then(ConfigPath::arc(current, j, z[i], two_pi));
  loop.then(approach.reversed());
  return loop;
}

HolonomyResult braid_monodromy(const KZSystem& sys, std::size_t i, std::size_t j, const ConfigPoint& basepoint, double tol) {
  const ConfigPoint z = basepoint.empty() ? default_basepoint(sys.n) : basepoint;
  if (z.size() != sys.n) throw ShapeError("basepoint has " + std::to_string(z.size()) + " points, system has " + std::to_string(sys.n));
  return parallel_transport(sys, braid_generator_path(z, i, j), tol);
}

std::pair<std::size_t, std::size_t> parse_braid_label(const std::string& label, std::size_t n) {
  auto fail = [&]() -> std::pair<std::size_t, std::size_t> {
    throw DomainError("braid generator '" + label + "' is not of the form A<i><j> with 1 <= i != j <= " + std::to_string(n));
  };
  if (label.size() < 3 || (label[0] != 'A' && label[0] != 'a')) return fail();
  std::string digits = label.substr(1);
  std::size_t i = 0, j = 0;
  const auto comma = digits.find(',');
  try {
    if (comma != std::string::npos) {
      i = std::stoul(digits.substr(0, comma));
      j = std::stoul(digits.substr(comma + 1));
    } else if (digits.size() == 2 && std::isdigit(static_cast<unsigned char>(digits[0])) && std::isdigit(static_cast<unsigned char>(digits[1]))) {
      i = static_cast<std::size_t>(digits[0] - '0');
      j = static_cast<std::size_t>(digits[1] - '0');
    } else {
      return fail();
    }
  } catch (const std::logic_error&) {
    return fail();
  }
  if (i < 1 || j < 1 || i > n || j > n || i == j) return fail();
  return {i - 1, j - 1};
}

std::vector<SpectrumEntry> omega_spectrum(const KZSystem& sys, std::size_t i, std::size_t j) {
  const RationalMatrix& r = sys.exact_omega(i, j);
  const auto& alg = *sys.ambient->algebra;
  const auto& vi = *sys.ambient->factors[i];
  const auto& vj = *sys.ambient->factors[j];
  const Rational ci = casimir_value(alg, vi.highest_weight), cj = casimir_value(alg, vj.highest_weight);

  std::set<Rational> candidates;
  for (const auto& mu : vj.weights) {
    Weight nu = vi.highest_weight;
    for (std::size_t t = 0; t < nu.size(); ++t) nu[t] += mu[t];
    if (is_dominant(nu)) candidates.insert((casimir_value(alg, nu) - ci - cj) / 2);
  }
  std::vector<SpectrumEntry> out;
  std::size_t total = 0;
  const std::size_t d = r.rows();
  for (const auto& mu : candidates) {
    const std::size_t mult = d - rank_exact(r - RationalMatrix::identity(d) * mu);
    if (mult == 0) continue;
    SpectrumEntry e;
    e.mu = mu;
    e.multiplicity = mult;
    e.expected = std::exp(Complex(0.0, two_pi) * to_double(mu) / sys.kappa);
    out.push_back(e);
    total += mult;
  }
  if (total != d) throw ConsistencyError("restricted Omega spectrum accounts for " + std::to_string(total) + " of " + std::to_string(d) + " dimensions");
  return out;
}

EigenvalueReport eigenvalue_check(const KZSystem& sys, std::size_t i, std::size_t j, double tol, const ConfigPoint& basepoint) {
  EigenvalueReport rep;
  rep.i = i;
  rep.j = j;
  rep.spectrum = omega_spectrum(sys, i, j);
  rep.holonomy = braid_monodromy(sys, i, j, basepoint, tol);
  const std::size_t d = sys.dim();
  if (d == 0) return rep;

  std::vector<Complex> expected;
  Rational trace = 0;
  for (const auto& e : rep.spectrum) {
    for (std::size_t k = 0; k < e.multiplicity; ++k) expected.push_back(e.expected);
    trace += e.mu * static_cast<long>(e.multiplicity);
  }
  std::vector<Complex> observed = eigenvalues(rep.holonomy.matrix);
  std::vector<bool> used(observed.size(), false);
  for (const auto& x : expected) {
    std::size_t best = 0;
    double dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < observed.size(); ++k)
      if (!used[k] && std::abs(observed[k] - x) < dist) {
        dist = std::abs(observed[k] - x);
        best = k;
      }
    used[best] = true;
    rep.observed.push_back(observed[best]);
    rep.max_deviation = std::max(rep.max_deviation, dist);
  }
  const Complex det = rep.holonomy.matrix.determinant();
  const double expected_modulus = std::abs(std::exp(Complex(0.0, two_pi) * to_double(trace) / sys.kappa));
  rep.det_modulus_deviation = std::abs(std::abs(det) - expected_modulus);
  return rep;
}

}  // namespace kzm
