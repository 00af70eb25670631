#include "kzm/ode.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace kzm {
namespace {

constexpr std::array<double, 7> c = {0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0};
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
// Fifth-order weights (also row 7 of the tableau, FSAL).
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0, b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Difference between fifth- and fourth-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0, e5 = -17253.0 / 339200.0,
                 e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

struct Step {
  ComplexMatrix y;
  ComplexMatrix k7;
  ComplexMatrix err;
};

Step dopri_step(const MatrixField& field, double t, double h, const ComplexMatrix& y, const ComplexMatrix& k1) {
  const ComplexMatrix k2 = field(t + c[1] * h) * (y + h * (a21 * k1));
  const ComplexMatrix k3 = field(t + c[2] * h) * (y + h * (a31 * k1 + a32 * k2));
  const ComplexMatrix k4 = field(t + c[3] * h) * (y + h * (a41 * k1 + a42 * k2 + a43 * k3));
  const ComplexMatrix k5 = field(t + c[4] * h) * (y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
  const ComplexMatrix k6 = field(t + c[5] * h) * (y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
  Step s;
  s.y = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
  s.k7 = field(t + h) * s.y;
  s.err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * s.k7);
  return s;
}

}  // namespace

OdeResult ode_transport(const MatrixField& field, double t0, double t1, const ComplexMatrix& f0, const OdeOptions& options) {
  OdeResult result;
  result.value = f0;
  const double span = std::abs(t1 - t0);
  if (span == 0.0) return result;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double min_step = options.min_step_fraction * span;

  auto cap = [&](double t, double h) {
    h = std::min(h, std::abs(t1 - t));
    if (options.max_step) h = std::min(h, options.max_step(t));
    return h;
  };

  double t = t0;
  ComplexMatrix y = f0;
  ComplexMatrix k1 = field(t) * y;
  double h = cap(t, span / 16.0);
  double prev_ratio = 1.0;
  constexpr double alpha = 0.7 / 5.0;
  constexpr double beta = 0.4 / 5.0;

  while (dir * (t1 - t) > 0.0) {
    h = cap(t, h);
    if (h < min_step && std::abs(t1 - t) > min_step) throw StepUnderflowError(t, h);
    const Step s = dopri_step(field, t, dir * h, y, k1);
    const double scale = std::max(1.0, max_abs(s.y));
    const double err = max_abs(s.err);
    const double allowed = options.tol * (h / span) * scale;
    const double ratio = std::isfinite(err) && std::isfinite(scale) ? std::max(err / allowed, 1e-10) : 1e10;
    if (ratio <= 1.0) {
      t = (std::abs(t1 - (t + dir * h)) <= 1e-15 * span) ? t1 : t + dir * h;
      y = s.y;
      k1 = s.k7;
      result.estimated_error += err;
      ++result.steps_taken;
      double factor = 0.9 * std::pow(ratio, -alpha) * std::pow(prev_ratio, beta);
      h *= std::clamp(factor, 0.2, 5.0);
      prev_ratio = ratio;
    } else {
      ++result.steps_rejected;
      h *= std::clamp(0.9 * std::pow(ratio, -0.2), 0.1, 0.9);
    }
  }
  result.value = y;
  return result;
}

ComplexMatrix ode_fixed_steps(const MatrixField& field, double t0, double t1, const ComplexMatrix& f0, std::size_t steps) {
  const double h = (t1 - t0) / static_cast<double>(steps);
  ComplexMatrix y = f0;
  ComplexMatrix k1 = field(t0) * y;
  for (std::size_t k = 0; k < steps; ++k) {
    const Step s = dopri_step(field, t0 + static_cast<double>(k) * h, h, y, k1);
    y = s.y;
    k1 = s.k7;
  }
  return y;
}

}  // namespace kzm
