#pragma once

#include <cstddef>
#include <functional>

#include "kzm/complex_linalg.hpp"
#include "kzm/error.hpp"

namespace kzm {

// Linear matrix ODE dF/dt = A(t) F, integrated with the Dormand-Prince 5(4)
// embedded pair and a PI step-size controller.

using MatrixField = std::function<ComplexMatrix(double t)>;

struct OdeOptions {
  double tol = 1e-8;
  // Upper bound on |h| at time t; unbounded when empty.
  std::function<double(double t)> max_step;
  double min_step_fraction = 1e-13;  // underflow threshold relative to |t1 - t0|
};

struct OdeResult {
  ComplexMatrix value;
  double estimated_error = 0.0;  // sum of accepted local error estimates
  std::size_t steps_taken = 0;
  std::size_t steps_rejected = 0;
};

class StepUnderflowError : public SingularityError {
 public:
  StepUnderflowError(double t, double h)
      : SingularityError("step size underflow at t=" + std::to_string(t) + " (h=" + std::to_string(h) + ")"), t_(t) {}
  double t() const { return t_; }

 private:
  double t_;
};

/// Local error per accepted step is held below tol * |h| / |t1 - t0| (scaled by
/// max(1, |F|)), so the accumulated estimate stays near tol. t1 < t0 is allowed.
OdeResult ode_transport(const MatrixField& field, double t0, double t1, const ComplexMatrix& f0, const OdeOptions& options);

/// Fixed-step Dormand-Prince (fifth-order solution), used for order checks.
ComplexMatrix ode_fixed_steps(const MatrixField& field, double t0, double t1, const ComplexMatrix& f0, std::size_t steps);

}  // namespace kzm
