#include "kzm/complex_linalg.hpp"

#include <algorithm>
#include <string>

#include "kzm/error.hpp"

namespace kzm {

ComplexMatrix to_complex(const RationalMatrix& m) {
  ComplexMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = Complex(to_double(m(r, c)), 0.0);
  return out;
}

double max_abs(const ComplexMatrix& m) {
  double best = 0.0;
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) best = std::max(best, std::abs(m(r, c)));
  return best;
}

HermitianEigen eig_hermitian_small(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("eig_hermitian_small: matrix is not square");
  if (m.rows() > 512) throw DomainError("eig_hermitian_small: dimension " + std::to_string(m.rows()) + " exceeds 512");
  const double scale = std::max(1.0, max_abs(m));
  const double skew = max_abs(m - m.adjoint());
  if (skew > 1e-10 * scale) {
    throw DomainError("eig_hermitian_small: input is not Hermitian (deviation " + std::to_string(skew) + ")");
  }
  const ComplexMatrix sym = (m + m.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success) throw ConsistencyError("eig_hermitian_small: solver did not converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<Complex> eigenvalues(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("eigenvalues: matrix is not square");
  if (m.rows() == 0) return {};
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw ConsistencyError("eigenvalues: solver did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

ComplexMatrix nullspace_float(const ComplexMatrix& m, double rel_threshold) {
  const Eigen::Index n = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(n, n);
  const double threshold = rel_threshold * std::max(max_abs(m), 1e-300);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  Eigen::Index rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) > threshold) ++rank;
  return svd.matrixV().rightCols(n - rank);
}

}  // namespace kzm
