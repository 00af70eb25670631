#pragma once

#include <Eigen/Dense>
#include <vector>

#include "kzm/matrix.hpp"

namespace kzm {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

ComplexMatrix to_complex(const RationalMatrix& m);

/// Max-norm over entries (modulus).
double max_abs(const ComplexMatrix& m);

struct HermitianEigen {
  Eigen::VectorXd values;  // ascending
  ComplexMatrix vectors;   // unitary, columns are eigenvectors
};

/// Eigen-decomposition of a small Hermitian matrix (dim <= 512). Input that is
/// not Hermitian within 1e-10 * ||M|| raises DomainError.
HermitianEigen eig_hermitian_small(const ComplexMatrix& m);

/// Eigenvalues of a general square complex matrix.
std::vector<Complex> eigenvalues(const ComplexMatrix& m);

/// Orthonormal kernel basis via a rank-revealing SVD. Singular values below
/// rel_threshold * max|m_ij| count as zero.
ComplexMatrix nullspace_float(const ComplexMatrix& m, double rel_threshold = 1e-10);

}  // namespace kzm
