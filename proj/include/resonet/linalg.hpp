// linalg.hpp — Small dense linear-algebra kernels used by the analytic path

#pragma once

#include <Eigen/Dense>

namespace resonet::linalg {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct SymmetricEigen {
    RealVector values;   // unsorted, as produced by the sweeps
    RealMatrix vectors;  // columns are eigenvectors
    int sweeps = 0;
};

// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius norm
// drops below 1e-13 * ||A||_F; throws NumericalError after max_sweeps.
SymmetricEigen jacobi_eigen(const RealMatrix& a, int max_sweeps = 100);

// exp(A) by scaling and squaring with a fixed-order Taylor kernel
// (||A / 2^s||_1 <= 0.5, degree 16).
ComplexMatrix expm(const ComplexMatrix& a);

// exp(A) - I without forming exp(A) first, so tiny arguments keep full
// relative accuracy. Uses (e^A - I) for A/2^s then E <- E^2 + 2E per squaring.
ComplexMatrix expm_minus_identity(const ComplexMatrix& a);

double max_abs(const RealMatrix& a);
double max_abs(const ComplexMatrix& a);

} // namespace resonet::linalg
