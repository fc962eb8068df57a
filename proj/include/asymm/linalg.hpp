#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "asymm/errors.hpp"

namespace asymm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Eigendecomposition of a Hermitian matrix: H = V diag(w) V^dagger with the
// eigenvalues in ascending order and V unitary. The reconstruction residual
// ||V diag(w) V^dagger - H||_F stays below 1e-10 * max(1, ||H||_F).
struct HermitianEig {
  RealVector eigenvalues;
  Matrix eigenvectors;
};

bool is_finite(const Matrix& m);
void require_finite(const Matrix& m, const std::string& where);
void require_square(const Matrix& m, const std::string& where);

// Largest entrywise deviation |M - M^dagger|.
double hermiticity_defect(const Matrix& m);
void require_hermitian(const Matrix& m, double tol, const std::string& where);

HermitianEig hermitian_eig(const Matrix& h);

// H^s for positive semidefinite H and s > 0. Eigenvalues in [-1e-10, 0) are
// clipped to 0 before exponentiation and zero eigenvalues map to zero; an
// eigenvalue below -1e-10 raises NotPSD.
Matrix matrix_power(const Matrix& h, double s);

// Trace norm: the sum of singular values.
double trace_norm(const Matrix& m);

// Von Neumann entropy in bits (base-2 logarithms). The argument must be a
// valid density matrix; violations raise InvalidState.
double von_neumann_entropy(const Matrix& rho);

// Kronecker product with the first factor varying slowest: index (i, j) of the
// product maps to flat index i * cols(b) + j.
Matrix kron(const Matrix& a, const Matrix& b);

// Partial trace over the subsystems that are absent from `keep`. `dims` lists
// the local dimensions in tensor order (first factor slowest), consistent with
// kron above; `keep` holds the (sorted, unique) indices of retained factors.
// An empty keep set yields the 1x1 matrix [tr(m)].
Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep);

// exp(-i theta L) for Hermitian L, computed by eigendecomposition so that the
// result is unitary to machine precision.
Matrix unitary_from_generator(const Matrix& l, double theta);

}  // namespace asymm
