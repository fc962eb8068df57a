#include "asymm/linalg.hpp"

#include <cmath>
#include <numeric>

#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

namespace asymm {

namespace {

constexpr double kHermitianTol = 1e-10;
constexpr double kPsdClip = 1e-10;

}  // namespace

bool is_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex& z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  return true;
}

void require_finite(const Matrix& m, const std::string& where) {
  if (!is_finite(m))
    throw Error(where + ": matrix has non-finite entries");
}

void require_square(const Matrix& m, const std::string& where) {
  if (m.rows() != m.cols())
    throw DimensionMismatch(where + ": expected a square matrix, got " +
                            std::to_string(m.rows()) + "x" +
                            std::to_string(m.cols()));
}

double hermiticity_defect(const Matrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

void require_hermitian(const Matrix& m, double tol, const std::string& where) {
  require_square(m, where);
  double defect = m.size() == 0 ? 0.0 : hermiticity_defect(m);
  if (defect > tol)
    throw NotHermitian(where + ": Hermiticity defect " + std::to_string(defect) +
                       " exceeds " + std::to_string(tol));
}

HermitianEig hermitian_eig(const Matrix& h) {
  require_square(h, "hermitian_eig");
  require_finite(h, "hermitian_eig");
  require_hermitian(h, kHermitianTol, "hermitian_eig");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(((h + h.adjoint()) * 0.5).eval());
  if (solver.info() != Eigen::Success)
    throw Error("hermitian_eig: eigensolver failed to converge");
  return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

Matrix matrix_power(const Matrix& h, double s) {
  if (s <= 0.0)
    throw InvalidOrder("matrix_power: exponent must be positive, got " +
                       std::to_string(s));
  HermitianEig eig = hermitian_eig(h);
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues[i];
    if (lambda < -kPsdClip)
      throw NotPSD("matrix_power: eigenvalue " + std::to_string(lambda) +
                   " below -1e-10");
    if (lambda < 0.0) lambda = 0.0;
    powered[i] = lambda == 0.0 ? 0.0 : std::pow(lambda, s);
  }
  return eig.eigenvectors * powered.asDiagonal() *
         eig.eigenvectors.adjoint();
}

double trace_norm(const Matrix& m) {
  require_square(m, "trace_norm");
  require_finite(m, "trace_norm");
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double von_neumann_entropy(const Matrix& rho) {
  require_square(rho, "von_neumann_entropy");
  require_finite(rho, "von_neumann_entropy");
  if (hermiticity_defect(rho) > kHermitianTol)
    throw InvalidState("von_neumann_entropy: state is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-9 ||
      std::abs(rho.trace().imag()) > 1e-9)
    throw InvalidState("von_neumann_entropy: trace differs from one");
  HermitianEig eig = hermitian_eig(rho);
  double entropy = 0.0;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    double lambda = eig.eigenvalues[i];
    if (lambda < -kPsdClip)
      throw InvalidState("von_neumann_entropy: eigenvalue " +
                         std::to_string(lambda) + " below -1e-10");
    if (lambda <= 0.0) continue;
    entropy -= lambda * std::log2(lambda);
  }
  return entropy < 0.0 ? 0.0 : entropy;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  return Eigen::kroneckerProduct(a, b);
}

Matrix partial_trace(const Matrix& m, const std::vector<Eigen::Index>& dims,
                     const std::vector<int>& keep) {
  require_square(m, "partial_trace");
  Eigen::Index total = 1;
  for (Eigen::Index d : dims) {
    if (d <= 0) throw DimensionMismatch("partial_trace: nonpositive local dimension");
    total *= d;
  }
  if (total != m.rows())
    throw DimensionMismatch("partial_trace: local dimensions multiply to " +
                            std::to_string(total) + ", matrix has " +
                            std::to_string(m.rows()) + " rows");
  const int n = static_cast<int>(dims.size());
  std::vector<bool> kept(n, false);
  for (size_t k = 0; k < keep.size(); ++k) {
    int idx = keep[k];
    if (idx < 0 || idx >= n || kept[idx])
      throw DimensionMismatch("partial_trace: invalid or repeated keep index");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw DimensionMismatch("partial_trace: keep indices must be ascending");
    kept[idx] = true;
  }

  // Strides for the flat index with the first factor varying slowest.
  std::vector<Eigen::Index> stride(n, 1);
  for (int k = n - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];

  std::vector<int> traced;
  for (int k = 0; k < n; ++k)
    if (!kept[k]) traced.push_back(k);

  Eigen::Index dim_keep = 1;
  for (int k : keep) dim_keep *= dims[k];
  Eigen::Index dim_traced = 1;
  for (int k : traced) dim_traced *= dims[k];

  // Flat offsets of every kept and traced multi-index combination.
  auto offsets = [&](const std::vector<int>& subsystems, Eigen::Index count) {
    std::vector<Eigen::Index> out(count, 0);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rest = flat;
      for (int k = static_cast<int>(subsystems.size()) - 1; k >= 0; --k) {
        int sub = subsystems[k];
        out[flat] += (rest % dims[sub]) * stride[sub];
        rest /= dims[sub];
      }
    }
    return out;
  };
  std::vector<Eigen::Index> keep_offset = offsets(keep, dim_keep);
  std::vector<Eigen::Index> traced_offset = offsets(traced, dim_traced);

  Matrix out = Matrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index a = 0; a < dim_keep; ++a)
    for (Eigen::Index b = 0; b < dim_keep; ++b) {
      Complex sum = 0.0;
      for (Eigen::Index c = 0; c < dim_traced; ++c)
        sum += m(keep_offset[a] + traced_offset[c],
                 keep_offset[b] + traced_offset[c]);
      out(a, b) = sum;
    }
  return out;
}

Matrix unitary_from_generator(const Matrix& l, double theta) {
  require_hermitian(l, kHermitianTol, "unitary_from_generator");
  HermitianEig eig = hermitian_eig(l);
  Vector phases(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i)
    phases[i] = std::exp(Complex(0.0, -theta * eig.eigenvalues[i]));
  return eig.eigenvectors * phases.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace asymm
