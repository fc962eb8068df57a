#include "asymm/sampling.hpp"

#include <cmath>

namespace asymm {

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

Matrix random_complex_gaussian(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, M_SQRT1_2);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      double re = gauss(rng);
      double im = gauss(rng);
      m(i, j) = Complex(re, im);
    }
  return m;
}

Matrix random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  Matrix g = random_complex_gaussian(dim, dim, rng);
  return (g + g.adjoint()) * 0.5;
}

Matrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  Matrix g = random_complex_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fixing the phases of R's diagonal makes the distribution Haar.
  for (Eigen::Index k = 0; k < dim; ++k) {
    Complex d = r(k, k);
    q.col(k) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

DensityOperator random_pure_state(Eigen::Index dim, std::mt19937_64& rng) {
  Vector psi = random_complex_gaussian(dim, 1, rng);
  psi.normalize();
  return DensityOperator(psi * psi.adjoint());
}

DensityOperator random_density_operator(Eigen::Index dim, std::mt19937_64& rng) {
  Matrix w = random_complex_gaussian(dim, dim, rng);
  Matrix rho = w * w.adjoint();
  rho /= rho.trace().real();

  std::uniform_real_distribution<double> coin(0.0, 1.0);
  if (dim >= 2 && coin(rng) < 0.1) {
    std::uniform_int_distribution<Eigen::Index> pick_rank(1, dim - 1);
    Eigen::Index rank = pick_rank(rng);
    Matrix q = random_unitary(dim, rng).leftCols(rank);
    Matrix projected = q.adjoint() * rho * q;
    rho = q * (projected / projected.trace().real()) * q.adjoint();
  }
  return DensityOperator(rho);
}

KrausChannel random_channel(Eigen::Index dim_in, Eigen::Index dim_out,
                            int n_kraus, std::mt19937_64& rng) {
  if (n_kraus < 1)
    throw InvalidChannel("random_channel: need at least one Kraus operator");
  if (n_kraus * dim_out < dim_in)
    throw InvalidChannel(
        "random_channel: n_kraus * dim_out must reach dim_in for an isometry");
  Matrix g = random_complex_gaussian(n_kraus * dim_out, dim_in, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix isometry =
      qr.householderQ() * Matrix::Identity(n_kraus * dim_out, dim_in);
  std::vector<Matrix> kraus(n_kraus);
  for (int k = 0; k < n_kraus; ++k)
    kraus[k] = isometry.middleRows(k * dim_out, dim_out);
  return KrausChannel(std::move(kraus));
}

}  // namespace asymm
