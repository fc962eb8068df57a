#include "asymm/measures.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace asymm {

namespace {

constexpr double kGeneratorTol = 1e-10;
constexpr double kNegativityGuard = 1e-9;
constexpr double kSupportCutoff = 1e-12;
constexpr double kSupportLeakTol = 1e-10;

void require_state_dim(const DensityOperator& rho, Eigen::Index dim,
                       const std::string& where) {
  if (rho.dim() != dim)
    throw DimensionMismatch(where + ": state dim " + std::to_string(rho.dim()) +
                            " vs operator dim " + std::to_string(dim));
}

double guard_nonnegative(double value, const std::string& where) {
  if (value < -kNegativityGuard)
    throw NumericalConsistency(where + ": value " + std::to_string(value) +
                               " below the -1e-9 roundoff guard");
  return std::max(value, 0.0);
}

// rho^e through a precomputed eigendecomposition. Positive exponents clamp
// Eigenvalues at or below the support cutoff count as exact zeros for every
// exponent. Fractional powers amplify eigendecomposition junk (1e-16 raised
// to 1/4 is 1e-4), so powering it instead of zeroing it would contaminate
// pure-state values far beyond roundoff.
Matrix spectral_power(const HermitianEig& eig, double exponent) {
  RealVector powered(eig.eigenvalues.size());
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    double lambda = eig.eigenvalues[k];
    powered[k] = (lambda > kSupportCutoff) ? std::pow(lambda, exponent) : 0.0;
  }
  return eig.eigenvectors * powered.asDiagonal().toDenseMatrix().cast<Complex>() *
         eig.eigenvectors.adjoint();
}

}  // namespace

std::vector<Complex> characteristic_function(
    const DensityOperator& rho, const Representation& r,
    const std::vector<GroupElement>& elements) {
  require_state_dim(rho, r.dim(), "characteristic_function");
  std::vector<Complex> values;
  values.reserve(elements.size());
  for (const GroupElement& g : elements)
    values.push_back((rho.matrix() * r.unitary(g)).trace());
  return values;
}

RealVector noether_moments(const DensityOperator& rho, const Matrix& generator,
                           int k_max) {
  require_hermitian(generator, kGeneratorTol, "noether_moments generator");
  require_state_dim(rho, generator.rows(), "noether_moments");
  if (k_max < 1 || k_max > 12)
    throw InvalidOrder("noether_moments: k_max must lie in [1, 12], got " +
                       std::to_string(k_max));
  RealVector moments(k_max);
  Matrix power = Matrix::Identity(generator.rows(), generator.cols());
  for (int k = 1; k <= k_max; ++k) {
    power = (power * generator).eval();
    Complex m = (rho.matrix() * power).trace();
    if (std::abs(m.imag()) > 1e-10)
      throw NumericalConsistency("noether_moments: imaginary residue " +
                                 std::to_string(m.imag()) + " at order " +
                                 std::to_string(k));
    moments[k - 1] = m.real();
  }
  return moments;
}

double holevo_asymmetry(const DensityOperator& rho, const Representation& r,
                        const GroupDensity& p) {
  require_state_dim(rho, r.dim(), "holevo_asymmetry");
  DensityOperator averaged = twirl(rho, r, p);
  double gain = von_neumann_entropy(averaged.matrix()) -
                von_neumann_entropy(rho.matrix());
  return guard_nonnegative(gain, "holevo_asymmetry");
}

double commutator_asymmetry(const DensityOperator& rho, const Matrix& generator) {
  require_hermitian(generator, kGeneratorTol, "commutator_asymmetry generator");
  require_state_dim(rho, generator.rows(), "commutator_asymmetry");
  return trace_norm(rho.matrix() * generator - generator * rho.matrix());
}

double trace_distance_asymmetry(const DensityOperator& rho,
                                const Representation& r, const GroupElement& g) {
  require_state_dim(rho, r.dim(), "trace_distance_asymmetry");
  Matrix u = r.unitary(g);
  return trace_norm(rho.matrix() - u * rho.matrix() * u.adjoint());
}

double renyi_divergence(const DensityOperator& rho1, const DensityOperator& rho2,
                        double s) {
  if (rho1.dim() != rho2.dim())
    throw DimensionMismatch("renyi_divergence: state dims " +
                            std::to_string(rho1.dim()) + " vs " +
                            std::to_string(rho2.dim()));
  if (s < 0.0 || std::abs(s) < 1e-12 || std::abs(s - 1.0) < 1e-12)
    throw InvalidOrder("renyi_divergence: order must lie in (0,1) or (1,inf), got " +
                       std::to_string(s));

  HermitianEig eig1 = hermitian_eig(rho1.matrix());
  HermitianEig eig2 = hermitian_eig(rho2.matrix());

  if (s > 1.0) {
    // Support condition: weight of rho1 on the kernel of rho2.
    double leak = 0.0;
    for (Eigen::Index k = 0; k < eig2.eigenvalues.size(); ++k) {
      if (eig2.eigenvalues[k] > kSupportCutoff) continue;
      Vector v = eig2.eigenvectors.col(k);
      leak += (v.adjoint() * rho1.matrix() * v)(0).real();
    }
    if (leak > kSupportLeakTol) return std::numeric_limits<double>::infinity();
  }

  Matrix p1 = spectral_power(eig1, s);
  Matrix p2 = spectral_power(eig2, 1.0 - s);
  double overlap = (p1 * p2).trace().real();
  if (overlap <= 0.0) return std::numeric_limits<double>::infinity();
  return std::log2(overlap) / (s - 1.0);
}

double skew_information(const DensityOperator& rho, const Matrix& generator,
                        double s) {
  require_hermitian(generator, kGeneratorTol, "skew_information generator");
  require_state_dim(rho, generator.rows(), "skew_information");
  if (s <= 0.0 || std::abs(s - 1.0) < 1e-12)
    throw InvalidOrder("skew_information: order must lie in (0,1) or (1,inf), got " +
                       std::to_string(s));

  HermitianEig eig = hermitian_eig(rho.matrix());
  Matrix ps = spectral_power(eig, s);
  Matrix pc = spectral_power(eig, 1.0 - s);
  double second_moment = (rho.matrix() * generator * generator).trace().real();
  double cross = (ps * generator * pc * generator).trace().real();
  double value = second_moment - cross;
  if (s < 1.0) return guard_nonnegative(value, "skew_information");
  return value;
}

double cramer_rao_bound_value(const DensityOperator& rho, const Matrix& number_op) {
  double skew = skew_information(rho, number_op, 0.5);
  if (skew <= 1e-12)
    throw ZeroAsymmetry(
        "cramer_rao_bound_value: state carries no phase information, the bound "
        "is infinite");
  return 1.0 / (4.0 * skew);
}

}  // namespace asymm
