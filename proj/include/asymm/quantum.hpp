#pragma once

#include <cstdint>
#include <vector>

#include "asymm/groups.hpp"
#include "asymm/linalg.hpp"

namespace asymm {

// Density operator: Hermitian (1e-10 entrywise), positive semidefinite up to
// -1e-10, unit trace within 1e-10. Eigenvalues in [-1e-10, 0) are clipped to
// zero on construction.
class DensityOperator {
 public:
  explicit DensityOperator(Matrix m);

  const Matrix& matrix() const { return matrix_; }
  Eigen::Index dim() const { return matrix_.rows(); }

 private:
  Matrix matrix_;
};

DensityOperator validate_state(const Matrix& m);

// CPTP map in Kraus form. Construction checks uniform shapes and the
// completeness relation sum_k K^dagger K = I to 1e-9.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<Matrix> kraus_ops);

  Eigen::Index input_dim() const { return input_dim_; }
  Eigen::Index output_dim() const { return output_dim_; }
  const std::vector<Matrix>& kraus_ops() const { return kraus_ops_; }

  // sum_k K X K^dagger on an arbitrary matrix (the channel is linear; inputs
  // need not be states).
  Matrix apply_matrix(const Matrix& x) const;

  // Transfer matrix S with vec(E(X)) = S vec(X) (column-major vec).
  Matrix transfer_matrix() const;

  static KrausChannel identity(Eigen::Index dim);

 private:
  std::vector<Matrix> kraus_ops_;
  Eigen::Index input_dim_;
  Eigen::Index output_dim_;
};

DensityOperator apply_channel(const KrausChannel& e, const DensityOperator& rho);

// Group average sum_i p_i U(g_i) X U(g_i)^dagger.
Matrix twirl_matrix(const Matrix& x, const Representation& r,
                    const GroupDensity& p);
DensityOperator twirl(const DensityOperator& rho, const Representation& r,
                      const GroupDensity& p);

// Removes matrix elements between distinct eigenspaces of the generator
// (eigenvalues are grouped with a tolerance of 1e-9 relative to the spectral
// range). Equals the exact uniform twirl of the U(1) group the generator
// generates.
Matrix dephasing_twirl_matrix(const Matrix& x, const Matrix& generator);
DensityOperator dephasing_twirl(const DensityOperator& rho,
                                const Matrix& generator);

struct CovarianceReport {
  bool symmetric;
  double max_deviation;
};

// Checks E(U_in(g) X U_in(g)^dagger) = U_out(g) E(X) U_out(g)^dagger over a
// spanning set of inputs, reported as the worst Frobenius deviation over the
// checked elements (all elements for finite groups; a grid certificate for
// U(1); a fixed element sample for SU(2)).
CovarianceReport is_symmetric_channel(const KrausChannel& e,
                                      const Representation& r_in,
                                      const Representation& r_out, double tol);
CovarianceReport is_symmetric_channel(const KrausChannel& e,
                                      const Representation& r, double tol);

// The commutant {X : [X, U(g)] = 0 for all g} of a representation, computed
// as the null space of the stacked commutator constraints (all element
// unitaries for finite groups, the generators for Lie representations) via
// one Hermitian eigendecomposition. The basis is orthonormal in the
// Hilbert-Schmidt inner product.
class Commutant {
 public:
  explicit Commutant(const Representation& r, double null_tol = 1e-8);

  Eigen::Index dimension() const {
    return static_cast<Eigen::Index>(basis_.size());
  }
  const std::vector<Matrix>& basis() const { return basis_; }

  // Orthogonal projection onto the commutant. For the uniform density this
  // equals the group twirl (the twirl is idempotent, self-adjoint, and has
  // the commutant as its range), which makes it an exact Haar average.
  Matrix project(const Matrix& x) const;

  // Random Hermitian commutant element with Gaussian coefficients.
  Matrix random_hermitian_element(std::uint64_t seed) const;

 private:
  Eigen::Index dim_;
  std::vector<Matrix> basis_;
};

// exp(i H) for a random Hermitian element H of the commutant; commutes with
// every U(g) of the representation.
Matrix random_symmetric_unitary(const Representation& r, std::uint64_t seed);

// Symmetric unitary dilation: a joint unitary V on system (x) ancilla that
// commutes with U_sys(g) (x) U_anc(g), together with a symmetric ancilla
// state. Tracing out the ancilla yields a covariant channel.
struct SymmetricDilation {
  Representation system_rep;
  Representation ancilla_rep;
  DensityOperator ancilla_state;
  Matrix unitary;
};

// Kraus form K_ij = sqrt(mu_j) (I (x) <a_i|) V (I (x) |b_j>) of the dilation
// channel, where sigma_anc = sum_j mu_j |b_j><b_j|. Validates the dilation
// invariants (V unitary, ancilla state symmetric, V commuting with the tensor
// representation) and raises InvalidDilation on failure.
KrausChannel symmetric_dilation_channel(const SymmetricDilation& d);

SymmetricDilation random_symmetric_dilation(const Representation& sys,
                                            const Representation& anc,
                                            std::uint64_t seed);

// Same draw with precomputed commutants of the joint and ancilla
// representations, for callers that amortize those across many dilations.
SymmetricDilation random_symmetric_dilation(const Representation& sys,
                                            const Representation& anc,
                                            const Commutant& joint_commutant,
                                            const Commutant& ancilla_commutant,
                                            std::uint64_t seed);

// Measure-and-prepare channel from the group's left regular representation to
// the target representation space: E(X) = sum_g <g|X|g> T(g) rho T(g)^dagger.
// Trace preserving as written (no 1/|G| prefactor) and covariant with respect
// to the (regular, target) pair of representations.
KrausChannel encoder_channel(const FiniteGroup& g, const Representation& regular,
                             const Representation& target,
                             const DensityOperator& rho_target);

}  // namespace asymm
