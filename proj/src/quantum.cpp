#include "asymm/quantum.hpp"

#include <cmath>
#include <random>
#include <string>
#include <utility>

namespace asymm {

namespace {

constexpr double kStateHermitianTol = 1e-10;
constexpr double kStateTraceTol = 1e-10;
constexpr double kStateEigFloor = -1e-10;
constexpr double kCompletenessTol = 1e-9;
constexpr double kDilationUnitaryTol = 1e-10;
constexpr double kDilationCommuteTol = 1e-9;
constexpr double kAncillaWeightCutoff = 1e-14;

double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

// Largest Frobenius deviation over matrix-unit inputs: column (i + j*d) of a
// superoperator difference is the vectorized output for input |i><j|, so the
// worst matrix unit corresponds to the largest column 2-norm.
double max_unit_deviation(const Matrix& superop_difference) {
  double worst = 0.0;
  for (Eigen::Index c = 0; c < superop_difference.cols(); ++c)
    worst = std::max(worst, superop_difference.col(c).norm());
  return worst;
}

Matrix conjugation_transfer(const Matrix& u) { return kron(u.conjugate(), u); }

// d/dtheta at 0 of conj(U(theta)) (x) U(theta) divided by i, for the
// one-parameter family generated by L. Intertwining these generators is
// equivalent to covariance for every element of the subgroup.
Matrix conjugation_generator(const Matrix& l) {
  Matrix id = Matrix::Identity(l.rows(), l.cols());
  return kron(l.transpose(), id) - kron(id, l);
}

double commutator_defect(const Matrix& a, const Matrix& b) {
  return max_abs(a * b - b * a);
}

}  // namespace

DensityOperator::DensityOperator(Matrix m) {
  require_finite(m, "density operator");
  require_square(m, "density operator");
  if (hermiticity_defect(m) > kStateHermitianTol)
    throw NotHermitian("density operator: hermiticity defect " +
                       std::to_string(hermiticity_defect(m)));
  Complex tr = m.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStateTraceTol)
    throw TraceNotOne("density operator: trace deviates from 1 by " +
                      std::to_string(std::abs(tr - Complex(1.0, 0.0))));
  Matrix sym = ((m + m.adjoint()) * 0.5).eval();
  HermitianEig eig = hermitian_eig(sym);
  double min_eig = eig.eigenvalues.minCoeff();
  if (min_eig < kStateEigFloor)
    throw NotPSD("density operator: eigenvalue " + std::to_string(min_eig));
  if (min_eig < 0.0) {
    RealVector clipped = eig.eigenvalues.cwiseMax(0.0);
    double total = clipped.sum();
    clipped /= total;
    matrix_ = eig.eigenvectors * clipped.asDiagonal().toDenseMatrix().cast<Complex>() *
              eig.eigenvectors.adjoint();
  } else {
    matrix_ = std::move(sym);
  }
}

DensityOperator validate_state(const Matrix& m) { return DensityOperator(m); }

KrausChannel::KrausChannel(std::vector<Matrix> kraus_ops)
    : kraus_ops_(std::move(kraus_ops)) {
  if (kraus_ops_.empty())
    throw InvalidChannel("channel: needs at least one Kraus operator");
  output_dim_ = kraus_ops_[0].rows();
  input_dim_ = kraus_ops_[0].cols();
  if (output_dim_ <= 0 || input_dim_ <= 0)
    throw InvalidChannel("channel: empty Kraus operator");
  Matrix completeness = Matrix::Zero(input_dim_, input_dim_);
  for (const Matrix& k : kraus_ops_) {
    if (k.rows() != output_dim_ || k.cols() != input_dim_)
      throw InvalidChannel("channel: Kraus operators have inconsistent shapes");
    require_finite(k, "channel");
    completeness += k.adjoint() * k;
  }
  completeness -= Matrix::Identity(input_dim_, input_dim_);
  if (max_abs(completeness) > kCompletenessTol)
    throw InvalidChannel("channel: completeness defect " +
                         std::to_string(max_abs(completeness)));
}

Matrix KrausChannel::apply_matrix(const Matrix& x) const {
  if (x.rows() != input_dim_ || x.cols() != input_dim_)
    throw DimensionMismatch("apply_matrix: input is " + std::to_string(x.rows()) +
                            "x" + std::to_string(x.cols()) + ", channel expects " +
                            std::to_string(input_dim_));
  Matrix out = Matrix::Zero(output_dim_, output_dim_);
  for (const Matrix& k : kraus_ops_) out += k * x * k.adjoint();
  return out;
}

Matrix KrausChannel::transfer_matrix() const {
  Matrix s = Matrix::Zero(output_dim_ * output_dim_, input_dim_ * input_dim_);
  for (const Matrix& k : kraus_ops_) s += kron(k.conjugate(), k);
  return s;
}

KrausChannel KrausChannel::identity(Eigen::Index dim) {
  return KrausChannel({Matrix::Identity(dim, dim)});
}

DensityOperator apply_channel(const KrausChannel& e, const DensityOperator& rho) {
  return DensityOperator(e.apply_matrix(rho.matrix()));
}

Matrix twirl_matrix(const Matrix& x, const Representation& r,
                    const GroupDensity& p) {
  if (x.rows() != r.dim() || x.cols() != r.dim())
    throw DimensionMismatch("twirl: state dim " + std::to_string(x.rows()) +
                            " vs representation dim " + std::to_string(r.dim()));
  Matrix out = Matrix::Zero(r.dim(), r.dim());
  for (const GroupDensity::Node& node : p.nodes()) {
    Matrix u = r.unitary(node.element);
    out += node.weight * (u * x * u.adjoint());
  }
  return out;
}

DensityOperator twirl(const DensityOperator& rho, const Representation& r,
                      const GroupDensity& p) {
  return DensityOperator(twirl_matrix(rho.matrix(), r, p));
}

Matrix dephasing_twirl_matrix(const Matrix& x, const Matrix& generator) {
  require_square(x, "dephasing_twirl");
  require_hermitian(generator, 1e-10, "dephasing_twirl generator");
  if (x.rows() != generator.rows())
    throw DimensionMismatch("dephasing_twirl: state dim " +
                            std::to_string(x.rows()) + " vs generator dim " +
                            std::to_string(generator.rows()));
  HermitianEig eig = hermitian_eig(generator);
  const Eigen::Index d = x.rows();
  double range = (d > 0) ? eig.eigenvalues[d - 1] - eig.eigenvalues[0] : 0.0;
  double group_tol = 1e-9 * std::max(1.0, range);

  Matrix y = eig.eigenvectors.adjoint() * x * eig.eigenvectors;
  Matrix filtered = Matrix::Zero(d, d);
  Eigen::Index block_start = 0;
  while (block_start < d) {
    Eigen::Index block_end = block_start + 1;
    while (block_end < d &&
           eig.eigenvalues[block_end] - eig.eigenvalues[block_end - 1] <= group_tol)
      ++block_end;
    Eigen::Index width = block_end - block_start;
    filtered.block(block_start, block_start, width, width) =
        y.block(block_start, block_start, width, width);
    block_start = block_end;
  }
  return eig.eigenvectors * filtered * eig.eigenvectors.adjoint();
}

DensityOperator dephasing_twirl(const DensityOperator& rho,
                                const Matrix& generator) {
  return DensityOperator(dephasing_twirl_matrix(rho.matrix(), generator));
}

CovarianceReport is_symmetric_channel(const KrausChannel& e,
                                      const Representation& r_in,
                                      const Representation& r_out, double tol) {
  if (e.input_dim() != r_in.dim())
    throw DimensionMismatch("is_symmetric_channel: channel input dim " +
                            std::to_string(e.input_dim()) +
                            " vs representation dim " + std::to_string(r_in.dim()));
  if (e.output_dim() != r_out.dim())
    throw DimensionMismatch("is_symmetric_channel: channel output dim " +
                            std::to_string(e.output_dim()) +
                            " vs representation dim " + std::to_string(r_out.dim()));
  if (r_in.kind() != r_out.kind())
    throw GroupMismatch("is_symmetric_channel: representations of different groups");

  Matrix s = e.transfer_matrix();
  double worst = 0.0;
  auto check_element = [&](const GroupElement& g) {
    Matrix w_in = conjugation_transfer(r_in.unitary(g));
    Matrix w_out = conjugation_transfer(r_out.unitary(g));
    worst = std::max(worst, max_unit_deviation(s * w_in - w_out * s));
  };
  auto check_generator_pair = [&](const Matrix& l_in, const Matrix& l_out) {
    Matrix a_in = conjugation_generator(l_in);
    Matrix a_out = conjugation_generator(l_out);
    worst = std::max(worst, max_unit_deviation(s * a_in - a_out * s));
  };

  switch (r_in.kind()) {
    case GroupKind::Finite: {
      if (!r_in.group().same_structure(r_out.group()))
        throw GroupMismatch("is_symmetric_channel: finite groups differ");
      for (int g = 0; g < r_in.group().order(); ++g)
        check_element(GroupElement::finite(g));
      break;
    }
    case GroupKind::U1: {
      check_generator_pair(-r_in.generators()[0], -r_out.generators()[0]);
      // Certificate grid: every entry of the covariance defect is a
      // trigonometric polynomial with frequencies bounded by the larger
      // spectral spread, so vanishing on 2K+1 equispaced angles forces it to
      // vanish identically.
      auto spread = [](const Matrix& n) {
        HermitianEig eig = hermitian_eig(n);
        return static_cast<int>(std::lround(
            eig.eigenvalues[eig.eigenvalues.size() - 1] - eig.eigenvalues[0]));
      };
      int k = std::max(spread(r_in.generators()[0]), spread(r_out.generators()[0]));
      int m = 2 * k + 1;
      for (int i = 0; i < m; ++i)
        check_element(GroupElement::phase(2.0 * M_PI * i / m));
      break;
    }
    case GroupKind::SU2: {
      for (int axis = 0; axis < 3; ++axis)
        check_generator_pair(r_in.generators()[axis], r_out.generators()[axis]);
      const Eigen::Vector3d axes[3] = {Eigen::Vector3d::UnitX(),
                                       Eigen::Vector3d::UnitY(),
                                       Eigen::Vector3d::UnitZ()};
      for (const auto& axis : axes)
        for (double theta : {0.7, 1.9, 3.1})
          check_element(GroupElement::rotation(axis, theta));
      break;
    }
  }
  return CovarianceReport{worst <= tol, worst};
}

CovarianceReport is_symmetric_channel(const KrausChannel& e,
                                      const Representation& r, double tol) {
  return is_symmetric_channel(e, r, r, tol);
}

Commutant::Commutant(const Representation& r, double null_tol) : dim_(r.dim()) {
  const Eigen::Index n = r.dim();
  const Eigen::Index n2 = n * n;
  Matrix constraints = Matrix::Zero(n2, n2);
  if (r.kind() == GroupKind::Finite) {
    for (int g = 0; g < r.group().order(); ++g) {
      if (g == r.group().identity()) continue;
      Matrix w = conjugation_transfer(r.element_unitary(g));
      constraints += 2.0 * Matrix::Identity(n2, n2) - w - w.adjoint();
    }
  } else {
    Matrix id = Matrix::Identity(n, n);
    for (const Matrix& l : r.generators()) {
      Matrix lt = l.transpose();
      constraints += kron(id, (l * l).eval()) - 2.0 * kron(lt, l) +
                     kron((lt * lt).eval(), id);
    }
  }

  HermitianEig eig = hermitian_eig(constraints);
  double threshold = null_tol * std::max(1.0, eig.eigenvalues[n2 - 1]);
  for (Eigen::Index k = 0; k < n2 && eig.eigenvalues[k] <= threshold; ++k) {
    Matrix b(n, n);
    for (Eigen::Index c = 0; c < n; ++c) b.col(c) = eig.eigenvectors.col(k).segment(c * n, n);
    basis_.push_back(std::move(b));
  }
}

Matrix Commutant::project(const Matrix& x) const {
  if (x.rows() != dim_ || x.cols() != dim_)
    throw DimensionMismatch("commutant projection: operand dim " +
                            std::to_string(x.rows()) + " vs representation dim " +
                            std::to_string(dim_));
  Matrix out = Matrix::Zero(dim_, dim_);
  for (const Matrix& b : basis_) out += (b.adjoint() * x).trace() * b;
  return out;
}

Matrix Commutant::random_hermitian_element(std::uint64_t seed) const {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix x = Matrix::Zero(dim_, dim_);
  for (const Matrix& b : basis_) x += Complex(gauss(rng), gauss(rng)) * b;
  return (x + x.adjoint()) * 0.5;
}

Matrix random_symmetric_unitary(const Representation& r, std::uint64_t seed) {
  Commutant commutant(r);
  Matrix h = commutant.random_hermitian_element(seed);
  return unitary_from_generator(h, -1.0);
}

KrausChannel symmetric_dilation_channel(const SymmetricDilation& d) {
  const Eigen::Index n_sys = d.system_rep.dim();
  const Eigen::Index n_anc = d.ancilla_rep.dim();
  const Matrix& v = d.unitary;
  if (v.rows() != n_sys * n_anc || v.cols() != n_sys * n_anc)
    throw InvalidDilation("dilation: joint unitary dim " + std::to_string(v.rows()) +
                          " vs system*ancilla " + std::to_string(n_sys * n_anc));
  if (d.ancilla_state.dim() != n_anc)
    throw InvalidDilation("dilation: ancilla state dim " +
                          std::to_string(d.ancilla_state.dim()) +
                          " vs ancilla representation dim " + std::to_string(n_anc));
  require_finite(v, "dilation unitary");
  Matrix gram = v.adjoint() * v - Matrix::Identity(v.rows(), v.cols());
  if (max_abs(gram) > kDilationUnitaryTol)
    throw InvalidDilation("dilation: joint operator is not unitary, defect " +
                          std::to_string(max_abs(gram)));

  const Matrix& sigma = d.ancilla_state.matrix();
  if (d.ancilla_rep.kind() == GroupKind::Finite) {
    for (int g = 0; g < d.ancilla_rep.group().order(); ++g)
      if (commutator_defect(sigma, d.ancilla_rep.element_unitary(g)) >
          kDilationCommuteTol)
        throw InvalidDilation("dilation: ancilla state is not symmetric");
  } else {
    for (const Matrix& l : d.ancilla_rep.generators())
      if (commutator_defect(sigma, l) > kDilationCommuteTol)
        throw InvalidDilation("dilation: ancilla state is not symmetric");
  }

  Representation joint = tensor_representation(d.system_rep, d.ancilla_rep);
  if (joint.kind() == GroupKind::Finite) {
    for (int g = 0; g < joint.group().order(); ++g)
      if (commutator_defect(v, joint.element_unitary(g)) > kDilationCommuteTol)
        throw InvalidDilation("dilation: joint unitary is not symmetric");
  } else {
    for (const Matrix& l : joint.generators())
      if (commutator_defect(v, l) > kDilationCommuteTol)
        throw InvalidDilation("dilation: joint unitary is not symmetric");
  }

  HermitianEig sigma_eig = hermitian_eig(sigma);
  std::vector<Matrix> kraus;
  for (Eigen::Index j = 0; j < n_anc; ++j) {
    double mu = sigma_eig.eigenvalues[j];
    if (mu <= kAncillaWeightCutoff) continue;
    double root_mu = std::sqrt(mu);
    // Columns of injected = V (I (x) |b_j>); row (s * n_anc + i) and column t
    // hold <s, a_i| V |t, b_j>.
    Matrix injected(n_sys * n_anc, n_sys);
    for (Eigen::Index t = 0; t < n_sys; ++t)
      injected.col(t) = v.middleCols(t * n_anc, n_anc) * sigma_eig.eigenvectors.col(j);
    for (Eigen::Index i = 0; i < n_anc; ++i) {
      Matrix k(n_sys, n_sys);
      for (Eigen::Index s = 0; s < n_sys; ++s)
        k.row(s) = root_mu * injected.row(s * n_anc + i);
      kraus.push_back(std::move(k));
    }
  }
  return KrausChannel(std::move(kraus));
}

SymmetricDilation random_symmetric_dilation(const Representation& sys,
                                            const Representation& anc,
                                            const Commutant& joint_commutant,
                                            const Commutant& ancilla_commutant,
                                            std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> split;
  std::uint64_t unitary_seed = split(rng);
  std::uint64_t state_seed = split(rng);

  Matrix h = joint_commutant.random_hermitian_element(unitary_seed);
  Matrix v = unitary_from_generator(h, -1.0);

  // A Gaussian commutant element shifted far enough along the identity is
  // positive definite; normalizing gives a full-rank symmetric ancilla state.
  Matrix a = ancilla_commutant.random_hermitian_element(state_seed);
  HermitianEig a_eig = hermitian_eig(a);
  double shift = a_eig.eigenvalues.minCoeff();
  Matrix sigma = a + (1.0 - std::min(shift, 0.0) + 1e-3) *
                         Matrix::Identity(anc.dim(), anc.dim());
  sigma /= sigma.trace().real();

  return SymmetricDilation{sys, anc, DensityOperator(sigma), std::move(v)};
}

SymmetricDilation random_symmetric_dilation(const Representation& sys,
                                            const Representation& anc,
                                            std::uint64_t seed) {
  Commutant joint(tensor_representation(sys, anc));
  Commutant ancilla(anc);
  return random_symmetric_dilation(sys, anc, joint, ancilla, seed);
}

KrausChannel encoder_channel(const FiniteGroup& g, const Representation& regular,
                             const Representation& target,
                             const DensityOperator& rho_target) {
  const int n = g.order();
  if (regular.kind() != GroupKind::Finite || !regular.group().same_structure(g))
    throw GroupMismatch("encoder_channel: representation is not over the given group");
  if (regular.dim() != n)
    throw GroupMismatch("encoder_channel: regular representation must have dim " +
                        std::to_string(n));
  for (int a = 0; a < n; ++a) {
    const Matrix& u = regular.element_unitary(a);
    for (int h = 0; h < n; ++h)
      for (int row = 0; row < n; ++row) {
        double expected = (row == g.multiply(a, h)) ? 1.0 : 0.0;
        if (std::abs(u(row, h) - Complex(expected, 0.0)) > 1e-12)
          throw GroupMismatch(
              "encoder_channel: representation is not the left regular one");
      }
  }
  if (target.kind() != GroupKind::Finite || !target.group().same_structure(g))
    throw GroupMismatch("encoder_channel: target representation group differs");
  if (rho_target.dim() != target.dim())
    throw DimensionMismatch("encoder_channel: target state dim " +
                            std::to_string(rho_target.dim()) +
                            " vs target representation dim " +
                            std::to_string(target.dim()));

  HermitianEig rho_eig = hermitian_eig(rho_target.matrix());
  std::vector<Matrix> kraus;
  for (int a = 0; a < n; ++a) {
    const Matrix& t = target.element_unitary(a);
    for (Eigen::Index k = 0; k < rho_eig.eigenvalues.size(); ++k) {
      double mu = rho_eig.eigenvalues[k];
      if (mu <= kAncillaWeightCutoff) continue;
      Vector prepared = std::sqrt(mu) * (t * rho_eig.eigenvectors.col(k));
      Matrix op = Matrix::Zero(target.dim(), n);
      op.col(a) = prepared;
      kraus.push_back(std::move(op));
    }
  }
  return KrausChannel(std::move(kraus));
}

}  // namespace asymm
