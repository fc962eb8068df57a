#include <cmath>
#include <random>
#include <vector>

#include "catch2/catch_amalgamated.hpp"

#include "asymm/groups.hpp"
#include "asymm/quantum.hpp"
#include "asymm/sampling.hpp"
#include "test_util.hpp"

using namespace asymm;
using test_util::frob;
using test_util::max_abs;

namespace {

Matrix basis_state(Eigen::Index dim, Eigen::Index k) {
  Matrix m = Matrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return m;
}

Representation z2_flip_representation() {
  Matrix sx(2, 2);
  sx << 0, 1, 1, 0;
  return Representation::finite(cyclic_group(2),
                                {Matrix::Identity(2, 2), sx});
}

}  // namespace

TEST_CASE("density operator construction validates its input", "[quantum]") {
  Matrix good = Matrix::Zero(2, 2);
  good(0, 0) = 0.25;
  good(1, 1) = 0.75;
  REQUIRE_NOTHROW(DensityOperator(good));

  Matrix not_hermitian(2, 2);
  not_hermitian << 0.5, 0.1, 0.3, 0.5;
  REQUIRE_THROWS_AS(validate_state(not_hermitian), NotHermitian);

  Matrix bad_trace = Matrix::Identity(2, 2);
  REQUIRE_THROWS_AS(validate_state(bad_trace), TraceNotOne);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 2.0;
  negative(1, 1) = -1.0;
  REQUIRE_THROWS_AS(validate_state(negative), NotPSD);

  // Eigenvalues just below zero are clipped, the trace renormalized.
  Matrix near = Matrix::Zero(2, 2);
  near(0, 0) = 1.0 + 5e-11;
  near(1, 1) = -5e-11;
  DensityOperator clipped(near);
  REQUIRE(std::abs(clipped.matrix().trace() - 1.0) < 1e-14);
  HermitianEig eig = hermitian_eig(clipped.matrix());
  REQUIRE(eig.eigenvalues.minCoeff() >= 0.0);
}

TEST_CASE("kraus channel construction checks completeness", "[quantum]") {
  Matrix half = Matrix::Identity(2, 2) / std::sqrt(2.0);
  REQUIRE_NOTHROW(KrausChannel({half, half}));
  REQUIRE_THROWS_AS(KrausChannel({half}), InvalidChannel);
  REQUIRE_THROWS_AS(KrausChannel(std::vector<Matrix>{}), InvalidChannel);

  Matrix tall = Matrix::Zero(3, 2);
  REQUIRE_THROWS_AS(KrausChannel({half, tall}), InvalidChannel);

  KrausChannel id = KrausChannel::identity(3);
  REQUIRE(id.input_dim() == 3);
  REQUIRE(id.output_dim() == 3);
}

TEST_CASE("channels preserve trace and positivity", "[quantum]") {
  std::mt19937_64 rng(301);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Index din = 2 + static_cast<Eigen::Index>(rng() % 3);
    Eigen::Index dout = 2 + static_cast<Eigen::Index>(rng() % 3);
    // Enough Kraus operators for an isometric dilation to exist.
    int min_kraus = static_cast<int>((din + dout - 1) / dout);
    int n_kraus = min_kraus + static_cast<int>(rng() % 3);
    KrausChannel e = random_channel(din, dout, n_kraus, rng);
    DensityOperator rho = random_density_operator(din, rng);

    DensityOperator out = apply_channel(e, rho);
    REQUIRE(out.dim() == dout);
    REQUIRE(std::abs(out.matrix().trace() - 1.0) < 1e-9);
    REQUIRE(hermitian_eig(out.matrix()).eigenvalues.minCoeff() > -1e-10);
  }
}

TEST_CASE("transfer matrix reproduces the channel action", "[quantum]") {
  std::mt19937_64 rng(302);
  KrausChannel e = random_channel(3, 2, 3, rng);
  Matrix s = e.transfer_matrix();
  REQUIRE(s.rows() == 4);
  REQUIRE(s.cols() == 9);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix x = test_util::gaussian(3, 3, rng);
    Matrix ex = e.apply_matrix(x);
    Eigen::Map<const Vector> vec_x(x.data(), x.size());
    Eigen::Map<const Vector> vec_ex(ex.data(), ex.size());
    REQUIRE((s * vec_x - vec_ex).norm() < 1e-12 * std::max(1.0, frob(x)));
  }
}

TEST_CASE("twirling a basis state over the flip group mixes it", "[quantum]") {
  Representation rep = z2_flip_representation();
  GroupDensity uniform = uniform_density(rep, 1);
  DensityOperator rho(basis_state(2, 0));
  DensityOperator averaged = twirl(rho, rep, uniform);
  REQUIRE(max_abs(averaged.matrix() - Matrix::Identity(2, 2) / 2.0) < 1e-14);
}

TEST_CASE("uniform twirls are idempotent and invariant", "[quantum]") {
  std::mt19937_64 rng(303);

  Representation reg = left_regular_representation(cyclic_group(6));
  GroupDensity uf = uniform_density(reg, 1);
  DensityOperator rho = random_density_operator(6, rng);
  DensityOperator once = twirl(rho, reg, uf);
  DensityOperator twice = twirl(once, reg, uf);
  REQUIRE(max_abs(twice.matrix() - once.matrix()) < 1e-12);
  for (int g = 0; g < 6; ++g) {
    Matrix u = reg.element_unitary(g);
    REQUIRE(max_abs(u * once.matrix() * u.adjoint() - once.matrix()) < 1e-12);
  }

  Representation number = u1_number_representation({0, 1, 2});
  GroupDensity grid = uniform_density(number, 3);
  DensityOperator sigma = random_density_operator(3, rng);
  DensityOperator averaged = twirl(sigma, number, grid);
  DensityOperator again = twirl(averaged, number, grid);
  REQUIRE(max_abs(again.matrix() - averaged.matrix()) < 1e-12);
  Matrix u = number.unitary(GroupElement::phase(1.234));
  REQUIRE(max_abs(u * averaged.matrix() * u.adjoint() - averaged.matrix()) <
          1e-12);
}

TEST_CASE("dephasing matches the minimal exact phase grid", "[quantum]") {
  Matrix n = Matrix::Zero(3, 3);
  n(1, 1) = 1.0;
  n(2, 2) = 3.0;
  Representation rep = Representation::u1(n);
  GroupDensity grid = uniform_density(rep, 1);

  std::mt19937_64 rng(304);
  for (int trial = 0; trial < 10; ++trial) {
    Matrix x = test_util::gaussian(3, 3, rng);
    REQUIRE(frob(dephasing_twirl_matrix(x, n) - twirl_matrix(x, rep, grid)) <
            1e-12 * std::max(1.0, frob(x)));
  }

  DensityOperator rho = random_density_operator(3, rng);
  DensityOperator dephased = dephasing_twirl(rho, n);
  REQUIRE(max_abs(dephased.matrix() * n - n * dephased.matrix()) < 1e-10);
}

TEST_CASE("dephasing groups near-degenerate levels", "[quantum]") {
  Matrix n = Matrix::Zero(3, 3);
  n(1, 1) = 1e-12;  // within grouping tolerance of level 0
  n(2, 2) = 1.0;
  Matrix x = Matrix::Ones(3, 3);
  Matrix d = dephasing_twirl_matrix(x, n);
  REQUIRE(std::abs(d(0, 1) - 1.0) < 1e-14);  // same block: kept
  REQUIRE(std::abs(d(0, 2)) < 1e-14);        // distinct blocks: removed
  REQUIRE(std::abs(d(1, 2)) < 1e-14);
}

TEST_CASE("covariance check agrees with the matrix-unit oracle", "[quantum]") {
  std::mt19937_64 rng(305);
  FiniteGroup z4 = cyclic_group(4);
  Representation rep = cyclic_phase_representation(z4, {0, 1, 2, 3});
  KrausChannel e = random_channel(4, 4, 3, rng);

  double oracle = 0.0;
  for (int g = 0; g < 4; ++g) {
    Matrix u = rep.element_unitary(g);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) {
        Matrix unit = Matrix::Zero(4, 4);
        unit(i, j) = 1.0;
        Matrix dev = e.apply_matrix(u * unit * u.adjoint()) -
                     u * e.apply_matrix(unit) * u.adjoint();
        oracle = std::max(oracle, frob(dev));
      }
  }

  CovarianceReport report = is_symmetric_channel(e, rep, 1e-8);
  REQUIRE(report.max_deviation ==
          Catch::Approx(oracle).margin(1e-12 * std::max(1.0, oracle)));
  REQUIRE_FALSE(report.symmetric);  // a random channel is not covariant

  CovarianceReport id_report =
      is_symmetric_channel(KrausChannel::identity(4), rep, 1e-10);
  REQUIRE(id_report.symmetric);
  REQUIRE(id_report.max_deviation < 1e-12);
}

TEST_CASE("covariance check handles phase and rotation groups", "[quantum]") {
  // Dephasing in the number basis is phase covariant.
  Representation number = u1_number_representation({0, 1});
  Matrix k0 = Matrix::Zero(2, 2), k1 = Matrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k1(1, 1) = 1.0;
  KrausChannel dephase({k0, k1});
  REQUIRE(is_symmetric_channel(dephase, number, 1e-9).symmetric);

  // A Hadamard-like unitary is not.
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  CovarianceReport bad = is_symmetric_channel(KrausChannel({h}), number, 1e-9);
  REQUIRE_FALSE(bad.symmetric);
  REQUIRE(bad.max_deviation > 0.1);

  // Identity commutes with every rotation, a z rotation does not.
  Representation half = spin_j_representation(0.5);
  REQUIRE(is_symmetric_channel(KrausChannel::identity(2), half, 1e-9).symmetric);
  Matrix uz = unitary_from_generator(half.generators()[2], 1.1);
  REQUIRE_FALSE(is_symmetric_channel(KrausChannel({uz}), half, 1e-9).symmetric);

  // Dimension and kind mismatches are rejected.
  REQUIRE_THROWS_AS(is_symmetric_channel(dephase, half, number, 1e-9),
                    GroupMismatch);
  REQUIRE_THROWS_AS(
      is_symmetric_channel(KrausChannel::identity(3), number, 1e-9),
      DimensionMismatch);
}

TEST_CASE("commutant dimensions match representation theory", "[quantum]") {
  // Regular representation of an abelian group: |G| invariant dimensions.
  Commutant reg(left_regular_representation(cyclic_group(8)));
  REQUIRE(reg.dimension() == 8);

  // Nondegenerate number operator: diagonal matrices only.
  Commutant diag(u1_number_representation({0, 1, 2, 3}));
  REQUIRE(diag.dimension() == 4);

  // Degenerate level doubles into a full 2x2 block.
  Commutant degen(u1_number_representation({0, 1, 1, 2}));
  REQUIRE(degen.dimension() == 6);

  // Irreducible spin representation: scalars only.
  Commutant spin(spin_j_representation(1.5));
  REQUIRE(spin.dimension() == 1);
}

TEST_CASE("commutant basis commutes and projection is orthogonal", "[quantum]") {
  Representation rep = u1_number_representation({0, 1, 1, 3});
  Commutant comm(rep);

  Matrix u = rep.unitary(GroupElement::phase(0.83));
  for (const Matrix& b : comm.basis()) {
    REQUIRE(max_abs(b * u - u * b) < 1e-11);
    REQUIRE(std::abs((b.adjoint() * b).trace() - 1.0) < 1e-11);
  }
  for (Eigen::Index i = 0; i < comm.dimension(); ++i)
    for (Eigen::Index j = i + 1; j < comm.dimension(); ++j)
      REQUIRE(std::abs((comm.basis()[i].adjoint() * comm.basis()[j]).trace()) <
              1e-11);

  std::mt19937_64 rng(306);
  Matrix x = test_util::gaussian(4, 4, rng);
  Matrix y = test_util::gaussian(4, 4, rng);
  Matrix px = comm.project(x);
  REQUIRE(frob(comm.project(px) - px) < 1e-12);
  // Self-adjoint in the Hilbert-Schmidt inner product.
  Complex lhs = (comm.project(x).adjoint() * y).trace();
  Complex rhs = (x.adjoint() * comm.project(y)).trace();
  REQUIRE(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("random symmetric unitaries commute with the group", "[quantum]") {
  Representation rep = u1_number_representation({0, 1, 2});
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    Matrix v = random_symmetric_unitary(rep, seed);
    REQUIRE(max_abs(v * v.adjoint() - Matrix::Identity(3, 3)) < 1e-12);
    Matrix u = rep.unitary(GroupElement::phase(2.2));
    REQUIRE(max_abs(v * u - u * v) < 1e-10);
  }

  Representation reg = left_regular_representation(cyclic_group(3));
  Matrix v = random_symmetric_unitary(reg, 7);
  for (int g = 0; g < 3; ++g) {
    Matrix u = reg.element_unitary(g);
    REQUIRE(max_abs(v * u - u * v) < 1e-10);
  }
}

TEST_CASE("random symmetric dilations yield covariant channels", "[quantum]") {
  Representation sys = u1_number_representation({0, 1, 2, 3});
  Representation anc = u1_number_representation({0, 1});
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    SymmetricDilation d = random_symmetric_dilation(sys, anc, seed);
    KrausChannel e = symmetric_dilation_channel(d);
    REQUIRE(e.input_dim() == 4);
    REQUIRE(e.output_dim() == 4);
    CovarianceReport report = is_symmetric_channel(e, sys, 1e-8);
    REQUIRE(report.symmetric);
  }

  Representation half = spin_j_representation(0.5);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    SymmetricDilation d = random_symmetric_dilation(half, half, seed);
    KrausChannel e = symmetric_dilation_channel(d);
    REQUIRE(is_symmetric_channel(e, half, 1e-8).symmetric);
  }
}

TEST_CASE("dilation validation rejects tampered inputs", "[quantum]") {
  Representation sys = u1_number_representation({0, 1, 2, 3});
  Representation anc = u1_number_representation({0, 1});
  SymmetricDilation d = random_symmetric_dilation(sys, anc, 5);

  std::mt19937_64 rng(307);
  SymmetricDilation broken_commutation = d;
  broken_commutation.unitary = random_unitary(8, rng);
  REQUIRE_THROWS_AS(symmetric_dilation_channel(broken_commutation),
                    InvalidDilation);

  SymmetricDilation not_unitary = d;
  not_unitary.unitary = 0.5 * d.unitary;
  REQUIRE_THROWS_AS(symmetric_dilation_channel(not_unitary), InvalidDilation);

  SymmetricDilation biased_ancilla = d;
  Matrix plus = Matrix::Ones(2, 2) / 2.0;  // coherence across number levels
  biased_ancilla.ancilla_state = DensityOperator(plus);
  REQUIRE_THROWS_AS(symmetric_dilation_channel(biased_ancilla),
                    InvalidDilation);
}

TEST_CASE("encoder channel deposits the target state covariantly", "[quantum]") {
  FiniteGroup z4 = cyclic_group(4);
  Representation reg = left_regular_representation(z4);
  Representation target = cyclic_phase_representation(z4, {0, 1});
  std::mt19937_64 rng(308);
  DensityOperator rho = random_density_operator(2, rng);

  KrausChannel enc = encoder_channel(z4, reg, target, rho);
  REQUIRE(enc.input_dim() == 4);
  REQUIRE(enc.output_dim() == 2);

  for (int g = 0; g < 4; ++g) {
    Matrix t = target.element_unitary(g);
    Matrix expected = t * rho.matrix() * t.adjoint();
    REQUIRE(max_abs(enc.apply_matrix(basis_state(4, g)) - expected) < 1e-12);
  }

  REQUIRE(is_symmetric_channel(enc, reg, target, 1e-9).symmetric);

  // Inputs that are not the left regular representation are rejected.
  REQUIRE_THROWS_AS(encoder_channel(z4, target, target, rho), GroupMismatch);
  Representation right = right_regular_representation(z4);
  REQUIRE_THROWS_AS(encoder_channel(z4, right, target, rho), GroupMismatch);
}
