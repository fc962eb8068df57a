#include <cmath>
#include <random>
#include <vector>

#include "catch2/catch_amalgamated.hpp"

#include "asymm/linalg.hpp"
#include "test_util.hpp"

using namespace asymm;
using test_util::frob;
using test_util::max_abs;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("hermitian_eig reconstructs and orders", "[linalg]") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Index dim = 2 + static_cast<Eigen::Index>(rng() % 7);
    Matrix h = test_util::hermitian(dim, rng);
    HermitianEig eig = hermitian_eig(h);

    Matrix recon = eig.eigenvectors *
                   eig.eigenvalues.cast<Complex>().asDiagonal() *
                   eig.eigenvectors.adjoint();
    REQUIRE(frob(recon - h) <= 1e-10 * std::max(1.0, frob(h)));

    Matrix gram = eig.eigenvectors.adjoint() * eig.eigenvectors;
    REQUIRE(max_abs(gram - Matrix::Identity(dim, dim)) < 1e-12);

    for (Eigen::Index i = 1; i < dim; ++i)
      REQUIRE(eig.eigenvalues(i) >= eig.eigenvalues(i - 1));
  }
}

TEST_CASE("hermitian_eig rejects non-hermitian input", "[linalg]") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  REQUIRE_THROWS_AS(hermitian_eig(m), NotHermitian);
}

TEST_CASE("matrix_power satisfies power laws on PSD input", "[linalg]") {
  std::mt19937_64 rng(102);
  for (int trial = 0; trial < 25; ++trial) {
    Matrix h = test_util::psd(4, rng);

    REQUIRE(max_abs(matrix_power(h, 1.0) - h) < 1e-12 * std::max(1.0, max_abs(h)));

    Matrix root = matrix_power(h, 0.5);
    REQUIRE(frob(root * root - h) < 1e-10 * std::max(1.0, frob(h)));

    Matrix a = matrix_power(h, 0.3);
    Matrix b = matrix_power(h, 1.7);
    REQUIRE(frob(a * b - matrix_power(h, 2.0)) <
            1e-9 * std::max(1.0, frob(matrix_power(h, 2.0))));
  }
}

TEST_CASE("matrix_power clips tiny negatives and rejects real ones", "[linalg]") {
  Matrix near = Matrix::Zero(2, 2);
  near(0, 0) = 1.0;
  near(1, 1) = -5e-11;
  Matrix r = matrix_power(near, 0.5);
  REQUIRE(std::abs(r(0, 0).real() - 1.0) < 1e-12);
  REQUIRE(std::abs(r(1, 1)) == 0.0);

  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.0;
  bad(1, 1) = -1.0;
  REQUIRE_THROWS_AS(matrix_power(bad, 0.5), NotPSD);
}

TEST_CASE("matrix_power rejects nonpositive exponents", "[linalg]") {
  Matrix h = Matrix::Zero(3, 3);
  h(0, 0) = 4.0;
  h(1, 1) = 1.0;
  REQUIRE_THROWS_AS(matrix_power(h, -0.5), Error);
  REQUIRE_THROWS_AS(matrix_power(h, 0.0), Error);
}

TEST_CASE("trace_norm matches singular value sums", "[linalg]") {
  Matrix m = Complex(0, 0.5) * pauli_y();
  REQUIRE(trace_norm(m) == Catch::Approx(1.0).margin(1e-12));

  REQUIRE(trace_norm(Matrix::Identity(3, 3)) == Catch::Approx(3.0).margin(1e-12));

  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a = test_util::gaussian(4, 4, rng);
    Matrix b = test_util::gaussian(4, 4, rng);
    REQUIRE(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-10);
    REQUIRE(std::abs(a.trace()) <= trace_norm(a) + 1e-10);
  }
}

TEST_CASE("von_neumann_entropy uses base-2 logarithms", "[linalg]") {
  Matrix half = Matrix::Identity(2, 2) / 2.0;
  REQUIRE(von_neumann_entropy(half) == Catch::Approx(1.0).margin(1e-12));

  Matrix pure = Matrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  REQUIRE(von_neumann_entropy(pure) == Catch::Approx(0.0).margin(1e-12));

  Matrix quarter = Matrix::Identity(4, 4) / 4.0;
  REQUIRE(von_neumann_entropy(quarter) == Catch::Approx(2.0).margin(1e-12));

  Matrix skewed = Matrix::Zero(2, 2);
  skewed(0, 0) = 0.25;
  skewed(1, 1) = 0.75;
  double expected = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  REQUIRE(von_neumann_entropy(skewed) == Catch::Approx(expected).margin(1e-12));

  Matrix not_state = Matrix::Identity(2, 2);
  REQUIRE_THROWS_AS(von_neumann_entropy(not_state), Error);
}

TEST_CASE("kron puts the first factor on the slow index", "[linalg]") {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 2.0;
  Matrix k = kron(a, Matrix::Identity(3, 3));
  REQUIRE(k.rows() == 6);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(std::abs(k(i, i) - 1.0) < 1e-15);
    REQUIRE(std::abs(k(3 + i, 3 + i) - 2.0) < 1e-15);
  }

  std::mt19937_64 rng(104);
  Matrix x = test_util::gaussian(3, 3, rng);
  Matrix y = test_util::gaussian(4, 4, rng);
  REQUIRE(std::abs(kron(x, y).trace() - x.trace() * y.trace()) < 1e-10);
  REQUIRE(frob(kron(x, y).adjoint() - kron(x.adjoint(), y.adjoint())) < 1e-12);
}

TEST_CASE("partial_trace inverts kron on product operators", "[linalg]") {
  std::mt19937_64 rng(105);
  Matrix a = test_util::gaussian(2, 2, rng);
  Matrix b = test_util::gaussian(3, 3, rng);
  Matrix ab = kron(a, b);
  std::vector<Eigen::Index> dims = {2, 3};

  Matrix keep_first = partial_trace(ab, dims, {0});
  REQUIRE(frob(keep_first - b.trace() * a) < 1e-12);

  Matrix keep_second = partial_trace(ab, dims, {1});
  REQUIRE(frob(keep_second - a.trace() * b) < 1e-12);

  Matrix keep_both = partial_trace(ab, dims, {0, 1});
  REQUIRE(frob(keep_both - ab) < 1e-15);

  Matrix keep_none = partial_trace(ab, dims, {});
  REQUIRE(keep_none.rows() == 1);
  REQUIRE(std::abs(keep_none(0, 0) - ab.trace()) < 1e-12);
}

TEST_CASE("partial_trace handles three factors and preserves trace", "[linalg]") {
  std::mt19937_64 rng(106);
  Matrix m = test_util::gaussian(2 * 3 * 2, 2 * 3 * 2, rng);
  std::vector<Eigen::Index> dims = {2, 3, 2};

  Matrix mid = partial_trace(m, dims, {1});
  REQUIRE(mid.rows() == 3);
  REQUIRE(std::abs(mid.trace() - m.trace()) < 1e-10);

  Matrix outer = partial_trace(m, dims, {0, 2});
  REQUIRE(outer.rows() == 4);
  REQUIRE(std::abs(outer.trace() - m.trace()) < 1e-10);

  // Tracing in stages agrees with tracing at once.
  Matrix stage1 = partial_trace(m, dims, {0, 1});
  Matrix stage2 = partial_trace(stage1, {2, 3}, {0});
  Matrix direct = partial_trace(m, dims, {0});
  REQUIRE(frob(stage2 - direct) < 1e-10);
}

TEST_CASE("partial_trace validates dimensions", "[linalg]") {
  Matrix m = Matrix::Identity(4, 4);
  REQUIRE_THROWS_AS(partial_trace(m, {2, 3}, {0}), Error);
}

TEST_CASE("unitary_from_generator exponentiates correctly", "[linalg]") {
  Matrix jz = pauli_z() / 2.0;

  // A full turn about z on a half-integer spin gives minus the identity.
  Matrix full = unitary_from_generator(jz, 2.0 * M_PI);
  REQUIRE(max_abs(full + Matrix::Identity(2, 2)) < 1e-12);

  Matrix quarter = unitary_from_generator(jz, M_PI / 2.0);
  REQUIRE(std::abs(quarter(0, 0) - std::exp(Complex(0, -M_PI / 4.0))) < 1e-12);
  REQUIRE(std::abs(quarter(1, 1) - std::exp(Complex(0, M_PI / 4.0))) < 1e-12);

  std::mt19937_64 rng(107);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix h = test_util::hermitian(5, rng);
    Matrix u = unitary_from_generator(h, 0.37);
    REQUIRE(max_abs(u * u.adjoint() - Matrix::Identity(5, 5)) < 1e-12);
    // Generator direction: d/dtheta at 0 is -i h.
    double theta = 1e-6;
    Matrix fd = (unitary_from_generator(h, theta) - Matrix::Identity(5, 5)) / theta;
    REQUIRE(max_abs(fd - Complex(0, -1) * h) < 1e-5);
  }

  Matrix x = pauli_x(), y = pauli_y(), z = pauli_z();
  Matrix comm = x * y - y * x;
  REQUIRE(max_abs(comm - Complex(0, 2) * z) < 1e-14);
}
