#include "nonclass/core.hpp"

#include <doctest.h>

#include <cmath>

using namespace nonclass;

namespace {

// Index-loop partial trace, independent of the block implementation.
Matrix partial_trace_oracle(const Matrix& rho, int m, int n, Subsystem keep) {
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < n; ++k) out(i, j) += rho(i * n + k, j * n + k);
    return out;
  }
  Matrix out = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < m; ++k) out(i, j) += rho(k * n + i, k * n + j);
  return out;
}

Matrix bell_matrix() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return v * v.adjoint();
}

}  // namespace

TEST_CASE("density operator validation") {
  CHECK_NOTHROW(DensityOperator(bell_matrix(), 2, 2));
  CHECK_THROWS_AS(DensityOperator(bell_matrix(), 2, 3), InvalidState);

  Matrix twice = 2.0 * bell_matrix();
  CHECK_THROWS_AS(DensityOperator(twice, 2, 2), InvalidState);

  Matrix negative = Matrix::Zero(4, 4);
  negative.diagonal() << 0.6, 0.6, -0.1, -0.1;
  CHECK_THROWS_AS(DensityOperator(negative, 2, 2), InvalidState);

  Matrix skew = Matrix::Identity(4, 4) / 4.0;
  skew(0, 1) = 0.1;
  CHECK_THROWS_AS(DensityOperator(skew, 2, 2), InvalidState);
}

TEST_CASE("tiny anti-Hermitian parts are symmetrized") {
  Matrix m = Matrix::Identity(4, 4) / 4.0;
  m(0, 1) = 1e-9;
  const DensityOperator rho(m, 2, 2);
  CHECK(hermitian_defect(rho.matrix()) == 0.0);
  CHECK(std::abs(rho.matrix()(0, 1).real() - 5e-10) < 1e-20);
}

TEST_CASE("purity") {
  CHECK(DensityOperator(bell_matrix(), 2, 2).purity() == doctest::Approx(1.0));
  CHECK(DensityOperator(Matrix::Identity(6, 6) / 6.0, 2, 3).purity() == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("partial trace matches the index-loop oracle") {
  for (const auto& [m, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 4}}) {
    const DensityOperator rho = random_density(m, n, m * n, 17 + m * 10 + n);
    for (const Subsystem keep : {Subsystem::A, Subsystem::B}) {
      const Matrix expected = partial_trace_oracle(rho.matrix(), m, n, keep);
      CHECK((partial_trace(rho, keep) - expected).norm() < 1e-14);
    }
  }
}

TEST_CASE("partial trace of a product state returns the factors") {
  Matrix a(2, 2);
  a << 0.7, Complex(0.1, 0.2), Complex(0.1, -0.2), 0.3;
  const Matrix b = Matrix::Identity(3, 3) / 3.0;
  const Matrix ab = kron(a, b);
  CHECK((partial_trace(ab, 2, 3, Subsystem::A) - a).norm() < 1e-15);
  CHECK((partial_trace(ab, 2, 3, Subsystem::B) - b).norm() < 1e-15);
}

TEST_CASE("kron entries") {
  Matrix a(2, 2);
  a << 1, 2, 3, 4;
  Matrix b(2, 2);
  b << 0, 1, 1, 0;
  const Matrix k = kron(a, b);
  CHECK(k(0, 1) == Complex(1.0));
  CHECK(k(1, 2) == Complex(2.0));
  CHECK(k(3, 2) == Complex(4.0));
  CHECK(k(2, 2) == Complex(0.0));
}

TEST_CASE("random density operators are valid and seeded") {
  const DensityOperator r1 = random_density(2, 3, 2, 5);
  const DensityOperator r2 = random_density(2, 3, 2, 5);
  CHECK(r1.matrix() == r2.matrix());
  const HermitianEigen e = eig_hermitian(r1.matrix());
  int positive = 0;
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    CHECK(e.values(k) > -1e-12);
    if (e.values(k) > 1e-10) ++positive;
  }
  CHECK(positive == 2);
  CHECK(std::abs(r1.matrix().trace().real() - 1.0) < 1e-14);
  CHECK_THROWS_AS(random_density(2, 2, 5, 1), std::invalid_argument);
}

TEST_CASE("Haar unitaries are unitary and seeded") {
  for (int m = 1; m <= 5; ++m) {
    const Matrix u = random_haar_unitary(m, 40 + m).matrix();
    CHECK((u.adjoint() * u - Matrix::Identity(m, m)).norm() < 1e-13);
  }
  CHECK(random_haar_unitary(3, 9).matrix() == random_haar_unitary(3, 9).matrix());
  CHECK(random_haar_unitary(3, 9).matrix() != random_haar_unitary(3, 10).matrix());
}

TEST_CASE("unitary validation") {
  Matrix m = Matrix::Identity(2, 2);
  m(0, 0) = 1.1;
  CHECK_THROWS_AS(UnitaryOperator{m}, std::invalid_argument);
  CHECK(UnitaryOperator::identity(3).matrix() == Matrix::Identity(3, 3));
}

TEST_CASE("expi_hermitian") {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  const Matrix u = expi_hermitian(0.3 * z);
  CHECK(std::abs(u(0, 0) - std::polar(1.0, 0.3)) < 1e-15);
  CHECK(std::abs(u(1, 1) - std::polar(1.0, -0.3)) < 1e-15);
  CHECK_THROWS(expi_hermitian(Matrix::Identity(2, 2) * Complex(0.0, 1.0)));
}

TEST_CASE("conjugate_on_a agrees with the full Kronecker product") {
  const DensityOperator rho = random_density(3, 2, 6, 3);
  const Matrix u = random_haar_unitary(3, 4).matrix();
  const Matrix full = kron(u, Matrix::Identity(2, 2));
  CHECK((conjugate_on_a(rho.matrix(), u, 2) - full * rho.matrix() * full.adjoint()).norm() < 1e-14);
  CHECK_THROWS_AS(conjugate_on_a(rho.matrix(), u, 3), DimensionMismatch);
}

TEST_CASE("von Neumann entropy in bits") {
  CHECK(von_neumann_entropy(Matrix::Identity(4, 4) / 4.0) == doctest::Approx(2.0));
  CHECK(von_neumann_entropy(bell_matrix()) == doctest::Approx(0.0).epsilon(1e-12));
  Matrix diag = Matrix::Zero(2, 2);
  diag.diagonal() << 0.25, 0.75;
  const double h = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(von_neumann_entropy(diag) == doctest::Approx(h));
}

TEST_CASE("pure states and Schmidt coefficients") {
  Vector amp = Vector::Zero(6);
  amp(0) = 0.6;
  amp(4) = 0.8;  // |1>|1> in 2 x 3
  const PureState psi(amp, 2, 3);
  const RealVector s = psi.schmidt_coefficients();
  REQUIRE(s.size() == 2);
  CHECK(s(0) == doctest::Approx(0.8));
  CHECK(s(1) == doctest::Approx(0.6));
  CHECK(psi.density().purity() == doctest::Approx(1.0));
  CHECK_THROWS_AS(PureState(amp * 2.0, 2, 3), InvalidState);
  CHECK_THROWS_AS(PureState(amp, 2, 2), InvalidState);
}

TEST_CASE("frobenius distance") {
  const Matrix a = Matrix::Identity(2, 2);
  Matrix b = a;
  b(0, 1) = Complex(3.0, 4.0);
  CHECK(frobenius_distance(a, b) == doctest::Approx(5.0));
  CHECK_THROWS_AS(frobenius_distance(a, Matrix::Identity(3, 3)), DimensionMismatch);
}
