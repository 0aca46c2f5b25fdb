#include "nonclass/fano.hpp"

#include <doctest.h>

#include <cmath>

using namespace nonclass;

namespace {

DensityOperator bell() {
  Vector v = Vector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return DensityOperator(v * v.adjoint(), 2, 2);
}

}  // namespace

TEST_CASE("generator basis is traceless, Hermitian and orthogonal") {
  for (int m = 2; m <= 5; ++m) {
    const GeneratorBasis g = generator_basis(m);
    REQUIRE(static_cast<int>(g.elements.size()) == m * m - 1);
    CHECK(g.offdiagonal_count() == m * (m - 1));
    for (std::size_t i = 0; i < g.elements.size(); ++i) {
      CHECK(std::abs(g.elements[i].trace()) < 1e-14);
      CHECK(hermitian_defect(g.elements[i]) < 1e-15);
      for (std::size_t j = 0; j < g.elements.size(); ++j) {
        const Complex ip = (g.elements[i] * g.elements[j]).trace();
        CHECK(std::abs(ip - Complex(i == j ? 2.0 : 0.0)) < 1e-13);
      }
    }
  }
  CHECK_THROWS_AS(generator_basis(1), std::invalid_argument);
}

TEST_CASE("generator ordering and labels") {
  const GeneratorBasis g = generator_basis(3);
  const std::vector<std::string> expected = {"U_1_2", "U_1_3", "U_2_3", "V_1_2", "V_1_3", "V_2_3", "W_1", "W_2"};
  REQUIRE(g.index_map.size() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) CHECK(g.index_map[i].label() == expected[i]);

  // qubit generators are the Pauli matrices
  const GeneratorBasis q = generator_basis(2);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  CHECK((q.elements[0] - x).norm() < 1e-15);
  CHECK((q.elements[1] - y).norm() < 1e-15);
  CHECK((q.elements[2] - z).norm() < 1e-15);
}

TEST_CASE("maximally mixed state has vanishing coefficients") {
  const FanoForm f = fano_decompose(DensityOperator(Matrix::Identity(6, 6) / 6.0, 2, 3));
  CHECK(f.r_a.norm() < 1e-15);
  CHECK(f.r_b.norm() < 1e-15);
  CHECK(f.t.norm() < 1e-15);
}

TEST_CASE("Bell state correlation matrix") {
  const FanoForm f = fano_decompose(bell());
  RealMatrix expected = RealMatrix::Zero(3, 3);
  expected.diagonal() << 1.0, -1.0, 1.0;
  CHECK(f.r_a.norm() < 1e-15);
  CHECK(f.r_b.norm() < 1e-15);
  CHECK((f.t - expected).norm() < 1e-14);
}

TEST_CASE("product states factorize") {
  const Matrix a = random_density(2, 1, 2, 11).matrix();
  const Matrix b = random_density(3, 1, 3, 12).matrix();
  const FanoForm f = fano_decompose(DensityOperator(kron(a, b), 2, 3));
  CHECK((f.t - f.r_a * f.r_b.transpose()).norm() < 1e-13);
}

TEST_CASE("decompose then reconstruct is the identity") {
  for (const auto& [m, n] : {std::pair{2, 2}, {2, 3}, {3, 3}, {4, 2}}) {
    const DensityOperator rho = random_density(m, n, m * n, 100 + m + n);
    const FanoForm f = fano_decompose(rho);
    CHECK(f.r_a.size() == m * m - 1);
    CHECK(f.r_b.size() == n * n - 1);
    CHECK((fano_reconstruct(f).matrix() - rho.matrix()).norm() < 1e-13);
  }
}

TEST_CASE("decomposition over a rotated basis") {
  const DensityOperator rho = random_density(3, 2, 6, 5);
  const Matrix v = random_haar_unitary(3, 6).matrix();
  const FanoForm f = fano_decompose(rho, v);
  CHECK((fano_matrix(f) - rho.matrix()).norm() < 1e-13);
  // the rotated decomposition equals the computational one of (V^dagger (x) I) rho (V (x) I)
  const Matrix lift = kron(v, Matrix::Identity(2, 2));
  const FanoForm g = fano_decompose(DensityOperator(lift.adjoint() * rho.matrix() * lift, 3, 2));
  CHECK((f.r_a - g.r_a).norm() < 1e-13);
  CHECK((f.t - g.t).norm() < 1e-13);
}

TEST_CASE("invalid coefficients are rejected") {
  FanoForm f = fano_decompose(bell());
  f.t *= 3.0;
  CHECK_THROWS_AS(fano_reconstruct(f), InvalidState);
}

TEST_CASE("correlation diagonalization keeps invariants") {
  const DensityOperator rho = random_density(2, 2, 3, 8);
  const FanoForm f = fano_decompose(rho);
  const FanoForm d = diagonalize_correlation(f);
  CHECK((d.t - RealMatrix(d.t.diagonal().asDiagonal())).norm() < 1e-14);
  CHECK(d.t.norm() == doctest::Approx(f.t.norm()));
  CHECK(d.t.determinant() == doctest::Approx(f.t.determinant()));
  CHECK(d.r_a.norm() == doctest::Approx(f.r_a.norm()));
  CHECK(d.r_b.norm() == doctest::Approx(f.r_b.norm()));
  // the rotated coefficients still describe a state
  CHECK_NOTHROW(fano_reconstruct(d));
  CHECK_THROWS_AS(diagonalize_correlation(fano_decompose(random_density(2, 3, 6, 1))), DimensionMismatch);
}
