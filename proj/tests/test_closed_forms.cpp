#include "nonclass/closed_forms.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace nonclass;

namespace {

// Two-qubit geometric discord from Pauli expectation values:
// (1/4)(|x|^2 + ||T||^2 - k_max), k_max the top eigenvalue of x x^T + T T^T.
double geometric_discord(const DensityOperator& rho) {
  Matrix p[3] = {Matrix(2, 2), Matrix(2, 2), Matrix(2, 2)};
  p[0] << 0, 1, 1, 0;
  p[1] << 0, Complex(0, -1), Complex(0, 1), 0;
  p[2] << 1, 0, 0, -1;
  const Matrix id = Matrix::Identity(2, 2);
  Eigen::Vector3d x;
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    x(i) = (rho.matrix() * kron(p[i], id)).trace().real();
    for (int j = 0; j < 3; ++j) t(i, j) = (rho.matrix() * kron(p[i], p[j])).trace().real();
  }
  const Eigen::Matrix3d k = x * x.transpose() + t * t.transpose();
  const double kmax = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(k).eigenvalues().maxCoeff();
  return 0.25 * (x.squaredNorm() + t.squaredNorm() - kmax);
}

DensityOperator rotate(const DensityOperator& rho, std::uint64_t seed) {
  const Matrix k = kron(random_haar_unitary(rho.dim_a(), seed).matrix(),
                        random_haar_unitary(rho.dim_b(), seed + 1).matrix());
  return DensityOperator(k * rho.matrix() * k.adjoint(), rho.dim_a(), rho.dim_b());
}

}  // namespace

TEST_CASE("Bell state is maximal") {
  const DensityOperator bell = bell_state().density();
  CHECK(d_closed_2xN(bell) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(horodecki_m(bell) == doctest::Approx(2.0));
  CHECK(upper_bound_2xN(bell) == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("Schmidt family: D = 2ab") {
  for (int i = 0; i <= 10; ++i) {
    const double a = i / 10.0;
    const double b = std::sqrt(1.0 - a * a);
    const DensityOperator rho = schmidt_pure_state(a).density();
    CHECK(std::abs(d_closed_2xN(rho) - 2.0 * a * b) < 1e-12);
    CHECK(horodecki_m(rho) == doctest::Approx(1.0 + 4.0 * a * a * b * b));
  }
  CHECK_THROWS_AS(schmidt_pure_state(1.5), std::invalid_argument);
}

TEST_CASE("two-qubit closed form equals sqrt(2 x geometric discord)") {
  for (int seed = 0; seed < 25; ++seed) {
    const DensityOperator rho = random_density(2, 2, 1 + seed % 4, 900 + seed);
    CHECK(d_closed_2xN(rho) == doctest::Approx(std::sqrt(2.0 * geometric_discord(rho))).epsilon(1e-10));
  }
}

TEST_CASE("closed form detail is consistent") {
  const DensityOperator rho = random_density(2, 3, 4, 3);
  const ClosedForm2xN cf = d_closed_2xN_detail(rho);
  CHECK(cf.value == d_closed_2xN(rho));
  CHECK(cf.c.norm() == doctest::Approx(1.0));
  const UnitaryOperator u(2.0 * cf.c * cf.c.adjoint() - Matrix::Identity(2, 2));
  CHECK(d_given_u(rho, u) == doctest::Approx(cf.value).epsilon(1e-10));
  CHECK((qubit_from_bloch(cf.bloch) * qubit_from_bloch(cf.bloch).adjoint() - cf.c * cf.c.adjoint()).norm() < 1e-12);
  CHECK_THROWS_AS(d_closed_2xN(random_density(3, 2, 6, 1)), DimensionMismatch);
}

TEST_CASE("bound ordering") {
  for (int seed = 0; seed < 40; ++seed) {
    const int n = 2 + seed % 3;
    const DensityOperator rho = random_density(2, n, 1 + seed % (2 * n), 700 + seed);
    const double d = d_closed_2xN(rho);
    CHECK(lower_bound_2xN(rho) <= d + 1e-12);
    CHECK(d <= upper_bound_2xN(rho) + 1e-12);
  }
}

TEST_CASE("lower bound is tight with a maximally mixed A marginal") {
  // (|00> + |11>)/sqrt2 mixed with (|01> + |10>)/sqrt2
  Vector phi = Vector::Zero(4);
  phi(0) = phi(3) = 1.0 / std::sqrt(2.0);
  Vector psi = Vector::Zero(4);
  psi(1) = psi(2) = 1.0 / std::sqrt(2.0);
  const DensityOperator rho(0.7 * phi * phi.adjoint() + 0.3 * psi * psi.adjoint(), 2, 2);
  CHECK(std::abs(lower_bound_2xN(rho) - d_closed_2xN(rho)) < 1e-12);
}

TEST_CASE("local-unitary invariance of the closed form") {
  for (int seed = 0; seed < 10; ++seed) {
    const DensityOperator rho = random_density(2, 3, 6, 40 + seed);
    CHECK(std::abs(d_closed_2xN(rho) - d_closed_2xN(rotate(rho, 80 + seed))) < 1e-12);
  }
}

TEST_CASE("Werner states") {
  CHECK(werner_d({2, 2.0 / 3.0}) == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(werner_discord({2, 2.0 / 3.0}) == doctest::Approx(0.01614).epsilon(3e-3));
  CHECK(werner_d({50, 2.0 / 3.0}) == doctest::Approx(0.00627).epsilon(1e-3));
  CHECK(werner_discord({50, 2.0 / 3.0}) == doctest::Approx(0.07111).epsilon(1e-3));
  // 2/3 = (d+1)/2d at d = 3, the zero-discord point
  CHECK(werner_d({3, 2.0 / 3.0}) == 0.0);
  for (int d = 2; d <= 5; ++d) {
    CHECK(werner_d(WernerParams::zero_discord(d)) == 0.0);
    CHECK(werner_discord(WernerParams::zero_discord(d)) < 1e-12);
  }
  CHECK_THROWS_AS(WernerParams(1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(WernerParams(2, 1.5), std::invalid_argument);
}

TEST_CASE("Werner state construction") {
  const WernerParams w(3, 0.3);
  const DensityOperator rho = werner_state(w);
  CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-14);
  // U (x) U invariance
  const Matrix u = random_haar_unitary(3, 4).matrix();
  const Matrix uu = kron(u, u);
  CHECK((uu * rho.matrix() * uu.adjoint() - rho.matrix()).norm() < 1e-13);
  // p = 1 is the normalized symmetric projector
  const DensityOperator sym = werner_state({2, 1.0});
  CHECK(sym.matrix()(0, 0).real() == doctest::Approx(1.0 / 3.0));
  // D formula against the closed form at d = 2
  for (const double p : {0.0, 0.2, 0.5, 0.9}) {
    CHECK(d_closed_2xN(werner_state({2, p})) == doctest::Approx(werner_d({2, p})).epsilon(1e-12));
  }
}

TEST_CASE("pure-state objective") {
  RealVector alphas(3);
  alphas << 0.6, 0.8, 0.0;
  CHECK(pure_state_objective(alphas, UnitaryOperator::identity(3)) == 0.0);
  Matrix diag = Matrix::Zero(3, 3);
  diag.diagonal() << 1.0, -1.0, 1.0;
  // |0.36 - 0.64|^2 = 0.0784
  CHECK(pure_state_objective(alphas, UnitaryOperator(diag)) == doctest::Approx(std::sqrt(1.0 - 0.0784)));
  CHECK_THROWS_AS(pure_state_objective(alphas, UnitaryOperator::identity(2)), DimensionMismatch);
}

TEST_CASE("maximal entanglement: D test agrees with Schmidt test") {
  OptimizerConfig c;
  c.closed_form_dispatch = false;
  const PureState max3 = maximally_entangled_state(3);
  CHECK(is_maximally_entangled_by_schmidt(max3, 1e-9));
  CHECK(is_maximally_entangled_by_d(max3, 1e-6, c));

  RealVector alphas(3);
  alphas << std::sqrt(0.5), std::sqrt(0.3), std::sqrt(0.2);
  const PureState skew = schmidt_state(alphas, 3, 3);
  CHECK_FALSE(is_maximally_entangled_by_schmidt(skew, 1e-6));
  CHECK_FALSE(is_maximally_entangled_by_d(skew, 1e-6, c));

  CHECK(is_maximally_entangled_by_d(bell_state(), 1e-9));
  CHECK_THROWS_AS(is_maximally_entangled_by_d(schmidt_state(alphas, 3, 2), 1e-6), std::invalid_argument);
}

TEST_CASE("separable ensembles") {
  const SeparableEnsemble e = random_separable_ensemble(3, 12);
  double total = 0.0;
  for (const auto& t : e.terms()) total += t.p;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-15));
  const DensityOperator rho = e.assemble();
  CHECK(d_closed_2xN(rho) <= separable_upper_bound(e) + 1e-12);

  std::vector<SeparableTerm> bad = {{0.5, Vector::Ones(2) / std::sqrt(2.0), Vector::Ones(2) / std::sqrt(2.0)}};
  CHECK_THROWS_AS(SeparableEnsemble{bad}, std::invalid_argument);
}

TEST_CASE("rank-two family") {
  const double pi = std::numbers::pi;
  const SeparableEnsemble best = rank2_ensemble(pi, pi / 2.0);
  CHECK(max_nonclassical_rank2_check(best, 1e-12));
  CHECK_FALSE(max_nonclassical_rank2_check(rank2_ensemble(pi, pi / 3.0), 1e-6));
  CHECK(d_closed_2xN(best.assemble()) == doctest::Approx(0.5).epsilon(1e-12));

  // separable_d_given_u is D(rho, U) for the assembled state, and rank2_delta
  // its closed form: 4 D^2 = delta.
  for (const auto& [alpha, beta, theta, phi] :
       {std::array{pi, pi / 2, pi / 2, 0.0}, {1.0, 2.0, 0.3, 0.4}, {2.5, 0.7, 1.9, 5.0}}) {
    const SeparableEnsemble e = rank2_ensemble(alpha, beta);
    const RUUnitary u = rank2_unitary(theta, phi);
    const double d = separable_d_given_u(e, u);
    CHECK(d == doctest::Approx(d_given_u(e.assemble(), u.realize())).epsilon(1e-12));
    CHECK(4.0 * d * d == doctest::Approx(rank2_delta(alpha, beta, theta, phi)).epsilon(1e-10));
  }
}
