#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>

namespace nonclass {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Validation tolerances. Read-only.
namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double hermitian_repair = 1e-8;
inline constexpr double trace = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double pure_norm = 1e-12;
inline constexpr double real_coefficient = 1e-9;
}  // namespace tol

/// Raised when a matrix fails the density-operator or unitary invariants.
class InvalidState : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { A, B };

/// Bipartite density operator on A (x) B, A being the leading tensor factor.
///
/// Construction validates Hermiticity, unit trace and positivity. Inputs whose
/// anti-Hermitian part is below tol::hermitian_repair are symmetrized; larger
/// asymmetry is rejected.
class DensityOperator {
 public:
  DensityOperator(Matrix matrix, int dim_a, int dim_b);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  int dim() const { return dim_a_ * dim_b_; }
  const Matrix& matrix() const { return matrix_; }

  double purity() const;

 private:
  Matrix matrix_;
  int dim_a_;
  int dim_b_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix matrix);

  static UnitaryOperator identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }

 private:
  Matrix matrix_;
};

class PureState {
 public:
  PureState(Vector amplitudes, int dim_a, int dim_b);

  int dim_a() const { return dim_a_; }
  int dim_b() const { return dim_b_; }
  const Vector& amplitudes() const { return amplitudes_; }

  DensityOperator density() const;
  /// Schmidt coefficients in descending order (min(M, N) of them).
  RealVector schmidt_coefficients() const;

 private:
  Vector amplitudes_;
  int dim_a_;
  int dim_b_;
};

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns are eigenvectors
};

Matrix kron(const Matrix& a, const Matrix& b);

Matrix partial_trace(const DensityOperator& rho, Subsystem keep);
/// Partial trace of an arbitrary (dim_a*dim_b)-square matrix.
Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep);

/// Throws std::invalid_argument when h is not Hermitian within tol::hermitian.
HermitianEigen eig_hermitian(const Matrix& h);

/// exp(i h) for Hermitian h.
Matrix expi_hermitian(const Matrix& h);

/// GG^dagger / tr(GG^dagger) for an (m*n) x rank complex Ginibre matrix G.
DensityOperator random_density(int m, int n, int rank, std::uint64_t seed);

/// Haar unitary from the QR decomposition of a complex Ginibre matrix.
UnitaryOperator random_haar_unitary(int m, std::uint64_t seed);

double frobenius_distance(const Matrix& a, const Matrix& b);

/// (u (x) I) rho (u (x) I)^dagger with u acting on the leading factor.
Matrix conjugate_on_a(const Matrix& rho, const Matrix& u, int dim_b);

/// Max entrywise |m - m^dagger|.
double hermitian_defect(const Matrix& m);

/// Von Neumann entropy in bits with the 0 log 0 = 0 convention.
double von_neumann_entropy(const Matrix& h);

}  // namespace nonclass
