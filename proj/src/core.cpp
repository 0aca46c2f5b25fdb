#include "nonclass/core.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace nonclass {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw DimensionMismatch(std::string(what) + ": matrix is not square");
  }
}

Matrix ginibre(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

}  // namespace

double hermitian_defect(const Matrix& m) {
  require_square(m, "hermitian_defect");
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityOperator::DensityOperator(Matrix matrix, int dim_a, int dim_b)
    : matrix_(std::move(matrix)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a_ < 1 || dim_b_ < 1) {
    throw InvalidState("subsystem dimensions must be positive");
  }
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a_) * dim_b_;
  if (matrix_.rows() != d || matrix_.cols() != d) {
    throw InvalidState("density matrix must be " + std::to_string(d) + "x" + std::to_string(d));
  }
  if (!matrix_.allFinite()) {
    throw InvalidState("density matrix has non-finite entries");
  }
  const double asym = hermitian_defect(matrix_);
  if (asym > tol::hermitian_repair) {
    throw InvalidState("density matrix is not Hermitian (defect " + std::to_string(asym) + ")");
  }
  if (asym > 0.0) {
    matrix_ = (0.5 * (matrix_ + matrix_.adjoint())).eval();
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::trace) {
    throw InvalidState("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  }
  const RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(matrix_, Eigen::EigenvaluesOnly).eigenvalues();
  if (ev.minCoeff() < -tol::psd) {
    throw InvalidState("density matrix is not positive semidefinite (min eigenvalue " +
                       std::to_string(ev.minCoeff()) + ")");
  }
}

double DensityOperator::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  return matrix_.squaredNorm();
}

UnitaryOperator::UnitaryOperator(Matrix matrix) : matrix_(std::move(matrix)) {
  require_square(matrix_, "UnitaryOperator");
  if (matrix_.rows() < 1) {
    throw InvalidState("unitary must have positive dimension");
  }
  const Matrix defect = matrix_.adjoint() * matrix_ - Matrix::Identity(matrix_.rows(), matrix_.cols());
  if (defect.cwiseAbs().maxCoeff() > tol::unitary) {
    throw InvalidState("matrix is not unitary within tolerance");
  }
}

UnitaryOperator UnitaryOperator::identity(int dim) { return UnitaryOperator(Matrix::Identity(dim, dim)); }

PureState::PureState(Vector amplitudes, int dim_a, int dim_b)
    : amplitudes_(std::move(amplitudes)), dim_a_(dim_a), dim_b_(dim_b) {
  if (dim_a_ < 1 || dim_b_ < 1 || amplitudes_.size() != static_cast<Eigen::Index>(dim_a_) * dim_b_) {
    throw InvalidState("pure state amplitude count does not match dimensions");
  }
  if (std::abs(amplitudes_.norm() - 1.0) > tol::pure_norm) {
    throw InvalidState("pure state is not normalized");
  }
}

DensityOperator PureState::density() const {
  return DensityOperator(amplitudes_ * amplitudes_.adjoint(), dim_a_, dim_b_);
}

RealVector PureState::schmidt_coefficients() const {
  Matrix coeffs(dim_a_, dim_b_);
  for (int a = 0; a < dim_a_; ++a) {
    for (int b = 0; b < dim_b_; ++b) {
      coeffs(a, b) = amplitudes_(a * dim_b_ + b);
    }
  }
  // singular values are returned in decreasing order
  return Eigen::JacobiSVD<Matrix>(coeffs).singularValues();
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix partial_trace(const Matrix& m, int dim_a, int dim_b, Subsystem keep) {
  const Eigen::Index d = static_cast<Eigen::Index>(dim_a) * dim_b;
  if (m.rows() != d || m.cols() != d) {
    throw DimensionMismatch("partial_trace: matrix does not match dim_a * dim_b");
  }
  if (keep == Subsystem::A) {
    Matrix out = Matrix::Zero(dim_a, dim_a);
    for (int a = 0; a < dim_a; ++a) {
      for (int c = 0; c < dim_a; ++c) {
        out(a, c) = m.block(a * dim_b, c * dim_b, dim_b, dim_b).trace();
      }
    }
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (int a = 0; a < dim_a; ++a) {
    out += m.block(a * dim_b, a * dim_b, dim_b, dim_b);
  }
  return out;
}

Matrix partial_trace(const DensityOperator& rho, Subsystem keep) {
  return partial_trace(rho.matrix(), rho.dim_a(), rho.dim_b(), keep);
}

HermitianEigen eig_hermitian(const Matrix& h) {
  require_square(h, "eig_hermitian");
  if (hermitian_defect(h) > tol::hermitian) {
    throw std::invalid_argument("eig_hermitian: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix expi_hermitian(const Matrix& h) {
  const HermitianEigen e = eig_hermitian(h);
  Vector phases(e.values.size());
  for (Eigen::Index k = 0; k < e.values.size(); ++k) {
    phases(k) = std::polar(1.0, e.values(k));
  }
  return e.vectors * phases.asDiagonal() * e.vectors.adjoint();
}

DensityOperator random_density(int m, int n, int rank, std::uint64_t seed) {
  if (m < 1 || n < 1) {
    throw std::invalid_argument("random_density: dimensions must be positive");
  }
  if (rank < 1 || rank > m * n) {
    throw std::invalid_argument("random_density: rank must lie in [1, m*n]");
  }
  const Matrix g = ginibre(static_cast<Eigen::Index>(m) * n, rank, seed);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = (0.5 * (rho + rho.adjoint())).eval();
  return DensityOperator(std::move(rho), m, n);
}

UnitaryOperator random_haar_unitary(int m, std::uint64_t seed) {
  if (m < 1) {
    throw std::invalid_argument("random_haar_unitary: dimension must be positive");
  }
  const Matrix g = ginibre(m, m, seed);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < m; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) {
      q.col(j) *= r(j, j) / mag;
    }
  }
  return UnitaryOperator(std::move(q));
}

double frobenius_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("frobenius_distance: dimension mismatch");
  }
  return (a - b).norm();
}

Matrix conjugate_on_a(const Matrix& rho, const Matrix& u, int dim_b) {
  const Eigen::Index m = u.rows();
  if (u.cols() != m || rho.rows() != m * dim_b || rho.cols() != m * dim_b) {
    throw DimensionMismatch("conjugate_on_a: unitary does not act on the leading factor");
  }
  // (U (x) I) rho: block row a is sum_a' U(a, a') rho_[a', :]
  Matrix left = Matrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index a = 0; a < m; ++a) {
    for (Eigen::Index ap = 0; ap < m; ++ap) {
      left.middleRows(a * dim_b, dim_b).noalias() += u(a, ap) * rho.middleRows(ap * dim_b, dim_b);
    }
  }
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (Eigen::Index c = 0; c < m; ++c) {
    for (Eigen::Index cp = 0; cp < m; ++cp) {
      out.middleCols(c * dim_b, dim_b).noalias() += std::conj(u(c, cp)) * left.middleCols(cp * dim_b, dim_b);
    }
  }
  return out;
}

double von_neumann_entropy(const Matrix& h) {
  const RealVector ev = Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
  double s = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    const double x = ev(k);
    if (x > 0.0) {
      s -= x * std::log2(x);
    }
  }
  return s;
}

}  // namespace nonclass
