#include "nonclass/fano.hpp"

#include <cmath>
#include <string>

namespace nonclass {

namespace {

double real_part(Complex z, const char* what) {
  if (std::abs(z.imag()) > tol::real_coefficient) {
    throw InvalidState(std::string(what) + " has an imaginary part of " + std::to_string(z.imag()));
  }
  return z.real();
}

// tr(a * b) without forming the product.
Complex trace_product(const Matrix& a, const Matrix& b) { return (a.transpose().cwiseProduct(b)).sum(); }

}  // namespace

std::string GeneratorTag::label() const {
  switch (kind) {
    case GeneratorKind::U:
      return "U_" + std::to_string(p) + "_" + std::to_string(q);
    case GeneratorKind::V:
      return "V_" + std::to_string(p) + "_" + std::to_string(q);
    case GeneratorKind::W:
      return "W_" + std::to_string(r);
  }
  return {};
}

GeneratorBasis generator_basis(int m, const std::optional<Matrix>& basis_vectors) {
  if (m < 2) {
    throw std::invalid_argument("generator_basis: dimension must be at least 2");
  }
  GeneratorBasis out;
  out.dim = m;
  if (basis_vectors) {
    out.basis = UnitaryOperator(*basis_vectors).matrix();
    if (out.basis.rows() != m) {
      throw DimensionMismatch("generator_basis: basis vectors do not match dimension");
    }
  } else {
    out.basis = Matrix::Identity(m, m);
  }
  const Matrix& k = out.basis;
  const Complex i(0.0, 1.0);

  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      const Matrix pq = k.col(p) * k.col(q).adjoint();
      out.elements.push_back(pq + pq.adjoint());
      out.index_map.push_back({GeneratorKind::U, p + 1, q + 1, 0});
    }
  }
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      const Matrix pq = k.col(p) * k.col(q).adjoint();
      out.elements.push_back(-i * pq + i * pq.adjoint());
      out.index_map.push_back({GeneratorKind::V, p + 1, q + 1, 0});
    }
  }
  for (int r = 1; r < m; ++r) {
    Matrix w = Matrix::Zero(m, m);
    for (int j = 0; j < r; ++j) {
      w += k.col(j) * k.col(j).adjoint();
    }
    w -= static_cast<double>(r) * k.col(r) * k.col(r).adjoint();
    out.elements.push_back(std::sqrt(2.0 / (r * (r + 1.0))) * w);
    out.index_map.push_back({GeneratorKind::W, 0, 0, r});
  }
  return out;
}

FanoForm fano_decompose(const DensityOperator& rho, const std::optional<Matrix>& basis_a,
                        const std::optional<Matrix>& basis_b) {
  const int m = rho.dim_a();
  const int n = rho.dim_b();
  FanoForm f;
  f.dim_a = m;
  f.dim_b = n;
  f.basis_a = generator_basis(m, basis_a);
  f.basis_b = generator_basis(n, basis_b);

  const Matrix rho_a = partial_trace(rho, Subsystem::A);
  const Matrix rho_b = partial_trace(rho, Subsystem::B);
  const auto ga = static_cast<Eigen::Index>(f.basis_a.elements.size());
  const auto gb = static_cast<Eigen::Index>(f.basis_b.elements.size());

  f.r_a.resize(ga);
  for (Eigen::Index i = 0; i < ga; ++i) {
    f.r_a(i) = 0.5 * m * real_part(trace_product(rho_a, f.basis_a.elements[i]), "Bloch vector entry");
  }
  f.r_b.resize(gb);
  for (Eigen::Index j = 0; j < gb; ++j) {
    f.r_b(j) = 0.5 * n * real_part(trace_product(rho_b, f.basis_b.elements[j]), "Bloch vector entry");
  }

  const Matrix& r = rho.matrix();
  f.t.resize(ga, gb);
  for (Eigen::Index i = 0; i < ga; ++i) {
    const Matrix& s = f.basis_a.elements[i];
    // x = tr_A((s (x) I) rho)
    Matrix x = Matrix::Zero(n, n);
    for (int a = 0; a < m; ++a) {
      for (int ap = 0; ap < m; ++ap) {
        if (s(a, ap) != Complex(0.0, 0.0)) {
          x += s(a, ap) * r.block(ap * n, a * n, n, n);
        }
      }
    }
    for (Eigen::Index j = 0; j < gb; ++j) {
      f.t(i, j) = 0.25 * m * n * real_part(trace_product(f.basis_b.elements[j], x), "correlation entry");
    }
  }
  return f;
}

Matrix fano_matrix(const FanoForm& f) {
  const int m = f.dim_a;
  const int n = f.dim_b;
  const Matrix id_a = Matrix::Identity(m, m);
  const Matrix id_b = Matrix::Identity(n, n);
  if (f.r_a.size() != m * m - 1 || f.r_b.size() != n * n - 1 || f.t.rows() != f.r_a.size() ||
      f.t.cols() != f.r_b.size() || static_cast<int>(f.basis_a.elements.size()) != m * m - 1 ||
      static_cast<int>(f.basis_b.elements.size()) != n * n - 1) {
    throw DimensionMismatch("fano_matrix: inconsistent coefficient dimensions");
  }
  Matrix sa = Matrix::Zero(m, m);
  for (Eigen::Index i = 0; i < f.r_a.size(); ++i) {
    sa += f.r_a(i) * f.basis_a.elements[i];
  }
  Matrix sb = Matrix::Zero(n, n);
  for (Eigen::Index j = 0; j < f.r_b.size(); ++j) {
    sb += f.r_b(j) * f.basis_b.elements[j];
  }
  Matrix out = kron(id_a, id_b) + kron(sa, id_b) + kron(id_a, sb);
  for (Eigen::Index i = 0; i < f.t.rows(); ++i) {
    Matrix row = Matrix::Zero(n, n);
    for (Eigen::Index j = 0; j < f.t.cols(); ++j) {
      row += f.t(i, j) * f.basis_b.elements[j];
    }
    out += kron(f.basis_a.elements[i], row);
  }
  return out / static_cast<double>(m * n);
}

DensityOperator fano_reconstruct(const FanoForm& f) { return DensityOperator(fano_matrix(f), f.dim_a, f.dim_b); }

FanoForm diagonalize_correlation(const FanoForm& f) {
  if (f.dim_a != 2 || f.dim_b != 2) {
    throw DimensionMismatch("diagonalize_correlation: two-qubit states only");
  }
  Eigen::JacobiSVD<RealMatrix> svd(f.t, Eigen::ComputeFullU | Eigen::ComputeFullV);
  RealMatrix u = svd.matrixU();
  RealMatrix v = svd.matrixV();
  RealVector s = svd.singularValues();
  // keep both rotations proper; the sign moves onto the last singular value
  if (u.determinant() < 0.0) {
    u.col(2) *= -1.0;
    s(2) *= -1.0;
  }
  if (v.determinant() < 0.0) {
    v.col(2) *= -1.0;
    s(2) *= -1.0;
  }
  FanoForm out = f;
  out.t = s.asDiagonal();
  out.r_a = u.transpose() * f.r_a;
  out.r_b = v.transpose() * f.r_b;
  return out;
}

}  // namespace nonclass
