#include "nonclass/discord.hpp"

#include "nonclass/fano.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

namespace nonclass {

namespace {

constexpr double kProjectorTol = 1e-9;
constexpr double kCompletenessTol = 1e-10;
constexpr double kNegativeDiscordSlack = 1e-9;
constexpr double kMinOutcomeProbability = 1e-15;
constexpr std::array<std::pair<double, double>, 4> kMoves{{{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}};

MultiplicityVector multiplicities_of(const std::vector<Matrix>& projectors) {
  if (projectors.empty()) {
    throw std::invalid_argument("projective measurement needs at least one projector");
  }
  const Eigen::Index m = projectors.front().rows();
  std::vector<int> counts(m, 0);
  Matrix total = Matrix::Zero(m, m);
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    const Matrix& p = projectors[i];
    if (p.rows() != m || p.cols() != m) {
      throw DimensionMismatch("projective measurement: projector dimensions differ");
    }
    if (hermitian_defect(p) > kProjectorTol || (p * p - p).cwiseAbs().maxCoeff() > kProjectorTol) {
      throw std::invalid_argument("projective measurement: element " + std::to_string(i) + " is not a projector");
    }
    for (std::size_t j = i + 1; j < projectors.size(); ++j) {
      if ((p * projectors[j]).cwiseAbs().maxCoeff() > kProjectorTol) {
        throw std::invalid_argument("projective measurement: projectors are not orthogonal");
      }
    }
    const long rank = std::lround(p.trace().real());
    if (rank < 1 || rank > m) {
      throw std::invalid_argument("projective measurement: projector rank out of range");
    }
    counts[rank - 1] += 1;
    total += p;
  }
  if ((total - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() > kCompletenessTol) {
    throw std::invalid_argument("projective measurement: projectors do not sum to the identity");
  }
  return MultiplicityVector(std::move(counts));
}

// Column blocks of an orthonormal basis, one isometry per outcome.
std::vector<Matrix> split_columns(const Matrix& basis, const std::vector<int>& block_sizes) {
  std::vector<Matrix> out;
  Eigen::Index col = 0;
  for (const int size : block_sizes) {
    out.push_back(basis.middleCols(col, size));
    col += size;
  }
  if (col != basis.cols()) {
    throw DimensionMismatch("block sizes do not cover the basis");
  }
  return out;
}

// sum_j p_j [S(rho_j) - S(tr_B rho_j)] with each outcome compressed onto the
// range of its isometry W_j.
double conditional_entropy_isometries(const Matrix& rho, int dim_b, const std::vector<Matrix>& isometries) {
  const Matrix id_b = Matrix::Identity(dim_b, dim_b);
  double s = 0.0;
  for (const Matrix& w : isometries) {
    const Matrix lift = kron(w, id_b);
    const Matrix compressed = lift.adjoint() * rho * lift;
    const double p = compressed.trace().real();
    if (p <= kMinOutcomeProbability) continue;
    const Matrix state = compressed / p;
    double term = von_neumann_entropy(state);
    if (w.cols() > 1) {
      term -= von_neumann_entropy(partial_trace(state, static_cast<int>(w.cols()), dim_b, Subsystem::A));
    }
    s += p * term;
  }
  return s;
}

double entropy_baseline(const DensityOperator& rho) {
  return von_neumann_entropy(partial_trace(rho, Subsystem::A)) - von_neumann_entropy(rho.matrix());
}

double finish_discord(double value) {
  if (value < -kNegativeDiscordSlack) {
    throw std::logic_error("discord evaluated to " + std::to_string(value));
  }
  return std::max(0.0, value);
}

Matrix qubit_basis(double theta, double phi) {
  Matrix b(2, 2);
  b(0, 0) = std::cos(theta / 2.0);
  b(1, 0) = std::polar(std::sin(theta / 2.0), phi);
  b(0, 1) = -std::conj(b(1, 0));
  b(1, 1) = std::conj(b(0, 0));
  return b;
}

double invariance_defect_squared(const Matrix& rho, int dim_b, const std::vector<Matrix>& projectors) {
  Matrix dephased = Matrix::Zero(rho.rows(), rho.cols());
  for (const Matrix& p : projectors) {
    dephased += conjugate_on_a(rho, p, dim_b);
  }
  return (rho - dephased).squaredNorm();
}

}  // namespace

ProjectiveMeasurement::ProjectiveMeasurement(std::vector<Matrix> projectors)
    : projectors_(std::move(projectors)), multiplicities_(multiplicities_of(projectors_)) {}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(const Matrix& basis, const std::vector<int>& block_sizes) {
  std::vector<Matrix> projectors;
  for (const Matrix& w : split_columns(basis, block_sizes)) {
    projectors.push_back(w * w.adjoint());
  }
  return ProjectiveMeasurement(std::move(projectors));
}

ProjectiveMeasurement ProjectiveMeasurement::rank_one(const Matrix& basis) {
  return from_basis(basis, std::vector<int>(basis.cols(), 1));
}

ProjectiveMeasurement ProjectiveMeasurement::trivial(int m) { return ProjectiveMeasurement({Matrix::Identity(m, m)}); }

double projective_invariance_defect(const DensityOperator& rho, const ProjectiveMeasurement& meas) {
  if (meas.dim() != rho.dim_a()) {
    throw DimensionMismatch("projective_invariance_defect: measurement must act on subsystem A");
  }
  return std::sqrt(invariance_defect_squared(rho.matrix(), rho.dim_b(), meas.projectors()));
}

double fano_offdiagonal_defect(const DensityOperator& rho, const Matrix& basis_vectors) {
  const FanoForm f = fano_decompose(rho, basis_vectors);
  const int rows = f.basis_a.offdiagonal_count();
  return std::sqrt(f.r_a.head(rows).squaredNorm() + f.t.topRows(rows).squaredNorm());
}

BasisSearch min_fano_offdiagonal_defect(const DensityOperator& rho, const OptimizerConfig& config) {
  const auto objective = [&](const Matrix& basis) {
    const double d = fano_offdiagonal_defect(rho, basis);
    return d * d;
  };
  const UnitarySearchResult r = minimize_over_bases(rho.dim_a(), objective, config);
  return {std::sqrt(std::max(0.0, r.value)), r.basis, r.converged};
}

BasisSearch min_projective_invariance_defect(const DensityOperator& rho, const MultiplicityVector& v,
                                             const OptimizerConfig& config) {
  if (v.dim() != rho.dim_a()) {
    throw DimensionMismatch("min_projective_invariance_defect: multiplicity vector length must equal dim_a");
  }
  // Dephasing removes exactly the blocks that couple different outcomes.
  std::vector<int> outcome;
  const std::vector<int> sizes = v.block_sizes();
  for (std::size_t b = 0; b < sizes.size(); ++b) outcome.insert(outcome.end(), sizes[b], static_cast<int>(b));
  const int m = rho.dim_a();
  RealMatrix w(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) w(i, j) = outcome[i] == outcome[j] ? 0.0 : 1.0;
  }
  const UnitarySearchResult r = minimize_block_weighted(rho, {w}, config);
  return {std::sqrt(std::max(0.0, r.value)), r.basis, r.converged};
}

ClassicalBasisSearch find_classical_basis(const DensityOperator& rho, const ClassicalityConfig& config) {
  const MeasureResult m = minimize_d(rho, config.optimizer);
  ClassicalBasisSearch out;
  out.d = m.value;
  out.converged = m.converged;
  out.defect = rho.dim_a() >= 2 ? fano_offdiagonal_defect(rho, m.eigenbasis) : 0.0;
  if (m.value < config.zero_tol) {
    if (out.defect >= 10.0 * config.zero_tol) {
      throw std::logic_error("find_classical_basis: optimizing basis leaves off-diagonal Fano coefficients");
    }
    out.basis = m.eigenbasis;
  }
  return out;
}

double conditional_entropy(const DensityOperator& rho, const ProjectiveMeasurement& meas) {
  if (meas.dim() != rho.dim_a()) {
    throw DimensionMismatch("conditional_entropy: measurement must act on subsystem A");
  }
  std::vector<Matrix> isometries;
  for (const Matrix& p : meas.projectors()) {
    const HermitianEigen e = eig_hermitian(p);
    const long rank = std::lround(p.trace().real());
    isometries.push_back(e.vectors.rightCols(rank));
  }
  return conditional_entropy_isometries(rho.matrix(), rho.dim_b(), isometries);
}

double discord_numeric(const DensityOperator& rho, int grid) {
  if (rho.dim_a() != 2) {
    throw DimensionMismatch("discord_numeric: subsystem A must be a qubit");
  }
  if (grid < 2) {
    throw std::invalid_argument("discord_numeric: grid must have at least 2 points per axis");
  }
  const Matrix& r = rho.matrix();
  const int n = rho.dim_b();
  const auto cond = [&](double theta, double phi) {
    const Matrix b = qubit_basis(theta, phi);
    return conditional_entropy_isometries(r, n, {b.col(0), b.col(1)});
  };

  struct Cell {
    double value;
    double theta;
    double phi;
  };
  std::vector<Cell> cells;
  cells.reserve(static_cast<std::size_t>(grid) * grid);
  const double dtheta = std::numbers::pi / (grid - 1);
  const double dphi = 2.0 * std::numbers::pi / grid;
  for (int i = 0; i < grid; ++i) {
    for (int j = 0; j < grid; ++j) {
      const double theta = i * dtheta;
      const double phi = j * dphi;
      cells.push_back({cond(theta, phi), theta, phi});
    }
  }
  const std::size_t seeds = std::min<std::size_t>(3, cells.size());
  std::partial_sort(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(seeds), cells.end(),
                    [](const Cell& a, const Cell& b) { return a.value < b.value; });

  double best = cells.front().value;
  for (std::size_t s = 0; s < seeds; ++s) {
    Cell c = cells[s];
    double st = dtheta;
    double sp = dphi;
    while (st > 1e-10) {
      bool improved = false;
      for (const auto& [a, b] : kMoves) {
        const double theta = c.theta + a * st;
        const double phi = c.phi + b * sp;
        const double v = cond(theta, phi);
        if (v < c.value) {
          c = {v, theta, phi};
          improved = true;
        }
      }
      if (!improved) {
        st *= 0.5;
        sp *= 0.5;
      }
    }
    best = std::min(best, c.value);
  }
  return finish_discord(entropy_baseline(rho) + best);
}

double generalized_discord_numeric(const DensityOperator& rho, const MultiplicityVector& v,
                                   const OptimizerConfig& config) {
  const int m = rho.dim_a();
  if (m > 4) {
    throw std::invalid_argument("generalized_discord_numeric: supported for dim_a <= 4");
  }
  if (v.dim() != m) {
    throw DimensionMismatch("generalized_discord_numeric: multiplicity vector length must equal dim_a");
  }
  const std::vector<int> sizes = v.block_sizes();
  const Matrix& r = rho.matrix();
  const int n = rho.dim_b();
  const auto objective = [&](const Matrix& basis) {
    return conditional_entropy_isometries(r, n, split_columns(basis, sizes));
  };
  if (m == 1 || sizes.size() == 1) {
    return finish_discord(entropy_baseline(rho) + objective(Matrix::Identity(m, m)));
  }
  // The entropy landscape has kinks where outcome states lose rank, and the
  // search alone can stall next to them. Structured candidates: the basis that
  // makes the measurement least disturbing, and the eigenbasis of rho_A under
  // every column order.
  double best = minimize_over_bases(m, objective, config).value;
  best = std::min(best, objective(min_projective_invariance_defect(rho, v, config).basis));
  const Matrix marginal_basis = eig_hermitian(partial_trace(rho, Subsystem::A)).vectors;
  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  do {
    Matrix permuted(m, m);
    for (int i = 0; i < m; ++i) permuted.col(i) = marginal_basis.col(order[i]);
    best = std::min(best, objective(permuted));
  } while (std::next_permutation(order.begin(), order.end()));
  return finish_discord(entropy_baseline(rho) + best);
}

ClassificationReport classify(const DensityOperator& rho, const ClassicalityConfig& config) {
  const ClassicalBasisSearch search = find_classical_basis(rho, config);
  ClassificationReport out;
  out.d = search.d;
  out.classical_basis_found = search.basis.has_value();
  out.defect = search.defect;
  if (rho.dim_a() == 2) {
    out.discord = discord_numeric(rho);
  }
  return out;
}

}  // namespace nonclass
