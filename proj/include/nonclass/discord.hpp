#pragma once

#include "nonclass/core.hpp"
#include "nonclass/measure.hpp"

#include <optional>
#include <vector>

namespace nonclass {

/// Complete orthogonal projective measurement on subsystem A. The multiplicity
/// vector is derived from the projector ranks.
class ProjectiveMeasurement {
 public:
  explicit ProjectiveMeasurement(std::vector<Matrix> projectors);

  /// Projectors onto consecutive column blocks of `basis`.
  static ProjectiveMeasurement from_basis(const Matrix& basis, const std::vector<int>& block_sizes);
  static ProjectiveMeasurement rank_one(const Matrix& basis);
  static ProjectiveMeasurement trivial(int m);

  int dim() const { return static_cast<int>(projectors_.front().rows()); }
  const std::vector<Matrix>& projectors() const { return projectors_; }
  const MultiplicityVector& multiplicities() const { return multiplicities_; }

 private:
  std::vector<Matrix> projectors_;
  MultiplicityVector multiplicities_;
};

/// ||rho - sum_j (P_j (x) I) rho (P_j (x) I)||_F.
double projective_invariance_defect(const DensityOperator& rho, const ProjectiveMeasurement& meas);

/// Norm of every Fano coefficient (Bloch and correlation rows) attached to the
/// off-diagonal U_pq / V_pq generators built over `basis_vectors`.
double fano_offdiagonal_defect(const DensityOperator& rho, const Matrix& basis_vectors);

struct BasisSearch {
  double value = 0.0;
  Matrix basis;
  bool converged = true;
};

/// min over bases of fano_offdiagonal_defect.
BasisSearch min_fano_offdiagonal_defect(const DensityOperator& rho, const OptimizerConfig& config = {});

/// min over measurements with multiplicity pattern v of projective_invariance_defect.
BasisSearch min_projective_invariance_defect(const DensityOperator& rho, const MultiplicityVector& v,
                                             const OptimizerConfig& config = {});

struct ClassicalityConfig {
  OptimizerConfig optimizer;
  double zero_tol = 1e-7;
};

struct ClassicalBasisSearch {
  std::optional<Matrix> basis;
  double d = 0.0;
  /// fano_offdiagonal_defect at the optimizing eigenbasis.
  double defect = 0.0;
  bool converged = true;
};

/// When D(rho) < zero_tol, returns the eigenbasis of the optimizing RU unitary.
/// Throws std::logic_error if that basis has defect >= 10 zero_tol.
ClassicalBasisSearch find_classical_basis(const DensityOperator& rho, const ClassicalityConfig& config = {});

/// sum_j p_j [S(rho_j) - S(tr_B rho_j)], rho_j = (P_j (x) I) rho (P_j (x) I) / p_j,
/// in bits. For rank-one projectors the subtracted term vanishes.
double conditional_entropy(const DensityOperator& rho, const ProjectiveMeasurement& meas);

/// S(A) - S(AB) + min over rank-one measurements on A of conditional_entropy,
/// for M = 2. Bloch-angle grid of grid x grid points, then local refinement.
double discord_numeric(const DensityOperator& rho, int grid = 64);

/// Same with the measurement class restricted to multiplicity pattern v.
/// Supports M <= 4.
double generalized_discord_numeric(const DensityOperator& rho, const MultiplicityVector& v,
                                   const OptimizerConfig& config = {});

struct ClassificationReport {
  double d = 0.0;
  std::optional<double> discord;  // computed for M = 2
  bool classical_basis_found = false;
  double defect = 0.0;
};

ClassificationReport classify(const DensityOperator& rho, const ClassicalityConfig& config = {});

}  // namespace nonclass
