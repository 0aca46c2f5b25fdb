#pragma once

#include "nonclass/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nonclass {

enum class GeneratorKind { U, V, W };

/// Label of one generator. p < q index the symmetric/antisymmetric pairs and r
/// the diagonal elements; all three are 1-based to match the usual
/// construction.
struct GeneratorTag {
  GeneratorKind kind;
  int p = 0;
  int q = 0;
  int r = 0;

  std::string label() const;
};

/// Traceless Hermitian generators with tr(s_i s_j) = 2 delta_ij, ordered as all
/// U_pq (lexicographic), then all V_pq, then W_1 .. W_{M-1}. The elements are
/// built over the orthonormal columns of `basis`.
struct GeneratorBasis {
  int dim = 0;
  Matrix basis;
  std::vector<Matrix> elements;
  std::vector<GeneratorTag> index_map;

  /// Number of leading U/V (off-diagonal) elements, M(M-1).
  int offdiagonal_count() const { return dim * (dim - 1); }
};

GeneratorBasis generator_basis(int m, const std::optional<Matrix>& basis_vectors = std::nullopt);

/// Bloch vectors and correlation matrix of a bipartite state:
///   rho = (1/MN)(I + r_a.s_a (x) I + I (x) r_b.s_b + sum T_ij s_i (x) s_j).
struct FanoForm {
  int dim_a = 0;
  int dim_b = 0;
  RealVector r_a;
  RealVector r_b;
  RealMatrix t;
  GeneratorBasis basis_a;
  GeneratorBasis basis_b;
};

/// Coefficients r_a = (M/2) tr(rho_A s_i), r_b = (N/2) tr(rho_B s_j),
/// T = (MN/4) tr(s_i (x) s_j rho). Bases default to computational.
FanoForm fano_decompose(const DensityOperator& rho, const std::optional<Matrix>& basis_a = std::nullopt,
                        const std::optional<Matrix>& basis_b = std::nullopt);

/// Reassembled matrix without validation.
Matrix fano_matrix(const FanoForm& f);

/// Throws InvalidState if the coefficients do not describe a state.
DensityOperator fano_reconstruct(const FanoForm& f);

/// Two-qubit only: rotates r_a, r_b and T so that T is diagonal. The result
/// describes a locally rotated state; it is never applied implicitly.
FanoForm diagonalize_correlation(const FanoForm& f);

}  // namespace nonclass
