#pragma once

#include "nonclass/core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace nonclass {

/// Unitary whose spectrum is a permutation of the M-th roots of unity,
/// V diag(v_{pi(1)}, ..., v_{pi(M)}) V^dagger with v_k = exp(2 pi i k / M).
/// `permutation` is 0-based: entry j holds pi(j+1) - 1.
class RUUnitary {
 public:
  RUUnitary(Matrix eigenbasis, std::vector<int> permutation);

  int dim() const { return static_cast<int>(eigenbasis_.rows()); }
  const Matrix& eigenbasis() const { return eigenbasis_; }
  const std::vector<int>& permutation() const { return permutation_; }
  UnitaryOperator realize() const;

 private:
  Matrix eigenbasis_;
  std::vector<int> permutation_;
};

RUUnitary make_ru_unitary(int m, const Matrix& eigenbasis, std::vector<int> permutation);

/// Eigenvalue multiplicity pattern: counts[j-1] distinct eigenvalues of
/// multiplicity j, with sum_j j * counts[j-1] = M.
class MultiplicityVector {
 public:
  explicit MultiplicityVector(std::vector<int> counts);

  /// (M, 0, ..., 0): every eigenvalue simple.
  static MultiplicityVector nondegenerate(int m);
  /// (0, ..., 0, 1): a single eigenvalue.
  static MultiplicityVector trivial(int m);

  int dim() const { return static_cast<int>(counts_.size()); }
  const std::vector<int>& counts() const { return counts_; }
  int distinct_eigenvalues() const;
  int max_multiplicity() const;
  /// Block sizes in descending order.
  std::vector<int> block_sizes() const;
  /// Every distinct ordering of the block sizes.
  std::vector<std::vector<int>> block_orderings() const;
  std::string str() const;

 private:
  std::vector<int> counts_;
};

/// Consecutive eigenbasis columns are grouped into blocks of the given sizes;
/// block k carries eigenvalue exp(2 pi i (k+1) / K), K the number of blocks.
UnitaryOperator make_multiplicity_unitary(const MultiplicityVector& v, const Matrix& eigenbasis,
                                          const std::vector<int>& block_order);

/// D(rho, U) = ||rho - (U (x) I) rho (U (x) I)^dagger||_F / sqrt(2).
double d_given_u(const DensityOperator& rho, const UnitaryOperator& u);
/// The same quantity through sqrt(tr(rho^2) - tr(rho rho_f)).
double d_given_u_trace_form(const DensityOperator& rho, const UnitaryOperator& u);

bool is_invariant_under(const DensityOperator& rho, const UnitaryOperator& u, double eps);

struct OptimizerConfig {
  int restarts = 32;
  int max_iters = 2000;
  double tol = 1e-10;
  std::uint64_t seed = 20120401;
  /// Use the closed form when M = 2. Tests disable it to exercise the optimizer.
  bool closed_form_dispatch = true;
  /// 0 means NONCLASS_THREADS or the hardware concurrency.
  int threads = 0;
};

enum class MeasureMethod { closed_form_2xN, werner_formula, pure_formula, optimizer };

std::string to_string(MeasureMethod m);

struct MeasureResult {
  double value = 0.0;
  UnitaryOperator optimizer_u = UnitaryOperator::identity(1);
  /// Eigenbasis of optimizer_u (columns).
  Matrix eigenbasis;
  MeasureMethod method = MeasureMethod::optimizer;
  int restarts_used = 0;
  int iterations = 0;
  /// Gap between best and second-best restart in the squared objective.
  double residual = 0.0;
  bool converged = true;
};

/// Result of minimizing an objective over eigenbases V.
struct UnitarySearchResult {
  double value = 0.0;  // objective value (not its square root)
  Matrix basis;
  int restarts_used = 0;
  int iterations = 0;
  double residual = 0.0;
  bool converged = true;
};

/// Restarted compass search over V = V0 exp(iH). Only off-diagonal generator
/// directions are probed: diagonal H commutes with any fixed spectrum.
/// Restart k starts from a Haar unitary seeded with config.seed + k.
UnitarySearchResult minimize_over_bases(int m, const std::function<double(const Matrix&)>& objective,
                                        const OptimizerConfig& config);

/// Minimizes sum_{i != j} w_ij ||X_ij||_F^2 over V, X = (V^dagger (x) I) rho (V (x) I)
/// cut into dim_b x dim_b blocks. Both D(rho, U)^2 and the dephasing defect of a
/// projective measurement have this form in the eigenbasis V. With several
/// weight matrices, restart k uses weights[k mod count].
UnitarySearchResult minimize_block_weighted(const DensityOperator& rho, const std::vector<RealMatrix>& weights,
                                            const OptimizerConfig& config, int* winning_variant = nullptr);

MeasureResult minimize_d(const DensityOperator& rho, const OptimizerConfig& config = {});

MeasureResult minimize_d_multiplicity(const DensityOperator& rho, const MultiplicityVector& v,
                                      const OptimizerConfig& config = {});

/// Threads to use: config.threads if positive, else NONCLASS_THREADS, else
/// hardware concurrency.
int resolve_threads(int requested);

/// Runs fn(i) for i in [0, count) on up to `threads` workers.
void parallel_for(int count, int threads, const std::function<void(int)>& fn);

}  // namespace nonclass
