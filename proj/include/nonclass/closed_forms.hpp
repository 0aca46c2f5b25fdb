#pragma once

#include "nonclass/core.hpp"
#include "nonclass/measure.hpp"

#include <cstdint>
#include <vector>

namespace nonclass {

// ---- 2 x N states ----------------------------------------------------------

/// 2 sqrt(lambda_min(tr_B(rho^2))).
double upper_bound_2xN(const DensityOperator& rho);

struct ClosedForm2xN {
  double value = 0.0;
  /// Bloch vector of the optimal |c> (lambda_max eigenvector).
  RealVector bloch;
  /// |c>; the optimal RU unitary is 2|c><c| - I.
  Vector c;
};

/// (1/sqrt N) sqrt(|r_A|^2 + (2/N) sum T_ij^2 - lambda_max(r_A r_A^T + (2/N) T T^T)).
ClosedForm2xN d_closed_2xN_detail(const DensityOperator& rho);
double d_closed_2xN(const DensityOperator& rho);

/// (sqrt 2 / N) sqrt(sum T_ij^2 - lambda_max(T T^T)); tight when r_A = 0.
double lower_bound_2xN(const DensityOperator& rho);

/// Sum of the two largest eigenvalues of T^T T; CHSH is violated iff > 1.
double horodecki_m(const DensityOperator& rho);

/// Unit qubit vector with the given Bloch vector (normalized internally).
Vector qubit_from_bloch(const RealVector& bloch);

// ---- Werner states ---------------------------------------------------------

struct WernerParams {
  int d;
  double p;
  WernerParams(int d, double p);
  /// p = (d+1)/(2d), where both D and the discord vanish.
  static WernerParams zero_discord(int d);
};

DensityOperator werner_state(const WernerParams& params);
/// |2pd - d - 1| / (d^2 - 1).
double werner_d(const WernerParams& params);
/// Closed-form discord of a Werner state in bits, x log x -> 0 at the edges.
double werner_discord(const WernerParams& params);

// ---- Pure states -----------------------------------------------------------

PureState bell_state();
/// a|00> + sqrt(1 - a^2)|11>, a in [0, 1].
PureState schmidt_pure_state(double a);
/// Schmidt form sum_k alphas_k |k>|k> in an M x N system (N >= alphas.size()).
PureState schmidt_state(const RealVector& alphas, int dim_a, int dim_b);
PureState maximally_entangled_state(int m);

/// sqrt(1 - |sum_k alpha_k^2 <k|U|k>|^2) over the computational Schmidt basis.
double pure_state_objective(const RealVector& alphas, const UnitaryOperator& u);

/// True iff minimize_d(|psi><psi|) >= 1 - eps. Requires M <= N.
bool is_maximally_entangled_by_d(const PureState& psi, double eps, const OptimizerConfig& config = {});
/// True iff max_k |alpha_k^2 - 1/M| < eps.
bool is_maximally_entangled_by_schmidt(const PureState& psi, double eps);

// ---- Separable two-qubit ensembles -----------------------------------------

struct SeparableTerm {
  double p;
  Vector a;
  Vector b;
};

/// sum_i p_i |a_i><a_i| (x) |b_i><b_i| on C^2 (x) C^2.
class SeparableEnsemble {
 public:
  explicit SeparableEnsemble(std::vector<SeparableTerm> terms);

  const std::vector<SeparableTerm>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  DensityOperator assemble() const;

 private:
  std::vector<SeparableTerm> terms_;
};

/// Flat-simplex weights and Haar qubit states.
SeparableEnsemble random_separable_ensemble(int n, std::uint64_t seed);

/// p = (1/2, 1/2), a_1 = |0>, b_1 = |0>, a_2 = cos(beta/2)|0> + sin(beta/2)|1>,
/// b_2 = cos(alpha/2)|0> + sin(alpha/2)|1>.
SeparableEnsemble rank2_ensemble(double alpha, double beta);
/// 2|u><u| - I with |u> = cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
RUUnitary rank2_unitary(double theta, double phi);

double separable_d_given_u(const SeparableEnsemble& e, const RUUnitary& u);
/// 1 - max_i p_i.
double separable_upper_bound(const SeparableEnsemble& e);
/// Quantity under the square root of 2 D(rho, U) for rank2_ensemble(alpha, beta)
/// and rank2_unitary(theta, phi).
double rank2_delta(double alpha, double beta, double theta, double phi);
/// p_1 = p_2 = 1/2, |<a_1|a_2>| = 1/sqrt 2 and <b_1|b_2> = 0, each within eps.
bool max_nonclassical_rank2_check(const SeparableEnsemble& e, double eps);

}  // namespace nonclass
