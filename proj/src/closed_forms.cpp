#include "nonclass/closed_forms.hpp"

#include "nonclass/fano.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace nonclass {

namespace {

void require_qubit_a(const DensityOperator& rho, const char* what) {
  if (rho.dim_a() != 2) {
    throw DimensionMismatch(std::string(what) + ": subsystem A must be a qubit");
  }
}

double xlog2(double coeff, double x) { return coeff == 0.0 ? 0.0 : coeff * std::log2(x); }

}  // namespace

double upper_bound_2xN(const DensityOperator& rho) {
  require_qubit_a(rho, "upper_bound_2xN");
  const Matrix sq = rho.matrix() * rho.matrix();
  const Matrix reduced = partial_trace(sq, rho.dim_a(), rho.dim_b(), Subsystem::A);
  const double lmin = eig_hermitian(0.5 * (reduced + reduced.adjoint())).values(0);
  return 2.0 * std::sqrt(std::max(0.0, lmin));
}

Vector qubit_from_bloch(const RealVector& bloch) {
  if (bloch.size() != 3 || bloch.norm() == 0.0) {
    throw std::invalid_argument("qubit_from_bloch: need a non-zero 3-vector");
  }
  const RealVector n = bloch.normalized();
  Vector c(2);
  if (n(2) <= -1.0 + 1e-15) {
    c << 0.0, 1.0;
    return c;
  }
  const double c0 = std::sqrt(0.5 * (1.0 + n(2)));
  c(0) = c0;
  c(1) = Complex(n(0), n(1)) / (2.0 * c0);
  return c.normalized();
}

ClosedForm2xN d_closed_2xN_detail(const DensityOperator& rho) {
  require_qubit_a(rho, "d_closed_2xN");
  const FanoForm f = fano_decompose(rho);
  const double n = rho.dim_b();
  const RealMatrix s = f.r_a * f.r_a.transpose() + (2.0 / n) * f.t * f.t.transpose();
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(s);
  const RealVector& ev = solver.eigenvalues();
  // trace(S) - lambda_max is the sum of the two smaller eigenvalues
  const double under = std::max(0.0, ev(0)) + std::max(0.0, ev(1));
  ClosedForm2xN out;
  out.value = std::sqrt(under / n);
  out.bloch = solver.eigenvectors().col(2);
  out.c = qubit_from_bloch(out.bloch);
  return out;
}

double d_closed_2xN(const DensityOperator& rho) { return d_closed_2xN_detail(rho).value; }

double lower_bound_2xN(const DensityOperator& rho) {
  require_qubit_a(rho, "lower_bound_2xN");
  const FanoForm f = fano_decompose(rho);
  const RealMatrix tt = f.t * f.t.transpose();
  const RealVector ev = Eigen::SelfAdjointEigenSolver<RealMatrix>(tt, Eigen::EigenvaluesOnly).eigenvalues();
  const double under = std::max(0.0, ev(0)) + std::max(0.0, ev(1));
  return std::sqrt(2.0) / rho.dim_b() * std::sqrt(under);
}

double horodecki_m(const DensityOperator& rho) {
  if (rho.dim_a() != 2 || rho.dim_b() != 2) {
    throw DimensionMismatch("horodecki_m: two-qubit states only");
  }
  const FanoForm f = fano_decompose(rho);
  const RealMatrix ttt = f.t.transpose() * f.t;
  const RealVector ev = Eigen::SelfAdjointEigenSolver<RealMatrix>(ttt, Eigen::EigenvaluesOnly).eigenvalues();
  return ev(1) + ev(2);
}

// ---- Werner ----------------------------------------------------------------

WernerParams::WernerParams(int d_, double p_) : d(d_), p(p_) {
  if (d < 2) throw std::invalid_argument("Werner state: d must be at least 2");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("Werner state: p must lie in [0, 1]");
}

WernerParams WernerParams::zero_discord(int d) { return WernerParams(d, (d + 1.0) / (2.0 * d)); }

DensityOperator werner_state(const WernerParams& params) {
  const int d = params.d;
  const double p = params.p;
  const int dd = d * d;
  Matrix swap = Matrix::Zero(dd, dd);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      swap(i * d + j, j * d + i) = 1.0;
    }
  }
  const Matrix id = Matrix::Identity(dd, dd);
  const Matrix sym = 0.5 * (id + swap);
  const Matrix anti = 0.5 * (id - swap);
  const Matrix rho = (2.0 * p / (dd + d)) * sym + (2.0 * (1.0 - p) / (dd - d)) * anti;
  return DensityOperator(rho, d, d);
}

double werner_d(const WernerParams& params) {
  const double d = params.d;
  return std::abs(2.0 * params.p * d - d - 1.0) / (d * d - 1.0);
}

double werner_discord(const WernerParams& params) {
  const double d = params.d;
  const double p = params.p;
  const double w = 2.0 * p / (d + 1.0);
  const double value = std::log2(d + 1.0) + xlog2(1.0 - p, (1.0 - p) / (d - 1.0)) + xlog2(p, p / (d + 1.0)) -
                       xlog2(w, p) - xlog2(1.0 - w, (d + 1.0 - 2.0 * p) / (2.0 * (d - 1.0)));
  return std::max(0.0, value);
}

// ---- pure states -----------------------------------------------------------

PureState schmidt_state(const RealVector& alphas, int dim_a, int dim_b) {
  if (alphas.size() > std::min(dim_a, dim_b)) {
    throw std::invalid_argument("schmidt_state: more coefficients than min(M, N)");
  }
  Vector amps = Vector::Zero(static_cast<Eigen::Index>(dim_a) * dim_b);
  for (Eigen::Index k = 0; k < alphas.size(); ++k) {
    amps(k * dim_b + k) = alphas(k);
  }
  return PureState(std::move(amps), dim_a, dim_b);
}

PureState bell_state() {
  RealVector alphas(2);
  alphas << std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0;
  return schmidt_state(alphas.normalized(), 2, 2);
}

PureState schmidt_pure_state(double a) {
  if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("schmidt_pure_state: a must lie in [0, 1]");
  RealVector alphas(2);
  alphas << a, std::sqrt(std::max(0.0, 1.0 - a * a));
  return schmidt_state(alphas, 2, 2);
}

PureState maximally_entangled_state(int m) {
  return schmidt_state(RealVector::Constant(m, 1.0 / std::sqrt(static_cast<double>(m))).normalized(), m, m);
}

double pure_state_objective(const RealVector& alphas, const UnitaryOperator& u) {
  if (u.dim() != alphas.size()) {
    throw DimensionMismatch("pure_state_objective: unitary dimension must match coefficient count");
  }
  if ((alphas.array() < 0.0).any() || std::abs(alphas.squaredNorm() - 1.0) > 1e-10) {
    throw std::invalid_argument("pure_state_objective: Schmidt coefficients must be non-negative and normalized");
  }
  Complex s(0.0, 0.0);
  for (Eigen::Index k = 0; k < alphas.size(); ++k) {
    s += alphas(k) * alphas(k) * u.matrix()(k, k);
  }
  return std::sqrt(std::max(0.0, 1.0 - std::norm(s)));
}

bool is_maximally_entangled_by_d(const PureState& psi, double eps, const OptimizerConfig& config) {
  if (psi.dim_a() > psi.dim_b()) {
    throw std::invalid_argument("is_maximally_entangled_by_d: requires dim_a <= dim_b");
  }
  return minimize_d(psi.density(), config).value >= 1.0 - eps;
}

bool is_maximally_entangled_by_schmidt(const PureState& psi, double eps) {
  const RealVector alphas = psi.schmidt_coefficients();
  const double target = 1.0 / psi.dim_a();
  double worst = 0.0;
  for (int k = 0; k < psi.dim_a(); ++k) {
    const double a = k < alphas.size() ? alphas(k) : 0.0;
    worst = std::max(worst, std::abs(a * a - target));
  }
  return worst < eps;
}

// ---- separable ensembles ---------------------------------------------------

SeparableEnsemble::SeparableEnsemble(std::vector<SeparableTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("separable ensemble must have at least one term");
  double total = 0.0;
  for (const auto& t : terms_) {
    if (t.p < 0.0) throw std::invalid_argument("separable ensemble: negative weight");
    if (t.a.size() != 2 || t.b.size() != 2) throw std::invalid_argument("separable ensemble: qubit vectors only");
    if (std::abs(t.a.norm() - 1.0) > 1e-12 || std::abs(t.b.norm() - 1.0) > 1e-12) {
      throw std::invalid_argument("separable ensemble: vectors must be unit norm");
    }
    total += t.p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("separable ensemble: weights must sum to 1");
}

DensityOperator SeparableEnsemble::assemble() const {
  Matrix rho = Matrix::Zero(4, 4);
  for (const auto& t : terms_) {
    rho += t.p * kron(t.a * t.a.adjoint(), t.b * t.b.adjoint());
  }
  return DensityOperator(std::move(rho), 2, 2);
}

SeparableEnsemble random_separable_ensemble(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("random_separable_ensemble: n must be positive");
  std::mt19937_64 gen(seed);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto haar_qubit = [&] {
    Vector v(2);
    for (int k = 0; k < 2; ++k) {
      const double re = normal(gen);
      const double im = normal(gen);
      v(k) = Complex(re, im);
    }
    return Vector(v.normalized());
  };
  std::vector<double> weights(n);
  double total = 0.0;
  for (double& w : weights) {
    w = expo(gen);
    total += w;
  }
  std::vector<SeparableTerm> terms;
  for (int i = 0; i < n; ++i) {
    Vector a = haar_qubit();
    Vector b = haar_qubit();
    terms.push_back({weights[i] / total, std::move(a), std::move(b)});
  }
  double rest = 1.0;
  for (int i = 0; i + 1 < n; ++i) rest -= terms[i].p;
  terms.back().p = rest;
  return SeparableEnsemble(std::move(terms));
}

SeparableEnsemble rank2_ensemble(double alpha, double beta) {
  Vector zero(2);
  zero << 1.0, 0.0;
  Vector a2(2);
  a2 << std::cos(beta / 2.0), std::sin(beta / 2.0);
  Vector b2(2);
  b2 << std::cos(alpha / 2.0), std::sin(alpha / 2.0);
  return SeparableEnsemble({{0.5, zero, zero}, {0.5, a2, b2}});
}

RUUnitary rank2_unitary(double theta, double phi) {
  Matrix basis(2, 2);
  basis(0, 0) = std::cos(theta / 2.0);
  basis(1, 0) = std::polar(std::sin(theta / 2.0), phi);
  basis(0, 1) = -std::conj(basis(1, 0));
  basis(1, 1) = std::conj(basis(0, 0));
  // |u> carries +1 (the second root of unity), its complement -1
  return RUUnitary(basis, {1, 0});
}

double separable_d_given_u(const SeparableEnsemble& e, const RUUnitary& u) {
  if (u.dim() != 2) throw DimensionMismatch("separable_d_given_u: qubit unitary required");
  const Matrix um = u.realize().matrix();
  double sum = 0.0;
  for (const auto& ti : e.terms()) {
    for (const auto& tj : e.terms()) {
      const double bb = std::norm(ti.b.dot(tj.b));
      const double aa = std::norm(ti.a.dot(tj.a));
      const double aua = std::norm(ti.a.dot(um * tj.a));
      sum += ti.p * tj.p * bb * (aa - aua);
    }
  }
  return std::sqrt(std::max(0.0, sum));
}

double separable_upper_bound(const SeparableEnsemble& e) {
  double pmax = 0.0;
  for (const auto& t : e.terms()) pmax = std::max(pmax, t.p);
  return 1.0 - pmax;
}

double rank2_delta(double alpha, double beta, double theta, double phi) {
  const double ca2 = std::cos(alpha / 2.0);
  const double st = std::sin(theta);
  const double mix = std::cos(beta) * std::cos(theta) + std::sin(beta) * st * std::cos(phi);
  return ca2 * ca2 * (2.0 * std::cos(beta) * st * st - std::sin(beta) * std::sin(2.0 * theta) * std::cos(phi)) + 1.0 +
         st * st - mix * mix;
}

bool max_nonclassical_rank2_check(const SeparableEnsemble& e, double eps) {
  if (e.size() != 2) throw std::invalid_argument("max_nonclassical_rank2_check: ensemble must have two terms");
  const auto& t1 = e.terms()[0];
  const auto& t2 = e.terms()[1];
  const bool weights = std::abs(t1.p - 0.5) < eps && std::abs(t2.p - 0.5) < eps;
  const bool a_overlap = std::abs(std::abs(t1.a.dot(t2.a)) - 1.0 / std::numbers::sqrt2) < eps;
  const bool b_orthogonal = std::abs(t1.b.dot(t2.b)) < eps;
  return weights && a_overlap && b_orthogonal;
}

}  // namespace nonclass
