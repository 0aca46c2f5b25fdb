#include "nonclass/measure.hpp"

#include "nonclass/closed_forms.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <thread>
#include <type_traits>

namespace nonclass {

namespace {

constexpr double kInitialStep = 0.5;
constexpr double kMinStep = 1e-9;
constexpr double kUpperBoundSlack = 1e-8;
// Relative objective decrease below which a coordinate sweep counts as converged.
constexpr double kSweepTol = 1e-15;

Vector roots_of_unity(int k) {
  Vector out(k);
  for (int j = 0; j < k; ++j) {
    out(j) = std::polar(1.0, 2.0 * std::numbers::pi * (j + 1) / k);
  }
  return out;
}

Matrix spectral(const Matrix& basis, const Vector& eigenvalues) {
  return basis * eigenvalues.asDiagonal() * basis.adjoint();
}

// Squared D without the trace-form cancellation.
double d_squared(const Matrix& rho, const Matrix& u, int dim_b) {
  return 0.5 * (rho - conjugate_on_a(rho, u, dim_b)).squaredNorm();
}

// Right-multiplies v by exp(i s G) for G = U_pq (sym) or V_pq (antisym); only
// columns p and q change.
void rotate_columns(Matrix& v, int p, int q, bool antisymmetric, double s) {
  const double c = std::cos(s);
  const double sn = std::sin(s);
  const Vector vp = v.col(p);
  const Vector vq = v.col(q);
  if (antisymmetric) {
    v.col(p) = c * vp - sn * vq;
    v.col(q) = c * vq + sn * vp;
  } else {
    const Complex is(0.0, sn);
    v.col(p) = c * vp + is * vq;
    v.col(q) = c * vq + is * vp;
  }
}

void reorthonormalize(Matrix& v) {
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Eigen::Index j = 0; j < v.cols(); ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) {
      q.col(j) *= r(j, j) / mag;
    }
  }
  v = std::move(q);
}

struct Direction {
  int p;
  int q;
  bool antisymmetric;
};

struct RestartOutcome {
  double value = 0.0;
  Matrix basis;
  int iterations = 0;
  int variant = 0;
};

// Evaluates an arbitrary objective on the rotated basis.
class FunctionModel {
 public:
  explicit FunctionModel(const std::function<double(const Matrix&)>& fn) : fn_(fn) {}
  double reset(const Matrix& v) { return fn_(v); }
  double trial(const Matrix& rotated, const Direction&, double) { return fn_(rotated); }
  void commit() {}

 private:
  const std::function<double(const Matrix&)>& fn_;
};

// sum_{i != j} w_ij ||X_ij||^2 for X = (V^dagger (x) I) rho (V (x) I) cut into
// N x N blocks. A Givens rotation of columns p, q only mixes block rows and
// columns p, q of X, so trials are updated in place.
class BlockModel {
 public:
  BlockModel(const Matrix& rho, int n, const RealMatrix& weights) : rho_(rho), n_(n), w_(weights) {}

  double reset(const Matrix& v) {
    const Matrix lift = kron(v, Matrix::Identity(n_, n_));
    x_ = lift.adjoint() * rho_ * lift;
    return value(x_);
  }

  double trial(const Matrix&, const Direction& d, double s) {
    const double c = std::cos(s);
    const double sn = std::sin(s);
    // V' = V R with R restricted to (p, q).
    Complex rpp = c, rqp, rpq, rqq = c;
    if (d.antisymmetric) {
      rqp = -sn;
      rpq = sn;
    } else {
      rqp = Complex(0.0, sn);
      rpq = Complex(0.0, sn);
    }
    scratch_ = x_;
    const Eigen::Index pn = static_cast<Eigen::Index>(d.p) * n_;
    const Eigen::Index qn = static_cast<Eigen::Index>(d.q) * n_;
    const Matrix rows_p = scratch_.middleRows(pn, n_);
    const Matrix rows_q = scratch_.middleRows(qn, n_);
    scratch_.middleRows(pn, n_) = std::conj(rpp) * rows_p + std::conj(rqp) * rows_q;
    scratch_.middleRows(qn, n_) = std::conj(rpq) * rows_p + std::conj(rqq) * rows_q;
    const Matrix cols_p = scratch_.middleCols(pn, n_);
    const Matrix cols_q = scratch_.middleCols(qn, n_);
    scratch_.middleCols(pn, n_) = rpp * cols_p + rqp * cols_q;
    scratch_.middleCols(qn, n_) = rpq * cols_p + rqq * cols_q;
    return value(scratch_);
  }

  void commit() { x_.swap(scratch_); }

 private:
  double value(const Matrix& x) const {
    double f = 0.0;
    const Eigen::Index m = w_.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
      for (Eigen::Index j = 0; j < m; ++j) {
        if (i != j && w_(i, j) != 0.0) f += w_(i, j) * x.block(i * n_, j * n_, n_, n_).squaredNorm();
      }
    }
    return f;
  }

  const Matrix& rho_;
  int n_;
  const RealMatrix& w_;
  Matrix x_;
  Matrix scratch_;
};

template <typename Model>
RestartOutcome compass_search(Model& model, Matrix v, const std::vector<Direction>& directions, int max_iters) {
  double f = model.reset(v);
  double step = kInitialStep;
  int iters = 0;
  while (iters < max_iters && step > kMinStep && f > 0.0) {
    ++iters;
    bool improved = false;
    for (const Direction& d : directions) {
      for (const double sign : {1.0, -1.0}) {
        Matrix trial = v;
        rotate_columns(trial, d.p, d.q, d.antisymmetric, sign * step);
        const double ft = model.trial(trial, d, sign * step);
        if (ft < f) {
          v = std::move(trial);
          model.commit();
          f = ft;
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      step *= 0.5;
    }
    if (iters % 64 == 0) {
      reorthonormalize(v);
      f = model.reset(v);
    }
  }
  reorthonormalize(v);
  return {model.reset(v), std::move(v), iters, 0};
}

// Minimizer over t of g(t) = a0 + a1 cos t + b1 sin t + a2 cos 2t + b2 sin 2t.
double trig_argmin(double a1, double b1, double a2, double b2) {
  const auto g = [&](double t) { return a1 * std::cos(t) + b1 * std::sin(t) + a2 * std::cos(2 * t) + b2 * std::sin(2 * t); };
  constexpr int kScan = 32;
  double best_t = 0.0;
  double best = g(0.0);
  for (int k = 1; k < kScan; ++k) {
    const double t = 2.0 * std::numbers::pi * k / kScan;
    const double v = g(t);
    if (v < best) {
      best = v;
      best_t = t;
    }
  }
  double t = best_t;
  for (int it = 0; it < 8; ++it) {
    const double d1 = -a1 * std::sin(t) + b1 * std::cos(t) - 2 * a2 * std::sin(2 * t) + 2 * b2 * std::cos(2 * t);
    const double d2 = -a1 * std::cos(t) - b1 * std::sin(t) - 4 * a2 * std::cos(2 * t) - 4 * b2 * std::sin(2 * t);
    if (d2 <= 0.0) break;
    const double next = t - d1 / d2;
    if (g(next) > g(t)) break;
    t = next;
  }
  return t;
}

// Coordinate descent with exact line minimization. Along a Givens direction
// X(s) and X(s + pi) agree, and f is a trigonometric polynomial of degree 2 in
// t = 2s, so five samples over one period determine it.
RestartOutcome jacobi_search(BlockModel& model, Matrix v, const std::vector<Direction>& directions, int max_iters,
                             double tol) {
  constexpr int kSamples = 5;
  double f = model.reset(v);
  int iters = 0;
  while (iters < max_iters && f > 0.0) {
    ++iters;
    const double start = f;
    for (const Direction& d : directions) {
      double a0 = f;
      double a1 = f;
      double b1 = 0.0;
      double a2 = f;
      double b2 = 0.0;
      for (int k = 1; k < kSamples; ++k) {
        const double t = 2.0 * std::numbers::pi * k / kSamples;
        const double fk = model.trial(v, d, t / 2.0);
        a0 += fk;
        a1 += fk * std::cos(t);
        b1 += fk * std::sin(t);
        a2 += fk * std::cos(2 * t);
        b2 += fk * std::sin(2 * t);
      }
      (void)a0;
      double t = trig_argmin(a1, b1, a2, b2);
      if (t > std::numbers::pi) t -= 2.0 * std::numbers::pi;
      const double ft = model.trial(v, d, t / 2.0);
      if (ft < f) {
        model.commit();
        rotate_columns(v, d.p, d.q, d.antisymmetric, t / 2.0);
        f = ft;
      }
    }
    if (iters % 64 == 0) {
      reorthonormalize(v);
      f = model.reset(v);
    }
    if (start - f <= tol * std::max(1.0, f)) break;
  }
  reorthonormalize(v);
  return {model.reset(v), std::move(v), iters, 0};
}

// 1/2 |lambda_i - lambda_j|^2: D^2 = 1/2 ||rho - U rho U^dagger||^2 in the
// eigenbasis of U.
RealMatrix spectrum_weights(const Vector& spectrum) {
  const Eigen::Index m = spectrum.size();
  RealMatrix w(m, m);
  for (Eigen::Index i = 0; i < m; ++i) {
    for (Eigen::Index j = 0; j < m; ++j) w(i, j) = 0.5 * std::norm(spectrum(i) - spectrum(j));
  }
  return w;
}

}  // namespace

// ---- RU and multiplicity unitaries -----------------------------------------

RUUnitary::RUUnitary(Matrix eigenbasis, std::vector<int> permutation)
    : eigenbasis_(UnitaryOperator(std::move(eigenbasis)).matrix()), permutation_(std::move(permutation)) {
  const int m = dim();
  if (static_cast<int>(permutation_.size()) != m) {
    throw std::invalid_argument("RU unitary: permutation length does not match dimension");
  }
  std::vector<bool> seen(m, false);
  for (const int k : permutation_) {
    if (k < 0 || k >= m || seen[k]) {
      throw std::invalid_argument("RU unitary: invalid permutation");
    }
    seen[k] = true;
  }
}

UnitaryOperator RUUnitary::realize() const {
  const int m = dim();
  const Vector roots = roots_of_unity(m);
  Vector eig(m);
  for (int j = 0; j < m; ++j) {
    eig(j) = roots(permutation_[j]);
  }
  return UnitaryOperator(spectral(eigenbasis_, eig));
}

RUUnitary make_ru_unitary(int m, const Matrix& eigenbasis, std::vector<int> permutation) {
  if (eigenbasis.rows() != m) {
    throw DimensionMismatch("make_ru_unitary: eigenbasis does not match dimension");
  }
  return RUUnitary(eigenbasis, std::move(permutation));
}

MultiplicityVector::MultiplicityVector(std::vector<int> counts) : counts_(std::move(counts)) {
  if (counts_.empty()) {
    throw std::invalid_argument("multiplicity vector must be non-empty");
  }
  long total = 0;
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (counts_[j] < 0) {
      throw std::invalid_argument("multiplicity vector entries must be non-negative");
    }
    total += static_cast<long>(counts_[j]) * static_cast<long>(j + 1);
  }
  if (total != static_cast<long>(counts_.size())) {
    throw std::invalid_argument("multiplicity vector " + str() + " does not satisfy sum_j j v_j = M");
  }
}

MultiplicityVector MultiplicityVector::nondegenerate(int m) {
  std::vector<int> c(m, 0);
  c[0] = m;
  return MultiplicityVector(std::move(c));
}

MultiplicityVector MultiplicityVector::trivial(int m) {
  std::vector<int> c(m, 0);
  c[m - 1] = 1;
  return MultiplicityVector(std::move(c));
}

int MultiplicityVector::distinct_eigenvalues() const {
  int k = 0;
  for (const int c : counts_) k += c;
  return k;
}

int MultiplicityVector::max_multiplicity() const {
  for (int j = dim(); j >= 1; --j) {
    if (counts_[j - 1] > 0) return j;
  }
  return 0;
}

std::vector<int> MultiplicityVector::block_sizes() const {
  std::vector<int> out;
  for (int j = dim(); j >= 1; --j) {
    for (int c = 0; c < counts_[j - 1]; ++c) out.push_back(j);
  }
  return out;
}

std::vector<std::vector<int>> MultiplicityVector::block_orderings() const {
  std::vector<int> sizes = block_sizes();
  std::sort(sizes.begin(), sizes.end());
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sizes);
  } while (std::next_permutation(sizes.begin(), sizes.end()));
  return out;
}

std::string MultiplicityVector::str() const {
  std::string s = "(";
  for (std::size_t j = 0; j < counts_.size(); ++j) {
    if (j) s += ",";
    s += std::to_string(counts_[j]);
  }
  return s + ")";
}

namespace {

Vector multiplicity_spectrum(const MultiplicityVector& v, const std::vector<int>& block_order) {
  std::vector<int> given = block_order;
  std::vector<int> expected = v.block_sizes();
  std::sort(given.begin(), given.end());
  std::sort(expected.begin(), expected.end());
  if (given != expected) {
    throw std::invalid_argument("block order does not match multiplicity vector " + v.str());
  }
  const int k = static_cast<int>(block_order.size());
  const Vector roots = roots_of_unity(k);
  Vector eig(v.dim());
  int col = 0;
  for (int b = 0; b < k; ++b) {
    for (int j = 0; j < block_order[b]; ++j) eig(col++) = roots(b);
  }
  return eig;
}

}  // namespace

UnitaryOperator make_multiplicity_unitary(const MultiplicityVector& v, const Matrix& eigenbasis,
                                          const std::vector<int>& block_order) {
  if (eigenbasis.rows() != v.dim()) {
    throw DimensionMismatch("make_multiplicity_unitary: eigenbasis does not match dimension");
  }
  const Matrix basis = UnitaryOperator(eigenbasis).matrix();
  return UnitaryOperator(spectral(basis, multiplicity_spectrum(v, block_order)));
}

// ---- D(rho, U) ---------------------------------------------------------------

double d_given_u(const DensityOperator& rho, const UnitaryOperator& u) {
  if (u.dim() != rho.dim_a()) {
    throw DimensionMismatch("d_given_u: unitary must act on subsystem A");
  }
  return std::sqrt(d_squared(rho.matrix(), u.matrix(), rho.dim_b()));
}

double d_given_u_trace_form(const DensityOperator& rho, const UnitaryOperator& u) {
  if (u.dim() != rho.dim_a()) {
    throw DimensionMismatch("d_given_u: unitary must act on subsystem A");
  }
  const Matrix& r = rho.matrix();
  const Matrix rf = conjugate_on_a(r, u.matrix(), rho.dim_b());
  const double value = r.squaredNorm() - (r.adjoint().cwiseProduct(rf.transpose())).sum().real();
  return std::sqrt(std::max(0.0, value));
}

bool is_invariant_under(const DensityOperator& rho, const UnitaryOperator& u, double eps) {
  return d_given_u(rho, u) < eps;
}

// ---- optimizer -------------------------------------------------------------

std::string to_string(MeasureMethod m) {
  switch (m) {
    case MeasureMethod::closed_form_2xN:
      return "closed_form_2xN";
    case MeasureMethod::werner_formula:
      return "werner_formula";
    case MeasureMethod::pure_formula:
      return "pure_formula";
    case MeasureMethod::optimizer:
      return "optimizer";
  }
  return "unknown";
}

int resolve_threads(int requested) {
  int threads = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("NONCLASS_THREADS")) {
    const int cap = std::atoi(env);
    if (cap > 0) threads = std::min(threads, cap);
  }
  return std::max(1, threads);
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    workers.emplace_back([&] {
      for (int i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& w : workers) w.join();
  if (error) std::rethrow_exception(error);
}

namespace {

// make_model(variant) builds a fresh model for one restart.
template <typename MakeModel>
UnitarySearchResult search_variants(int m, int variants, const MakeModel& make_model, const OptimizerConfig& config,
                                    int* winning_variant) {
  if (variants < 1) {
    throw std::invalid_argument("minimize_over_bases: no objective");
  }
  const int restarts = std::max(1, config.restarts);
  std::vector<Direction> directions;
  for (int p = 0; p < m; ++p) {
    for (int q = p + 1; q < m; ++q) {
      directions.push_back({p, q, false});
      directions.push_back({p, q, true});
    }
  }

  std::vector<RestartOutcome> outcomes(restarts);
  parallel_for(restarts, resolve_threads(config.threads), [&](int k) {
    const int variant = k % variants;
    auto model = make_model(variant);
    Matrix v0 = random_haar_unitary(m, config.seed + static_cast<std::uint64_t>(k)).matrix();
    if constexpr (std::is_same_v<decltype(model), BlockModel>) {
      outcomes[k] = jacobi_search(model, std::move(v0), directions, config.max_iters, kSweepTol);
    } else {
      outcomes[k] = compass_search(model, std::move(v0), directions, config.max_iters);
    }
    outcomes[k].variant = variant;
  });

  // min by value, ties to the lower restart index
  int best = 0;
  for (int k = 1; k < restarts; ++k) {
    if (outcomes[k].value < outcomes[best].value) best = k;
  }
  double second = std::numeric_limits<double>::infinity();
  int iterations = 0;
  for (int k = 0; k < restarts; ++k) {
    iterations += outcomes[k].iterations;
    if (k != best) second = std::min(second, outcomes[k].value);
  }

  UnitarySearchResult out;
  out.value = outcomes[best].value;
  out.basis = outcomes[best].basis;
  out.restarts_used = restarts;
  out.iterations = iterations;
  out.residual = restarts > 1 ? second - out.value : 0.0;
  out.converged = out.residual <= config.tol;
  if (winning_variant) *winning_variant = outcomes[best].variant;
  return out;
}

}  // namespace

UnitarySearchResult minimize_over_bases(int m, const std::function<double(const Matrix&)>& objective,
                                        const OptimizerConfig& config) {
  return search_variants(m, 1, [&](int) { return FunctionModel(objective); }, config, nullptr);
}

UnitarySearchResult minimize_block_weighted(const DensityOperator& rho, const std::vector<RealMatrix>& weights,
                                            const OptimizerConfig& config, int* winning_variant) {
  const int m = rho.dim_a();
  for (const RealMatrix& w : weights) {
    if (w.rows() != m || w.cols() != m) {
      throw DimensionMismatch("minimize_block_weighted: weight matrix must be dim_a x dim_a");
    }
  }
  const Matrix& r = rho.matrix();
  const int n = rho.dim_b();
  return search_variants(
      m, static_cast<int>(weights.size()), [&](int variant) { return BlockModel(r, n, weights[variant]); }, config,
      winning_variant);
}

MeasureResult minimize_d(const DensityOperator& rho, const OptimizerConfig& config) {
  const int m = rho.dim_a();
  MeasureResult out;
  if (m == 1) {
    out.value = 0.0;
    out.optimizer_u = UnitaryOperator::identity(1);
    out.eigenbasis = Matrix::Identity(1, 1);
    return out;
  }

  if (m == 2 && config.closed_form_dispatch) {
    const ClosedForm2xN cf = d_closed_2xN_detail(rho);
    Matrix basis(2, 2);
    basis.col(0) = cf.c;
    basis(0, 1) = -std::conj(cf.c(1));
    basis(1, 1) = std::conj(cf.c(0));
    out.value = cf.value;
    out.eigenbasis = basis;
    out.optimizer_u = UnitaryOperator(2.0 * cf.c * cf.c.adjoint() - Matrix::Identity(2, 2));
    out.method = MeasureMethod::closed_form_2xN;
    return out;
  }

  const Vector spectrum = roots_of_unity(m);
  const UnitarySearchResult search = minimize_block_weighted(rho, {spectrum_weights(spectrum)}, config);

  out.value = std::sqrt(std::max(0.0, search.value));
  out.eigenbasis = search.basis;
  out.optimizer_u = UnitaryOperator(spectral(search.basis, spectrum));
  out.method = MeasureMethod::optimizer;
  out.restarts_used = search.restarts_used;
  out.iterations = search.iterations;
  out.residual = search.residual;
  out.converged = search.converged;

  if (m == 2 && out.value > upper_bound_2xN(rho) + kUpperBoundSlack) {
    throw std::logic_error("minimize_d: optimizer exceeded the 2xN upper bound");
  }
  return out;
}

MeasureResult minimize_d_multiplicity(const DensityOperator& rho, const MultiplicityVector& v,
                                      const OptimizerConfig& config) {
  const int m = rho.dim_a();
  if (v.dim() != m) {
    throw DimensionMismatch("minimize_d_multiplicity: multiplicity vector length must equal dim_a");
  }
  const auto orderings = v.block_orderings();
  std::vector<RealMatrix> weights;
  for (const auto& order : orderings) weights.push_back(spectrum_weights(multiplicity_spectrum(v, order)));

  int variant = 0;
  const UnitarySearchResult search = minimize_block_weighted(rho, weights, config, &variant);
  MeasureResult out;
  out.value = std::sqrt(std::max(0.0, search.value));
  out.eigenbasis = search.basis;
  out.optimizer_u = make_multiplicity_unitary(v, search.basis, orderings[variant]);
  out.method = MeasureMethod::optimizer;
  out.restarts_used = search.restarts_used;
  out.iterations = search.iterations;
  out.residual = search.residual;
  out.converged = search.converged;
  return out;
}

}  // namespace nonclass
