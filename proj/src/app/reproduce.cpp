#include "nonclass/app/reproduce.hpp"

#include "nonclass/closed_forms.hpp"
#include "nonclass/discord.hpp"
#include "nonclass/fano.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

namespace nonclass::app {

namespace {

constexpr double kSuiteBudgetSeconds = 600.0;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Quoted reference values.
constexpr double kWernerDiscord2 = 0.01614;
constexpr double kWernerD50 = 0.00627;
constexpr double kWernerDiscord50 = 0.07111;

class Checks {
 public:
  explicit Checks(double scale) : scale_(scale) {}

  double tol(double t) const { return t * scale_; }

  // |measured - expected| <= tol
  void near(std::string what, double measured, double expected, double t) {
    const double s = tol(t);
    add(std::move(what), measured, expected, s, std::abs(measured - expected) <= s);
  }
  // measured <= bound + tol
  void at_most(std::string what, double measured, double bound, double t) {
    const double s = tol(t);
    add(std::move(what), measured, bound, s, measured <= bound + s);
  }
  // measured > bound; positivity margins are not tolerances and stay unscaled.
  void above(std::string what, double measured, double bound) {
    add(std::move(what), measured, bound, 0.0, measured > bound);
  }
  void count_zero(std::string what, int count) {
    add(std::move(what), count, 0.0, 0.0, count == 0);
  }
  void holds(std::string what, bool ok) { add(std::move(what), ok ? 1.0 : 0.0, 1.0, 0.0, ok); }

  std::vector<CheckLine> take() { return std::move(lines_); }

 private:
  void add(std::string what, double measured, double expected, double t, bool pass) {
    lines_.push_back({std::move(what), measured, expected, t, pass});
  }

  double scale_;
  std::vector<CheckLine> lines_;
};

struct Context {
  Checks& checks;
  OptimizerConfig inner;  // single-threaded, M = 2 dispatch disabled
  int threads;
};

// Collects one value per index in parallel, in index order.
template <typename T>
std::vector<T> collect(int count, int threads, const std::function<T(int)>& fn) {
  std::vector<T> out(count);
  parallel_for(count, threads, [&](int i) { out[i] = fn(i); });
  return out;
}

DensityOperator local_rotate(const DensityOperator& rho, std::uint64_t seed) {
  const Matrix va = random_haar_unitary(rho.dim_a(), seed).matrix();
  const Matrix vb = random_haar_unitary(rho.dim_b(), seed ^ 0x9e3779b97f4a7c15ULL).matrix();
  const Matrix k = kron(va, vb);
  return DensityOperator(k * rho.matrix() * k.adjoint(), rho.dim_a(), rho.dim_b());
}

Vector qubit(double theta, double phi) {
  Vector v(2);
  v(0) = std::cos(theta / 2.0);
  v(1) = std::polar(std::sin(theta / 2.0), phi);
  return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

double max_real(const std::vector<double>& v) { return *std::max_element(v.begin(), v.end()); }

// ---- 1 ---------------------------------------------------------------------

void werner_pair(Context& c) {
  const WernerParams w2(2, 2.0 / 3.0);
  const WernerParams w3(3, 2.0 / 3.0);
  const WernerParams w50(50, 2.0 / 3.0);
  c.checks.near("D formula d=2 p=2/3 vs 1/9", werner_d(w2), 1.0 / 9.0, 1e-15);
  c.checks.near("D optimizer d=2 p=2/3 vs 1/9", minimize_d(werner_state(w2), c.inner).value, 1.0 / 9.0, 1e-6);
  c.checks.near("D optimizer d=3 p=2/3 vs formula", minimize_d(werner_state(w3), c.inner).value, werner_d(w3), 1e-6);
  c.checks.near("discord formula d=2 p=2/3", werner_discord(w2), kWernerDiscord2, 5e-5);
  c.checks.near("discord numeric d=2 p=2/3", discord_numeric(werner_state(w2)), kWernerDiscord2, 5e-5);
  c.checks.near("D formula d=50 p=2/3", werner_d(w50), kWernerD50, 5e-5);
  c.checks.near("discord formula d=50 p=2/3", werner_discord(w50), kWernerDiscord50, 5e-5);
}

// ---- 2 ---------------------------------------------------------------------

void bell_max(Context& c) {
  const DensityOperator bell = bell_state().density();
  c.checks.near("Bell D closed form", d_closed_2xN(bell), 1.0, 1e-9);
  c.checks.near("Bell D optimizer", minimize_d(bell, c.inner).value, 1.0, 1e-6);
}

// ---- 3 ---------------------------------------------------------------------

void schmidt(Context& c) {
  constexpr int kSteps = 10;
  struct Row {
    double closed_err;
    double opt_err;
  };
  const auto rows = collect<Row>(kSteps + 1, c.threads, [&](int i) {
    const double a = static_cast<double>(i) / kSteps;
    const double expected = 2.0 * a * std::sqrt(std::max(0.0, 1.0 - a * a));
    const DensityOperator rho = schmidt_pure_state(a).density();
    return Row{std::abs(d_closed_2xN(rho) - expected), std::abs(minimize_d(rho, c.inner).value - expected)};
  });
  double closed = 0.0;
  double opt = 0.0;
  for (const Row& r : rows) {
    closed = std::max(closed, r.closed_err);
    opt = std::max(opt, r.opt_err);
  }
  c.checks.near("max |closed form - 2ab| over a in {0,...,1}", closed, 0.0, 1e-9);
  c.checks.near("max |optimizer - 2ab| over a in {0,...,1}", opt, 0.0, 1e-6);
}

// ---- 4 ---------------------------------------------------------------------

constexpr int kRandom2x2 = 100;
constexpr int kRandom2x3 = 50;

DensityOperator population_state(int i) {
  if (i < kRandom2x2) return random_density(2, 2, 1 + i % 4, 1000 + i);
  const int j = i - kRandom2x2;
  return random_density(2, 3, 1 + j % 6, 2000 + j);
}

// Minimum of D(rho, 2|c><c| - I) over a theta x phi grid, and the largest gap a
// grid of that spacing can leave above the true minimum.
struct GridBracket {
  double min;
  double resolution;
};

GridBracket bloch_grid(const DensityOperator& rho, int n_theta, int n_phi) {
  const Matrix id = Matrix::Identity(2, 2);
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::numbers::pi * i / (n_theta - 1);
    for (int j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * j / n_phi;
      const UnitaryOperator u(2.0 * projector(qubit(theta, phi)) - id);
      best = std::min(best, d_given_u(rho, u));
    }
  }
  const FanoForm f = fano_decompose(rho);
  const int n = rho.dim_b();
  const RealMatrix s = f.r_a * f.r_a.transpose() + (2.0 / n) * f.t * f.t.transpose();
  const Eigen::SelfAdjointEigenSolver<RealMatrix> es(s);
  const double spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
  const double delta = std::numbers::pi / (2.0 * (n_theta - 1)) + std::numbers::pi / n_phi;
  return {best, std::sqrt(std::max(0.0, spread) / n) * std::sin(delta)};
}

void closed_vs_brute(Context& c) {
  constexpr int kTheta = 256;
  constexpr int kPhi = 128;
  const auto diffs = collect<double>(kRandom2x2 + kRandom2x3, c.threads, [&](int i) {
    const DensityOperator rho = population_state(i);
    return std::abs(d_closed_2xN(rho) - minimize_d(rho, c.inner).value);
  });
  struct Bracket {
    double below;  // closed - grid_min, must not be positive
    double excess;  // grid_min - closed - resolution, must not be positive
  };
  const auto brackets = collect<Bracket>(kRandom2x2, c.threads, [&](int i) {
    const DensityOperator rho = population_state(i);
    const double closed = d_closed_2xN(rho);
    const GridBracket g = bloch_grid(rho, kTheta, kPhi);
    return Bracket{closed - g.min, g.min - closed - g.resolution};
  });
  double below = -std::numeric_limits<double>::infinity();
  double excess = -std::numeric_limits<double>::infinity();
  for (const Bracket& b : brackets) {
    below = std::max(below, b.below);
    excess = std::max(excess, b.excess);
  }
  c.checks.near("max |closed - optimizer| (100 2x2, 50 2x3)", max_real(diffs), 0.0, 1e-6);
  c.checks.at_most("max (closed - grid min), 256x128 grid", below, 0.0, 1e-9);
  c.checks.at_most("max (grid min - closed - resolution)", excess, 0.0, 1e-9);
}

// ---- 5 ---------------------------------------------------------------------

// Mixture of (I (x) W_k)|Phi+> for random isometries W_k: C^2 -> C^N. Every
// component, hence the mixture, has a maximally mixed A-marginal.
DensityOperator mixed_marginal_state(int n, int components, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> weight(1.0);
  Matrix rho = Matrix::Zero(2 * n, 2 * n);
  double total = 0.0;
  for (int k = 0; k < components; ++k) {
    const Matrix w = random_haar_unitary(n, seed * 131 + k).matrix().leftCols(2);
    Vector phi = Vector::Zero(2 * n);
    for (int a = 0; a < 2; ++a) phi.segment(a * n, n) = w.col(a) / std::sqrt(2.0);
    const double p = weight(rng);
    rho += p * projector(phi);
    total += p;
  }
  return DensityOperator(rho / total, 2, n);
}

void bounds(Context& c) {
  struct Gap {
    double lower_excess;  // lower - closed
    double upper_excess;  // closed - upper
  };
  const auto gaps = collect<Gap>(kRandom2x2 + kRandom2x3, c.threads, [&](int i) {
    const DensityOperator rho = population_state(i);
    const double closed = d_closed_2xN(rho);
    return Gap{lower_bound_2xN(rho) - closed, closed - upper_bound_2xN(rho)};
  });
  double lower = -std::numeric_limits<double>::infinity();
  double upper = -std::numeric_limits<double>::infinity();
  for (const Gap& g : gaps) {
    lower = std::max(lower, g.lower_excess);
    upper = std::max(upper, g.upper_excess);
  }
  constexpr int kMarginalStates = 100;
  const auto eq = collect<double>(kMarginalStates, c.threads, [&](int i) {
    const DensityOperator rho = mixed_marginal_state(2 + i % 2, 1 + i % 4, 3000 + i);
    return std::abs(lower_bound_2xN(rho) - d_closed_2xN(rho));
  });
  c.checks.at_most("max (lower bound - closed form)", lower, 0.0, 1e-9);
  c.checks.at_most("max (closed form - upper bound)", upper, 0.0, 1e-9);
  c.checks.near("max |lower bound - closed| with r_A = 0", max_real(eq), 0.0, 1e-9);
}

// ---- 6 ---------------------------------------------------------------------

void chsh(Context& c) {
  constexpr int kStates = 2000;
  struct Point {
    double d;
    double m;
  };
  const auto points = collect<Point>(kStates, c.threads, [&](int i) {
    const DensityOperator rho = random_density(2, 2, 1 + i % 4, 4000 + i);
    return Point{d_closed_2xN(rho), horodecki_m(rho)};
  });
  int violations = 0;
  double max_d_local = 0.0;
  for (const Point& p : points) {
    if (p.m <= 1.0) {
      max_d_local = std::max(max_d_local, p.d);
      if (p.d > kInvSqrt2) ++violations;
    }
  }
  c.checks.count_zero("states with D > 1/sqrt2 and M <= 1 (of 2000)", violations);
  c.checks.at_most("max D among states with M <= 1", max_d_local, kInvSqrt2, 0.0);

  const DensityOperator witness = schmidt_pure_state(0.35).density();
  const double d = d_closed_2xN(witness);
  c.checks.above("witness a=0.35: 1/sqrt2 - D", kInvSqrt2 - d, 0.0);
  c.checks.above("witness a=0.35: M", horodecki_m(witness), 1.0);
}

// ---- 7 ---------------------------------------------------------------------

constexpr int kFaithfulStates = 200;

DensityOperator classical_quantum_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.05, 0.95);
  const Matrix e = random_haar_unitary(2, seed).matrix();
  const double p = weight(rng);
  const Matrix tau0 = random_density(2, 1, 1 + seed % 2, seed * 7 + 1).matrix();
  const Matrix tau1 = random_density(2, 1, 1 + (seed / 2) % 2, seed * 7 + 2).matrix();
  const Matrix rho = p * kron(projector(e.col(0)), tau0) + (1.0 - p) * kron(projector(e.col(1)), tau1);
  return DensityOperator(rho, 2, 2);
}

// Unit vector whose squared overlap with `v` is `overlap2`.
Vector with_overlap(const Vector& v, double overlap2, double phase) {
  Vector perp(2);
  perp(0) = -std::conj(v(1));
  perp(1) = std::conj(v(0));
  return std::sqrt(overlap2) * v + std::polar(std::sqrt(1.0 - overlap2), phase) * perp;
}

// p a1 (x) b1 + (1 - p) a2 (x) b2 with non-commuting a's and distinct b's,
// plus a little white noise.
DensityOperator discordant_state(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const Matrix ua = random_haar_unitary(2, seed).matrix();
  const Matrix ub = random_haar_unitary(2, seed + 0x5bd1e995ULL).matrix();
  const double p = 0.3 + 0.4 * unit(rng);
  const double ova = 0.2 + 0.6 * unit(rng);
  const double ovb = 0.5 * unit(rng);
  const double noise = 0.2 * unit(rng);
  const Vector a1 = ua.col(0);
  const Vector b1 = ub.col(0);
  const Vector a2 = with_overlap(a1, ova, 2.0 * std::numbers::pi * unit(rng));
  const Vector b2 = with_overlap(b1, ovb, 2.0 * std::numbers::pi * unit(rng));
  const Matrix mix = p * kron(projector(a1), projector(b1)) + (1.0 - p) * kron(projector(a2), projector(b2));
  return DensityOperator((1.0 - noise) * mix + noise * Matrix::Identity(4, 4) / 4.0, 2, 2);
}

void faithfulness(Context& c) {
  struct Indicators {
    double d;
    double discord;
    double defect;
    bool found;
  };
  ClassicalityConfig cfg;
  cfg.optimizer = c.inner;
  cfg.optimizer.closed_form_dispatch = true;
  cfg.zero_tol = c.checks.tol(1e-7);
  const auto cq = collect<Indicators>(kFaithfulStates, c.threads, [&](int i) {
    const DensityOperator rho = classical_quantum_state(5000 + i);
    Indicators out{0.0, discord_numeric(rho), 0.0, false};
    try {
      const ClassicalBasisSearch s = find_classical_basis(rho, cfg);
      out.d = s.d;
      out.defect = s.defect;
      out.found = s.basis.has_value();
    } catch (const std::logic_error&) {
      out.d = minimize_d(rho, cfg.optimizer).value;
      out.defect = std::numeric_limits<double>::infinity();
    }
    return out;
  });
  const auto dis = collect<Indicators>(kFaithfulStates, c.threads, [&](int i) {
    const DensityOperator rho = discordant_state(6000 + i);
    const BasisSearch fano = min_fano_offdiagonal_defect(rho, c.inner);
    return Indicators{minimize_d(rho, cfg.optimizer).value, discord_numeric(rho), fano.value, false};
  });

  int cq_fail = 0;
  double cq_d = 0.0;
  double cq_discord = 0.0;
  double cq_defect = 0.0;
  for (const Indicators& x : cq) {
    const bool zero = x.d < c.checks.tol(1e-7) && x.discord < c.checks.tol(1e-5) && x.found &&
                      x.defect < c.checks.tol(1e-6);
    if (!zero) ++cq_fail;
    cq_d = std::max(cq_d, x.d);
    cq_discord = std::max(cq_discord, x.discord);
    cq_defect = std::max(cq_defect, x.defect);
  }
  int dis_fail = 0;
  double dis_d = 1.0;
  double dis_discord = 1.0;
  double dis_defect = 1.0;
  for (const Indicators& x : dis) {
    if (!(x.d > 1e-3 && x.discord > 1e-3 && x.defect > 1e-3)) ++dis_fail;
    dis_d = std::min(dis_d, x.d);
    dis_discord = std::min(dis_discord, x.discord);
    dis_defect = std::min(dis_defect, x.defect);
  }
  c.checks.count_zero("classical-quantum states not classified zero (of 200)", cq_fail);
  c.checks.at_most("classical-quantum max D", cq_d, 0.0, 1e-7);
  c.checks.at_most("classical-quantum max discord", cq_discord, 0.0, 1e-5);
  c.checks.at_most("classical-quantum max basis defect", cq_defect, 0.0, 1e-6);
  c.checks.count_zero("discordant states not positive on all indicators (of 200)", dis_fail);
  c.checks.above("discordant min D", dis_d, 1e-3);
  c.checks.above("discordant min discord", dis_discord, 1e-3);
  c.checks.above("discordant min over bases of defect", dis_defect, 1e-3);
}

// ---- 8 ---------------------------------------------------------------------

void werner_zero(Context& c) {
  for (int d = 2; d <= 5; ++d) {
    const WernerParams w = WernerParams::zero_discord(d);
    c.checks.near("werner_d at p=(d+1)/2d, d=" + std::to_string(d), werner_d(w), 0.0, 0.0);
    c.checks.near("werner_discord at p=(d+1)/2d, d=" + std::to_string(d), werner_discord(w), 0.0, 1e-9);
  }
  const DensityOperator rho = werner_state(WernerParams::zero_discord(2));
  c.checks.at_most("optimizer D at d=2, p=3/4", minimize_d(rho, c.inner).value, 0.0, 1e-7);
  c.checks.at_most("discord_numeric at d=2, p=3/4", discord_numeric(rho), 0.0, 1e-5);
}

// ---- 9 ---------------------------------------------------------------------

// Pure M x M state of Schmidt rank r, every nonzero alpha_k^2 >= 0.1, rotated
// by random local unitaries.
DensityOperator schmidt_rank_state(int m, int r, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> weight(1.0);
  std::vector<double> w(r);
  double total = 0.0;
  for (double& x : w) total += (x = weight(rng));
  RealVector alphas(r);
  for (int k = 0; k < r; ++k) alphas(k) = std::sqrt(0.1 + (1.0 - 0.1 * r) * w[k] / total);
  return local_rotate(schmidt_state(alphas, m, m).density(), seed + 17);
}

void multiplicity(Context& c) {
  struct Case {
    int m;
    int r;
    std::uint64_t seed;
    std::vector<int> v;
  };
  const std::vector<std::vector<int>> v3 = {{3, 0, 0}, {1, 1, 0}, {0, 0, 1}};
  const std::vector<std::vector<int>> v4 = {{4, 0, 0, 0}, {2, 1, 0, 0}, {0, 2, 0, 0}, {1, 0, 1, 0}, {0, 0, 0, 1}};
  constexpr int kStatesPerRank = 4;
  std::vector<Case> cases;
  for (const int m : {3, 4}) {
    for (int r = 1; r <= 3; ++r) {
      for (int s = 0; s < kStatesPerRank; ++s) {
        for (const auto& v : m == 3 ? v3 : v4) cases.push_back({m, r, 7000ULL + 100 * m + 10 * r + s, v});
      }
    }
  }
  struct Outcome {
    double d;
    double defect;
  };
  const auto outcomes = collect<Outcome>(static_cast<int>(cases.size()), c.threads, [&](int i) {
    const Case& k = cases[i];
    const DensityOperator rho = schmidt_rank_state(k.m, k.r, k.seed);
    const MultiplicityVector v(k.v);
    return Outcome{minimize_d_multiplicity(rho, v, c.inner).value,
                   min_projective_invariance_defect(rho, v, c.inner).value};
  });
  const double zero = c.checks.tol(1e-6);
  int d_mismatch = 0;
  int defect_mismatch = 0;
  double max_zero_d = 0.0;
  double min_pos_d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const bool expect_zero = MultiplicityVector(cases[i].v).max_multiplicity() >= cases[i].r;
    const Outcome& o = outcomes[i];
    if ((o.d < zero) != expect_zero) ++d_mismatch;
    if ((o.defect < zero) != (o.d < zero)) ++defect_mismatch;
    if (expect_zero) {
      max_zero_d = std::max(max_zero_d, o.d);
    } else {
      min_pos_d = std::min(min_pos_d, o.d);
    }
  }
  c.checks.count_zero("D_v zero iff k >= r, mismatches of " + std::to_string(cases.size()), d_mismatch);
  c.checks.count_zero("projective defect verdict differs from D_v verdict", defect_mismatch);
  c.checks.at_most("max D_v where k >= r", max_zero_d, 0.0, 1e-6);
  c.checks.above("min D_v where k < r", min_pos_d, 1e-6);
}

// ---- 10 --------------------------------------------------------------------

void separable(Context& c) {
  const double pi = std::numbers::pi;
  const SeparableEnsemble best = rank2_ensemble(pi, pi / 2.0);
  const DensityOperator rho = best.assemble();
  c.checks.near("D at (alpha, beta) = (pi, pi/2), closed form", d_closed_2xN(rho), 0.5, 1e-7);
  c.checks.near("D at (alpha, beta) = (pi, pi/2), optimizer", minimize_d(rho, c.inner).value, 0.5, 1e-6);
  c.checks.holds("ensemble has p = 1/2, |<a1|a2>| = 1/sqrt2, <b1|b2> = 0", max_nonclassical_rank2_check(best, 1e-12));

  constexpr int kGrid = 33;  // includes (pi, pi/2)
  const auto grid = collect<double>(kGrid * kGrid, c.threads, [&](int idx) {
    const int i = idx / kGrid;
    const int j = idx % kGrid;
    if (i == kGrid - 1 && 2 * j == kGrid - 1) return -std::numeric_limits<double>::infinity();
    return d_closed_2xN(rank2_ensemble(pi * i / (kGrid - 1), pi * j / (kGrid - 1)).assemble());
  });
  c.checks.above("1/2 - max D over the 33x33 (alpha, beta) grid off the optimum", 0.5 - max_real(grid), 1e-4);

  constexpr int kEnsembles = 500;
  const auto excess = collect<double>(kEnsembles, c.threads, [&](int i) {
    const SeparableEnsemble e = random_separable_ensemble(2 + i % 3, 8000 + i);
    return d_closed_2xN(e.assemble()) - separable_upper_bound(e);
  });
  c.checks.at_most("max (D - (1 - max p_i)) over 500 ensembles", max_real(excess), 0.0, 1e-9);
}

// ---- 11 --------------------------------------------------------------------

void lu_invariance(Context& c) {
  constexpr int kTriples = 100;
  const auto closed22 = collect<double>(kTriples, c.threads, [&](int i) {
    const DensityOperator rho = random_density(2, 2, 1 + i % 4, 9000 + i);
    return std::abs(d_closed_2xN(rho) - d_closed_2xN(local_rotate(rho, 9500 + i)));
  });
  const auto closed23 = collect<double>(kTriples, c.threads, [&](int i) {
    const DensityOperator rho = random_density(2, 3, 1 + i % 6, 10000 + i);
    return std::abs(d_closed_2xN(rho) - d_closed_2xN(local_rotate(rho, 10500 + i)));
  });
  const auto opt33 = collect<double>(kTriples, c.threads, [&](int i) {
    const DensityOperator rho = random_density(3, 3, 1 + i % 9, 11000 + i);
    return std::abs(minimize_d(rho, c.inner).value - minimize_d(local_rotate(rho, 11500 + i), c.inner).value);
  });
  c.checks.near("max |D(rho) - D(V rho V^dagger)|, 2x2 closed form", max_real(closed22), 0.0, 1e-9);
  c.checks.near("max |D(rho) - D(V rho V^dagger)|, 2x3 closed form", max_real(closed23), 0.0, 1e-9);
  c.checks.near("max |D(rho) - D(V rho V^dagger)|, 3x3 optimizer", max_real(opt33), 0.0, 1e-4);
}

struct Criterion {
  CriterionInfo info;
  double budget_seconds;
  void (*run)(Context&);
};

const std::vector<Criterion>& registry() {
  static const std::vector<Criterion> all = {
      {{1, "werner-pair", "Werner pair reproduction"}, 1.0, werner_pair},
      {{2, "bell-max", "Maximal value at the Bell state"}, 5.0, bell_max},
      {{3, "schmidt", "Schmidt family D = 2ab"}, 10.0, schmidt},
      {{4, "closed-vs-brute", "Closed form vs brute force"}, 120.0, closed_vs_brute},
      {{5, "bounds", "Bound ordering"}, 0.0, bounds},
      {{6, "chsh", "CHSH link"}, 0.0, chsh},
      {{7, "faithfulness", "Faithfulness equivalence"}, 180.0, faithfulness},
      {{8, "werner-zero", "Zero-discord Werner point"}, 0.0, werner_zero},
      {{9, "multiplicity", "Generalized multiplicity correspondence"}, 120.0, multiplicity},
      {{10, "separable", "Separable maximality"}, 0.0, separable},
      {{11, "lu-invariance", "Local-unitary invariance"}, 0.0, lu_invariance},
  };
  return all;
}

std::string fmt(const char* pattern, double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), pattern, x);
  return buf;
}

void print_checks(const std::vector<CheckLine>& lines, std::ostream& out) {
  for (const CheckLine& l : lines) {
    out << "      " << (l.pass ? "ok   " : "FAIL ") << l.what << ": measured=" << fmt("%.10g", l.measured)
        << " expected=" << fmt("%.10g", l.expected) << " tol=" << fmt("%.3g", l.tol) << "\n";
  }
}

}  // namespace

bool ReproduceSummary::all_passed() const {
  return std::all_of(results.begin(), results.end(), [](const CriterionResult& r) { return r.pass; });
}

const std::vector<CriterionInfo>& criteria() {
  static const std::vector<CriterionInfo> infos = [] {
    std::vector<CriterionInfo> out;
    for (const Criterion& c : registry()) out.push_back(c.info);
    return out;
  }();
  return infos;
}

ReproduceSummary run_reproduce(const ReproduceOptions& options, std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  ReproduceSummary summary;
  OptimizerConfig inner = options.optimizer;
  inner.closed_form_dispatch = false;
  inner.threads = 1;
  const int threads = resolve_threads(options.optimizer.threads);
  const auto suite_start = Clock::now();

  for (const Criterion& crit : registry()) {
    if (!options.filter.empty() && crit.info.key.find(options.filter) == std::string::npos) continue;
    Checks checks(options.tolerance_scale);
    Context ctx{checks, inner, threads};
    CriterionResult r;
    r.number = crit.info.number;
    r.key = crit.info.key;
    r.title = crit.info.title;
    r.budget_seconds = crit.budget_seconds;
    const auto start = Clock::now();
    try {
      crit.run(ctx);
    } catch (const std::exception& e) {
      checks.holds(std::string("no exception (") + e.what() + ")", false);
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (r.budget_seconds > 0.0) checks.at_most("runtime seconds", r.seconds, r.budget_seconds, 0.0);
    r.checks = checks.take();
    r.pass = std::all_of(r.checks.begin(), r.checks.end(), [](const CheckLine& l) { return l.pass; });

    char head[160];
    std::snprintf(head, sizeof(head), "%s %2d %-16s %-42s %8.2f s", r.pass ? "PASS" : "FAIL", r.number,
                  r.key.c_str(), r.title.c_str(), r.seconds);
    out << head << "\n";
    if (options.details || !r.pass) print_checks(r.checks, out);
    out.flush();
    summary.results.push_back(std::move(r));
  }
  summary.seconds = std::chrono::duration<double>(Clock::now() - suite_start).count();
  const auto passed = std::count_if(summary.results.begin(), summary.results.end(),
                                    [](const CriterionResult& r) { return r.pass; });
  out << passed << "/" << summary.results.size() << " criteria passed in " << fmt("%.1f", summary.seconds) << " s";
  if (options.filter.empty()) {
    out << " (budget " << fmt("%.0f", kSuiteBudgetSeconds) << " s)";
    if (summary.seconds > kSuiteBudgetSeconds) {
      CheckLine over{"suite runtime seconds", summary.seconds, kSuiteBudgetSeconds, 0.0, false};
      summary.results.push_back({0, "suite-runtime", "Full suite runtime", summary.seconds, kSuiteBudgetSeconds,
                                 {over}, false});
    }
  }
  out << "\n";
  return summary;
}

}  // namespace nonclass::app
