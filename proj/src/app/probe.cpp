#include "nonclass/app/probe.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nonclass::app {

namespace {

SeparableEnsemble perturb(const SeparableEnsemble& e, double scale, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, scale);
  std::vector<SeparableTerm> terms;
  double total = 0.0;
  for (const SeparableTerm& t : e.terms()) {
    SeparableTerm next = t;
    next.p = t.p * std::exp(normal(rng));
    for (Vector* v : {&next.a, &next.b}) {
      for (Eigen::Index k = 0; k < v->size(); ++k) (*v)(k) += Complex(normal(rng), normal(rng));
      v->normalize();
    }
    total += next.p;
    terms.push_back(std::move(next));
  }
  double rest = 1.0;
  for (std::size_t i = 0; i + 1 < terms.size(); ++i) rest -= (terms[i].p /= total);
  terms.back().p = rest;
  return SeparableEnsemble(std::move(terms));
}

}  // namespace

ProbeResult probe_separable_max(const ProbeOptions& o) {
  if (o.terms < 1) throw std::invalid_argument("probe: number of terms must be positive");
  if (o.samples < 1) throw std::invalid_argument("probe: samples must be positive");
  std::vector<double> values(o.samples);
  parallel_for(o.samples, resolve_threads(o.threads), [&](int i) {
    values[i] = d_closed_2xN(random_separable_ensemble(o.terms, o.seed + i).assemble());
  });
  const auto best_it = std::max_element(values.begin(), values.end());
  const int best_index = static_cast<int>(best_it - values.begin());

  ProbeResult out{*best_it, random_separable_ensemble(o.terms, o.seed + best_index), o.samples};
  std::mt19937_64 rng(o.seed ^ 0xa0761d6478bd642fULL);
  double scale = 0.1;
  for (int step = 0; step < o.refine_steps; ++step) {
    const SeparableEnsemble candidate = perturb(out.best, scale, rng);
    const double d = d_closed_2xN(candidate.assemble());
    if (d > out.best_d) {
      out.best_d = d;
      out.best = candidate;
    } else if (step % 200 == 199) {
      scale = std::max(scale * 0.5, 1e-6);
    }
  }
  return out;
}

}  // namespace nonclass::app
