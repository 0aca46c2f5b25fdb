#pragma once

#include "nonclass/closed_forms.hpp"

#include <cstdint>

namespace nonclass::app {

struct ProbeOptions {
  /// Number of product terms in the two-qubit separable ensemble.
  int terms = 3;
  int samples = 2000;
  /// Local perturbation rounds applied to the best sample.
  int refine_steps = 4000;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct ProbeResult {
  double best_d = 0.0;
  SeparableEnsemble best;
  int samples = 0;
};

/// Random search plus greedy perturbation for large D over separable
/// two-qubit ensembles with a fixed number of terms. Reports the best value
/// found; nothing about the search certifies a maximum.
ProbeResult probe_separable_max(const ProbeOptions& options);

}  // namespace nonclass::app
