#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hofj/sparsifier.hpp"

namespace hofj {

struct IterationConfig {
  int max_iters = 100;
  std::optional<double> stop_tol;  // infinity-norm change threshold
  bool track_trace = false;

  void validate() const;
};

/// Sparse transition surrogate P_tilde = I - D^{-1} L_tilde, with D the
/// original graph's degree matrix. Rows sum to 1 since L_tilde 1 = 0; the
/// diagonal can dip below zero when L_tilde_ii > d_i, which is counted.
struct SparseTransition {
  SparseMat op;
  std::int64_t negative_entry_count = 0;
};

SparseTransition build_sparse_transition(const WeightedGraph& g, const SparsifierOutput& sp);

struct IterationResult {
  Vector x;
  std::vector<double> trace;  // per-step infinity-norm deltas (when tracked)
  int steps_run = 0;
};

/// Fixed-point iteration x(i) = diag(alpha) s + (I - diag(alpha)) P x(i-1)
/// starting from x(0) = s, for max_iters steps or until the infinity-norm
/// step change drops below stop_tol.
IterationResult iterate_opinions(const DenseOperator& transition, const OpinionState& state,
                                 const IterationConfig& cfg);
IterationResult iterate_opinions(const SparseTransition& transition, const OpinionState& state,
                                 const IterationConfig& cfg);

struct ErrorBoundInputs {
  double epsilon = 0.0;
  double alpha_min = 0.0;
  std::int64_t n = 0;
  int t = 0;
};

/// A-priori bound on |x_tilde(t) - z*|_inf for the sparsified iteration:
/// (4 eps sqrt(n) (1-a)(1-(1-a)^t) + (1-a)^t) / a with a = alpha_min.
double approximation_error_bound(const ErrorBoundInputs& in);

/// Bound on |x(t) - z*|_inf for the exact iteration: (1-a)^t / a.
double exact_iteration_error_bound(double alpha_min, int t);

/// True when the infinity-norm error against the exact equilibrium strictly
/// decreases at every step (steps where the error is already at the
/// floating-point floor count as vacuously contracting).
bool contraction_check(const DenseOperator& transition, const OpinionState& state, int steps);

}  // namespace hofj
