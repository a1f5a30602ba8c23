#include "hofj/dynamics.hpp"

#include <cmath>
#include <stdexcept>

namespace hofj {

void IterationConfig::validate() const {
  if (max_iters < 1) throw std::invalid_argument("iteration: max_iters must be >= 1");
  if (stop_tol && !(*stop_tol > 0.0))
    throw std::invalid_argument("iteration: stop_tol must be positive");
}

SparseTransition build_sparse_transition(const WeightedGraph& g, const SparsifierOutput& sp) {
  const Eigen::Index n = g.node_count();
  if (sp.laplacian.rows() != n)
    throw std::invalid_argument("build_sparse_transition: dimension mismatch");

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(static_cast<std::size_t>(sp.laplacian.nonZeros()) + static_cast<std::size_t>(n));
  std::vector<char> has_diag(static_cast<std::size_t>(n), 0);
  SparseTransition out;
  for (Eigen::Index col = 0; col < sp.laplacian.outerSize(); ++col) {
    for (SparseMat::InnerIterator it(sp.laplacian, col); it; ++it) {
      const Eigen::Index i = it.row();
      const Eigen::Index j = it.col();
      double value = -it.value() / g.degree(static_cast<NodeId>(i));
      if (i == j) {
        value += 1.0;
        has_diag[static_cast<std::size_t>(i)] = 1;
      }
      if (value != 0.0) triplets.emplace_back(i, j, value);
      if (value < 0.0) ++out.negative_entry_count;
    }
  }
  for (Eigen::Index i = 0; i < n; ++i)
    if (!has_diag[static_cast<std::size_t>(i)]) triplets.emplace_back(i, i, 1.0);

  out.op.resize(n, n);
  out.op.setFromTriplets(triplets.begin(), triplets.end());
  out.op.makeCompressed();
  return out;
}

namespace {

template <typename Operator>
IterationResult iterate_impl(const Operator& p, const OpinionState& state,
                             const IterationConfig& cfg) {
  cfg.validate();
  state.validate();
  const Vector forced = state.alpha.cwiseProduct(state.s);
  const Vector openness = Vector::Ones(state.alpha.size()) - state.alpha;

  IterationResult res;
  res.x = state.s;  // x(0) = s
  Vector next(state.s.size());
  for (int i = 1; i <= cfg.max_iters; ++i) {
    next.noalias() = p * res.x;
    next = forced + openness.cwiseProduct(next);
    const double delta = (next - res.x).lpNorm<Eigen::Infinity>();
    res.x.swap(next);
    res.steps_run = i;
    if (cfg.track_trace) res.trace.push_back(delta);
    if (cfg.stop_tol && delta < *cfg.stop_tol) break;
  }
  return res;
}

}  // namespace

IterationResult iterate_opinions(const DenseOperator& transition, const OpinionState& state,
                                 const IterationConfig& cfg) {
  if (transition.kind != OperatorKind::Transition)
    throw std::invalid_argument("iterate_opinions: operator must carry the transition tag");
  return iterate_impl(transition.mat, state, cfg);
}

IterationResult iterate_opinions(const SparseTransition& transition, const OpinionState& state,
                                 const IterationConfig& cfg) {
  return iterate_impl(transition.op, state, cfg);
}

double approximation_error_bound(const ErrorBoundInputs& in) {
  if (!(in.alpha_min > 0.0 && in.alpha_min <= 1.0))
    throw std::invalid_argument("approximation_error_bound: alpha_min must lie in (0,1]");
  if (in.t < 0) throw std::invalid_argument("approximation_error_bound: t must be >= 0");
  const double decay = std::pow(1.0 - in.alpha_min, in.t);
  const double sparsifier_term = 4.0 * in.epsilon * std::sqrt(static_cast<double>(in.n)) *
                                 (1.0 - in.alpha_min) * (1.0 - decay);
  return (sparsifier_term + decay) / in.alpha_min;
}

double exact_iteration_error_bound(double alpha_min, int t) {
  if (!(alpha_min > 0.0 && alpha_min <= 1.0))
    throw std::invalid_argument("exact_iteration_error_bound: alpha_min must lie in (0,1]");
  return std::pow(1.0 - alpha_min, t) / alpha_min;
}

bool contraction_check(const DenseOperator& transition, const OpinionState& state, int steps) {
  const Vector z = solve_equilibrium_with_operator(transition, state);
  const Vector forced = state.alpha.cwiseProduct(state.s);
  const Vector openness = Vector::Ones(state.alpha.size()) - state.alpha;

  constexpr double kFloor = 1e-14;
  Vector x = state.s;
  double err = (x - z).lpNorm<Eigen::Infinity>();
  for (int i = 0; i < steps; ++i) {
    x = forced + openness.cwiseProduct((transition.mat * x).eval());
    const double next_err = (x - z).lpNorm<Eigen::Infinity>();
    if (!(next_err < err || next_err <= kFloor)) return false;
    err = next_err;
  }
  return true;
}

}  // namespace hofj
