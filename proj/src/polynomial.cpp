#include "hofj/polynomial.hpp"

#include <cmath>
#include <stdexcept>

namespace hofj {

namespace {

void ensure_dense_allowed(const WeightedGraph& g, std::size_t dense_cap) {
  if (static_cast<std::size_t>(g.node_count()) > dense_cap)
    throw std::invalid_argument(
        "dense construction refused: graph has " + std::to_string(g.node_count()) +
        " nodes, above the cap of " + std::to_string(dense_cap) +
        "; use the sparsifier path for graphs this large");
}

}  // namespace

void PolynomialSpec::validate() const {
  if (beta.empty()) throw std::invalid_argument("polynomial spec: beta must be non-empty");
  double sum = 0.0;
  for (double b : beta) {
    if (b < 0.0) throw std::invalid_argument("polynomial spec: beta entries must be >= 0");
    sum += b;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("polynomial spec: beta must sum to 1 (got " +
                                std::to_string(sum) + ")");
}

OpinionState OpinionState::create(Vector s, Vector alpha) {
  OpinionState st;
  st.s = std::move(s);
  st.alpha = std::move(alpha);
  st.x = st.s;
  st.validate();
  return st;
}

void OpinionState::validate() const {
  if (s.size() != alpha.size() || s.size() != x.size())
    throw std::invalid_argument("opinion state: vector sizes differ");
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!(s[i] >= 0.0 && s[i] <= 1.0))
      throw std::invalid_argument("opinion state: innate opinions must lie in [0,1]");
    if (!(alpha[i] > 0.0 && alpha[i] <= 1.0))
      throw std::invalid_argument("opinion state: resistances must lie in (0,1]");
  }
}

Vector degree_vector(const WeightedGraph& g) {
  return Eigen::Map<const Vector>(g.degrees().data(),
                                  static_cast<Eigen::Index>(g.degrees().size()));
}

Matrix dense_adjacency(const WeightedGraph& g) {
  const Eigen::Index n = g.node_count();
  Matrix a = Matrix::Zero(n, n);
  for (const Edge& e : g.edges()) {
    a(e.u, e.v) = e.w;
    a(e.v, e.u) = e.w;
  }
  return a;
}

Matrix dense_transition(const WeightedGraph& g) {
  Matrix p = dense_adjacency(g);
  const Vector d = degree_vector(g);
  for (Eigen::Index i = 0; i < p.rows(); ++i) p.row(i) /= d[i];
  return p;
}

DenseOperator build_transition_polynomial(const WeightedGraph& g, const PolynomialSpec& spec,
                                          std::size_t dense_cap) {
  spec.validate();
  ensure_dense_allowed(g, dense_cap);
  const Matrix p = dense_transition(g);
  Matrix power = p;
  Matrix acc = spec.beta[0] * p;
  for (int r = 2; r <= spec.degree(); ++r) {
    power = power * p;
    if (spec.beta[static_cast<std::size_t>(r - 1)] != 0.0)
      acc += spec.beta[static_cast<std::size_t>(r - 1)] * power;
  }
  return DenseOperator{std::move(acc), OperatorKind::Transition};
}

DenseOperator build_polynomial_laplacian(const WeightedGraph& g, const PolynomialSpec& spec,
                                         std::size_t dense_cap) {
  DenseOperator pstar = build_transition_polynomial(g, spec, dense_cap);
  const Vector d = degree_vector(g);
  Matrix l = -pstar.mat;
  for (Eigen::Index i = 0; i < l.rows(); ++i) {
    l.row(i) *= d[i];
    l(i, i) += d[i];
  }
  return DenseOperator{std::move(l), OperatorKind::PolynomialLaplacian};
}

Vector solve_equilibrium_with_operator(const DenseOperator& transition,
                                       const OpinionState& state) {
  if (transition.kind != OperatorKind::Transition)
    throw std::invalid_argument("solve: operator must carry the transition tag");
  state.validate();
  const Eigen::Index n = transition.mat.rows();
  if (state.s.size() != n) throw std::invalid_argument("solve: dimension mismatch");

  Matrix system = -transition.mat;
  for (Eigen::Index i = 0; i < n; ++i) system.row(i) *= (1.0 - state.alpha[i]);
  system += Matrix::Identity(n, n);

  const Vector rhs = state.alpha.cwiseProduct(state.s);
  Vector z = system.partialPivLu().solve(rhs);
  const double residual = (system * z - rhs).lpNorm<Eigen::Infinity>();
  if (!(residual <= 1e-9))
    throw std::runtime_error("solve: residual " + std::to_string(residual) +
                             " exceeds 1e-9 (singular or ill-conditioned system)");
  return z;
}

Vector solve_equilibrium_exact(const WeightedGraph& g, const PolynomialSpec& spec,
                               const OpinionState& state, std::size_t dense_cap) {
  return solve_equilibrium_with_operator(build_transition_polynomial(g, spec, dense_cap),
                                         state);
}

double mean_absolute_error(const Vector& a, const Vector& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("mean_absolute_error: length mismatch");
  if (a.size() == 0) throw std::invalid_argument("mean_absolute_error: empty vectors");
  return (a - b).cwiseAbs().mean();
}

std::string check_operator_invariants(const DenseOperator& op) {
  const Eigen::Index n = op.mat.rows();
  if (n != op.mat.cols()) return "matrix is not square";
  switch (op.kind) {
    case OperatorKind::Transition: {
      for (Eigen::Index i = 0; i < n; ++i) {
        const double rs = op.mat.row(i).sum();
        if (std::abs(rs - 1.0) > 1e-9)
          return "transition row " + std::to_string(i) + " sums to " + std::to_string(rs);
      }
      if (op.mat.minCoeff() < -1e-12 || op.mat.maxCoeff() > 1.0 + 1e-12)
        return "transition entries leave [0,1]";
      return {};
    }
    case OperatorKind::PolynomialLaplacian: {
      const double asym = (op.mat - op.mat.transpose()).cwiseAbs().maxCoeff();
      if (asym > 1e-9) return "laplacian asymmetry " + std::to_string(asym);
      for (Eigen::Index i = 0; i < n; ++i) {
        const double rs = op.mat.row(i).sum();
        if (std::abs(rs) > 1e-9)
          return "laplacian row " + std::to_string(i) + " sums to " + std::to_string(rs);
        for (Eigen::Index j = 0; j < n; ++j)
          if (i != j && op.mat(i, j) > 1e-12)
            return "laplacian off-diagonal (" + std::to_string(i) + "," + std::to_string(j) +
                   ") is positive";
      }
      return {};
    }
    case OperatorKind::SystemMatrix:
      return {};
  }
  return "unknown operator kind";
}

}  // namespace hofj
