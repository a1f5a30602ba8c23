#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <vector>

#include "hofj/graph.hpp"

namespace hofj {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense construction refuses graphs above this many nodes unless the
/// caller raises the cap explicitly.
inline constexpr std::size_t kDefaultDenseCap = 20000;

/// Coefficients (beta_1..beta_T) of a degree-T random-walk matrix
/// polynomial: non-negative, summing to 1.
struct PolynomialSpec {
  std::vector<double> beta;

  int degree() const { return static_cast<int>(beta.size()); }
  void validate() const;

  static PolynomialSpec classic() { return PolynomialSpec{{1.0}}; }
};

enum class OperatorKind { Transition, PolynomialLaplacian, SystemMatrix };

/// An n-by-n matrix with a semantic tag describing which structural
/// invariants it must satisfy (see check_operator_invariants).
struct DenseOperator {
  Matrix mat;
  OperatorKind kind = OperatorKind::Transition;
};

/// Innate opinions s in [0,1]^n, resistances alpha in (0,1]^n, and the
/// current expressed-opinion iterate x (initialized to s).
struct OpinionState {
  Vector s;
  Vector alpha;
  Vector x;

  static OpinionState create(Vector s, Vector alpha);
  void validate() const;
  double alpha_min() const { return alpha.minCoeff(); }
};

Vector degree_vector(const WeightedGraph& g);
Matrix dense_adjacency(const WeightedGraph& g);
/// Row-stochastic single-step transition matrix P = D^{-1} A.
Matrix dense_transition(const WeightedGraph& g);

/// P* = sum_r beta_r P^r, built by repeated dense multiplication.
DenseOperator build_transition_polynomial(const WeightedGraph& g, const PolynomialSpec& spec,
                                          std::size_t dense_cap = kDefaultDenseCap);

/// L_beta = D - sum_r beta_r D (D^{-1} A)^r; a Laplacian for any valid beta.
DenseOperator build_polynomial_laplacian(const WeightedGraph& g, const PolynomialSpec& spec,
                                         std::size_t dense_cap = kDefaultDenseCap);

/// Unique equilibrium z* of the higher-order opinion dynamics, i.e. the
/// solution of (I - (I - diag(alpha)) P*) z = diag(alpha) s, via a
/// factorization-based solve. Residual is checked to 1e-9.
Vector solve_equilibrium_exact(const WeightedGraph& g, const PolynomialSpec& spec,
                               const OpinionState& state,
                               std::size_t dense_cap = kDefaultDenseCap);

/// Same solve against a prebuilt transition operator.
Vector solve_equilibrium_with_operator(const DenseOperator& transition,
                                       const OpinionState& state);

/// Mean absolute error sigma = sum_i |a_i - b_i| / n.
double mean_absolute_error(const Vector& a, const Vector& b);

/// Validates the tagged invariants (row sums, symmetry, sign structure);
/// returns an empty string on success, else a description of the violation.
std::string check_operator_invariants(const DenseOperator& op);

}  // namespace hofj
