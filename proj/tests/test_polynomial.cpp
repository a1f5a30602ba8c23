#include <doctest.h>

#include <cmath>

#include "hofj/experiment.hpp"
#include "hofj/polynomial.hpp"
#include "support/graph_gen.hpp"

using namespace hofj;

namespace {

OpinionState random_state(const WeightedGraph& g, std::uint64_t seed, double alpha_floor) {
  RandomStream rng(seed);
  Vector s(g.node_count()), alpha(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) {
    s[i] = rng.uniform01();
    alpha[i] = alpha_floor + (0.999 - alpha_floor) * rng.uniform01();
  }
  return OpinionState::create(std::move(s), std::move(alpha));
}

// Closed-form equilibria for the ten-node tree, from the symmetry-reduced
// 2x2 linear systems (yellow/blue, center pinned at 1).
constexpr double kTreeYellowClassic = 25.0 / 138.0;   // 0.18115942...
constexpr double kTreeBlueClassic = 33.0 / 184.0;     // 0.17934782...
constexpr double kTreeBlueSecond = 33.0 / 34.0;       // 0.97058823...
constexpr double kTreeYellowHybrid = 20.0 / 141.0;    // 0.14184397...
constexpr double kTreeBlueHybrid = 33.0 / 94.0;       // 0.35106382...

}  // namespace

TEST_CASE("polynomial spec validation") {
  const PolynomialSpec empty{{}};
  const PolynomialSpec off_sum{{0.5, 0.6}};
  const PolynomialSpec negative{{1.5, -0.5}};
  const PolynomialSpec good{{0.25, 0.25, 0.5}};
  CHECK_THROWS_AS(empty.validate(), std::invalid_argument);
  CHECK_THROWS_AS(off_sum.validate(), std::invalid_argument);
  CHECK_THROWS_AS(negative.validate(), std::invalid_argument);
  CHECK_NOTHROW(good.validate());
}

TEST_CASE("degree-one transition polynomial reduces to P exactly") {
  WeightedGraph g = testsupport::random_connected_graph(25, 30, 17, 0.5, 2.0);
  const DenseOperator pstar = build_transition_polynomial(g, PolynomialSpec{{1.0}});
  const Matrix p = dense_transition(g);
  CHECK((pstar.mat - p).cwiseAbs().maxCoeff() == 0.0);
  CHECK(check_operator_invariants(pstar).empty());
}

TEST_CASE("second-order transition on a triangle is the hand-computed square") {
  WeightedGraph g = WeightedGraph::from_edges(
      3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
  const DenseOperator pstar = build_transition_polynomial(g, PolynomialSpec{{0.0, 1.0}});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(pstar.mat(i, j) == doctest::Approx(i == j ? 0.5 : 0.25).epsilon(1e-14));
}

TEST_CASE("polynomial laplacian") {
  SUBCASE("degree one gives D - A") {
    WeightedGraph g = testsupport::random_connected_graph(20, 25, 21, 0.5, 2.0);
    const DenseOperator l = build_polynomial_laplacian(g, PolynomialSpec{{1.0}});
    const Matrix expected = degree_vector(g).asDiagonal().toDenseMatrix() - dense_adjacency(g);
    CHECK((l.mat - expected).cwiseAbs().maxCoeff() < 1e-12);
  }
  SUBCASE("rows sum to zero and the matrix is a Laplacian for random beta") {
    WeightedGraph g = testsupport::random_connected_graph(40, 60, 23, 0.5, 3.0);
    for (auto beta : {PolynomialSpec{{0.2, 0.8}}, PolynomialSpec{{0.1, 0.4, 0.5}}}) {
      const DenseOperator l = build_polynomial_laplacian(g, beta);
      CHECK(check_operator_invariants(l).empty());
      CHECK((l.mat * Vector::Ones(g.node_count())).lpNorm<Eigen::Infinity>() < 1e-9);
    }
  }
  SUBCASE("three-node path, beta = (0,1), against the hand computation") {
    WeightedGraph g = WeightedGraph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
    const DenseOperator l = build_polynomial_laplacian(g, PolynomialSpec{{0.0, 1.0}});
    Matrix expected(3, 3);
    expected << 0.5, 0.0, -0.5, 0.0, 0.0, 0.0, -0.5, 0.0, 0.5;
    CHECK((l.mat - expected).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("P* = I - D^{-1} L_beta holds between the two builders") {
    WeightedGraph g = testsupport::random_connected_graph(15, 20, 29, 0.5, 2.0);
    const PolynomialSpec spec{{0.3, 0.7}};
    const DenseOperator pstar = build_transition_polynomial(g, spec);
    const DenseOperator l = build_polynomial_laplacian(g, spec);
    Matrix reconstructed = -l.mat;
    const Vector d = degree_vector(g);
    for (Eigen::Index i = 0; i < reconstructed.rows(); ++i) {
      reconstructed.row(i) /= d[i];
      reconstructed(i, i) += 1.0;
    }
    CHECK((reconstructed - pstar.mat).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("full stubbornness pins the equilibrium at the innate opinions") {
  WeightedGraph g = testsupport::random_connected_graph(30, 40, 31);
  RandomStream rng(5);
  Vector s(g.node_count());
  for (NodeId i = 0; i < g.node_count(); ++i) s[i] = rng.uniform01();
  const OpinionState state = OpinionState::create(s, Vector::Ones(g.node_count()));
  for (auto spec : {PolynomialSpec{{1.0}}, PolynomialSpec{{0.0, 1.0}}, PolynomialSpec{{0.5, 0.5}}}) {
    const Vector z = solve_equilibrium_exact(g, spec, state);
    CHECK((z - s).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("tree reference cases against the closed-form equilibria") {
  const WeightedGraph tree = make_example_tree();
  const OpinionState state = make_example_tree_state();

  struct Case {
    PolynomialSpec spec;
    double yellow, blue;
  };
  const Case cases[] = {{PolynomialSpec{{1.0, 0.0}}, kTreeYellowClassic, kTreeBlueClassic},
                        {PolynomialSpec{{0.0, 1.0}}, 0.0, kTreeBlueSecond},
                        {PolynomialSpec{{0.5, 0.5}}, kTreeYellowHybrid, kTreeBlueHybrid}};
  for (const Case& c : cases) {
    const Vector z = solve_equilibrium_exact(tree, c.spec, state);
    CHECK(z[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int i = 1; i <= 3; ++i) CHECK(std::abs(z[i] - c.yellow) < 1e-10);
    for (int i = 4; i <= 9; ++i) CHECK(std::abs(z[i] - c.blue) < 1e-10);
  }
}

TEST_CASE("exact solve matches a long fixed-point iteration on a random graph") {
  WeightedGraph g = testsupport::random_connected_graph(50, 80, 37, 0.5, 2.0);
  const PolynomialSpec spec{{0.5, 0.5}};
  const OpinionState state = random_state(g, 101, 0.05);
  const Vector z = solve_equilibrium_exact(g, spec, state);

  // Oracle: run the update rule for 1000 steps directly.
  const Matrix pstar = build_transition_polynomial(g, spec).mat;
  Vector x = state.s;
  for (int t = 0; t < 1000; ++t)
    x = state.alpha.cwiseProduct(state.s) +
        (Vector::Ones(x.size()) - state.alpha).cwiseProduct((pstar * x).eval());
  CHECK((x - z).lpNorm<Eigen::Infinity>() < 1e-8);
}

TEST_CASE("equilibrium stays inside the opinion box") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    WeightedGraph g = testsupport::random_connected_graph(40, 50, seed, 0.5, 4.0);
    const OpinionState state = random_state(g, seed + 500, 0.01);
    const Vector z = solve_equilibrium_exact(g, PolynomialSpec{{0.4, 0.6}}, state);
    CHECK(z.minCoeff() > -1e-9);
    CHECK(z.maxCoeff() < 1.0 + 1e-9);
  }
}

TEST_CASE("mean absolute error") {
  Vector a(2), b(2);
  a << 0.0, 1.0;
  b << 1.0, 0.0;
  CHECK(mean_absolute_error(a, a) == 0.0);
  CHECK(mean_absolute_error(a, b) == doctest::Approx(1.0));
  Vector c(3);
  c.setZero();
  CHECK_THROWS_AS(mean_absolute_error(a, c), std::invalid_argument);
}

TEST_CASE("dense construction refuses graphs above the cap") {
  WeightedGraph g = testsupport::random_connected_graph(12, 6, 41);
  CHECK_THROWS_WITH_AS(build_transition_polynomial(g, PolynomialSpec{{1.0}}, 10),
                       doctest::Contains("sparsifier"), std::invalid_argument);
  CHECK_THROWS_AS(solve_equilibrium_exact(g, PolynomialSpec{{1.0}},
                                          random_state(g, 1, 0.1), 10),
                  std::invalid_argument);
}

TEST_CASE("opinion state validation") {
  Vector s(2), alpha(2);
  s << 0.5, 1.5;
  alpha << 0.5, 0.5;
  CHECK_THROWS_AS(OpinionState::create(s, alpha), std::invalid_argument);
  s << 0.5, 1.0;
  alpha << 0.0, 0.5;
  CHECK_THROWS_AS(OpinionState::create(s, alpha), std::invalid_argument);
  alpha << 0.5, 1.0;
  CHECK_NOTHROW(OpinionState::create(s, alpha));
}
