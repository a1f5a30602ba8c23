#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "hofj/graph.hpp"
#include "support/graph_gen.hpp"

using namespace hofj;

namespace {

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name, const std::string& content)
      : path("tmp_" + name) {
    std::ofstream out(path);
    out << content;
  }
  ~TempFile() { std::remove(path.c_str()); }
};

// 0.999 quantiles of chi-square, dof 1..9.
constexpr double kChi2Crit[] = {10.828, 13.816, 16.266, 18.467, 20.515,
                                22.458, 24.322, 26.124, 27.877};

}  // namespace

TEST_CASE("edge list parsing: comments, default weights, path graph") {
  TempFile f("path.txt", "# comment\n% also a comment\n0 1\n1 2\n");
  LoadStats stats;
  WeightedGraph g = load_edge_list(f.path, false, &stats);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  for (const Edge& e : g.edges()) CHECK(e.w == 1.0);
  CHECK(stats.comment_count == 2);
  CHECK(g.degree(1) == doctest::Approx(2.0));
}

TEST_CASE("edge list parsing: reciprocal duplicates merge by weight sum") {
  TempFile f("recip.txt", "0 1 2.0\n1 0 3.0\n");
  LoadStats stats;
  WeightedGraph g = load_edge_list(f.path, false, &stats);
  CHECK(g.node_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.edges()[0].w == doctest::Approx(5.0));
  CHECK(stats.duplicates_merged == 1);
}

TEST_CASE("edge list parsing: self-loops dropped and counted") {
  TempFile f("loops.txt", "0 1\n1 1 4.0\n2 2\n1 2\n");
  LoadStats stats;
  WeightedGraph g = load_edge_list(f.path, false, &stats);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(stats.self_loops_dropped == 2);
}

TEST_CASE("edge list parsing: errors carry line numbers") {
  SUBCASE("missing endpoint") {
    TempFile f("bad1.txt", "0 1\n2\n");
    CHECK_THROWS_WITH_AS(load_edge_list(f.path), doctest::Contains("line 2"),
                         std::runtime_error);
  }
  SUBCASE("non-positive weight") {
    TempFile f("bad2.txt", "0 1 1.0\n1 2 0.0\n");
    CHECK_THROWS_WITH_AS(load_edge_list(f.path), doctest::Contains("line 2"),
                         std::runtime_error);
  }
  SUBCASE("negative weight") {
    TempFile f("bad3.txt", "0 1 -2\n");
    CHECK_THROWS_AS(load_edge_list(f.path), std::runtime_error);
  }
  SUBCASE("empty graph") {
    TempFile f("bad4.txt", "# nothing here\n");
    CHECK_THROWS_AS(load_edge_list(f.path), std::runtime_error);
  }
  SUBCASE("missing file") { CHECK_THROWS_AS(load_edge_list("no_such_file.txt"), std::runtime_error); }
}

TEST_CASE("edge list parsing: id compaction") {
  SUBCASE("numeric ids sort numerically") {
    TempFile f("numeric.txt", "10 2\n2 3\n");
    WeightedGraph g = load_edge_list(f.path);
    REQUIRE(g.node_count() == 3);
    CHECK(g.original_ids() == std::vector<std::string>{"2", "3", "10"});
    CHECK(g.edge_weight(0, 2) == doctest::Approx(1.0));  // 2-10
    CHECK(g.edge_weight(0, 1) == doctest::Approx(1.0));  // 2-3
  }
  SUBCASE("string ids sort lexicographically") {
    TempFile f("strings.txt", "carol bob\nalice bob\n");
    WeightedGraph g = load_edge_list(f.path);
    REQUIRE(g.node_count() == 3);
    CHECK(g.original_ids() == std::vector<std::string>{"alice", "bob", "carol"});
    CHECK(g.edge_weight(0, 1) == doctest::Approx(1.0));
    CHECK(g.edge_weight(1, 2) == doctest::Approx(1.0));
    CHECK(g.edge_weight(0, 2) == 0.0);
  }
}

TEST_CASE("largest connected component") {
  SUBCASE("connected graph is unchanged") {
    WeightedGraph g = testsupport::random_connected_graph(12, 6, 3);
    WeightedGraph lcc = largest_connected_component(g);
    CHECK(lcc.node_count() == g.node_count());
    CHECK(lcc.edge_count() == g.edge_count());
  }
  SUBCASE("keeps the larger of two components") {
    TempFile f("two.txt", "0 1\n1 2\n3 4\n");
    WeightedGraph g = load_edge_list(f.path);
    WeightedGraph lcc = largest_connected_component(g);
    CHECK(lcc.node_count() == 3);
    CHECK(lcc.edge_count() == 2);
    CHECK(lcc.original_ids() == std::vector<std::string>{"0", "1", "2"});
  }
  SUBCASE("equal sizes: the component with the smallest id wins") {
    TempFile f("tie.txt", "5 6\n0 9\n");
    WeightedGraph g = load_edge_list(f.path);
    WeightedGraph lcc = largest_connected_component(g);
    REQUIRE(lcc.node_count() == 2);
    CHECK(lcc.original_ids() == std::vector<std::string>{"0", "9"});
  }
  SUBCASE("load + lcc is idempotent") {
    TempFile f("idem.txt", "0 1\n1 2\n2 0\n7 8\n");
    WeightedGraph once = largest_connected_component(load_edge_list(f.path));
    WeightedGraph twice = largest_connected_component(once);
    REQUIRE(once.edge_count() == twice.edge_count());
    for (std::size_t i = 0; i < once.edges().size(); ++i) {
      CHECK(once.edges()[i].u == twice.edges()[i].u);
      CHECK(once.edges()[i].v == twice.edges()[i].v);
      CHECK(once.edges()[i].w == twice.edges()[i].w);
    }
  }
}

TEST_CASE("transition rows are stochastic: neighbor weights sum to the degree") {
  WeightedGraph g = testsupport::random_connected_graph(30, 40, 11, 0.5, 3.0);
  for (NodeId u = 0; u < g.node_count(); ++u) {
    double sum = 0.0;
    for (std::size_t k = 0; k < g.neighbor_count(u); ++k) sum += g.neighbor_weight(u, k);
    CHECK(sum / g.degree(u) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("neighbor sampling frequencies match w_uv / d_u") {
  const int draws = 100000;
  SUBCASE("uniform star") {
    WeightedGraph g = WeightedGraph::from_edges(
        4, std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}});
    RandomStream rng(42);
    std::vector<int> counts(4, 0);
    for (int i = 0; i < draws; ++i) ++counts[static_cast<std::size_t>(g.sample_neighbor(0, rng))];
    const double p = 1.0 / 3.0;
    const double band = 3.0 * std::sqrt(p * (1 - p) / draws);
    for (int leaf = 1; leaf <= 3; ++leaf)
      CHECK(std::abs(counts[static_cast<std::size_t>(leaf)] / double(draws) - p) < band);
  }
  SUBCASE("weights 1 and 3") {
    WeightedGraph g =
        WeightedGraph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {0, 2, 3.0}});
    RandomStream rng(43);
    int hi = 0;
    for (int i = 0; i < draws; ++i) hi += g.sample_neighbor(0, rng) == 2 ? 1 : 0;
    const double band = 3.0 * std::sqrt(0.75 * 0.25 / draws);
    CHECK(std::abs(hi / double(draws) - 0.75) < band);
  }
  SUBCASE("path interior node") {
    WeightedGraph g = WeightedGraph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}});
    RandomStream rng(44);
    int right = 0;
    for (int i = 0; i < draws; ++i) right += g.sample_neighbor(1, rng) == 2 ? 1 : 0;
    const double band = 3.0 * std::sqrt(0.25 / draws);
    CHECK(std::abs(right / double(draws) - 0.5) < band);
  }
}

TEST_CASE("neighbor sampling passes a chi-square test on small weighted graphs") {
  const int draws = 100000;
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    WeightedGraph g = testsupport::random_connected_graph(8, 6, seed, 0.25, 4.0);
    RandomStream rng(seed * 1000 + 5);
    for (NodeId u = 0; u < g.node_count(); ++u) {
      const std::size_t deg = g.neighbor_count(u);
      if (deg < 2) continue;
      std::vector<int> counts(deg, 0);
      for (int i = 0; i < draws; ++i) {
        const NodeId v = g.sample_neighbor(u, rng);
        for (std::size_t k = 0; k < deg; ++k)
          if (g.neighbor(u, k) == v) {
            ++counts[k];
            break;
          }
      }
      double chi2 = 0.0;
      for (std::size_t k = 0; k < deg; ++k) {
        const double expected = draws * g.neighbor_weight(u, k) / g.degree(u);
        chi2 += (counts[k] - expected) * (counts[k] - expected) / expected;
      }
      const std::size_t dof = deg - 1;
      REQUIRE(dof <= 9);
      CHECK(chi2 < kChi2Crit[dof - 1]);
    }
  }
}

TEST_CASE("random walks") {
  SUBCASE("zero steps returns the start") {
    WeightedGraph g = testsupport::random_connected_graph(10, 5, 7);
    RandomStream rng(1);
    CHECK(random_walk(g, 4, 0, rng) == 4);
  }
  SUBCASE("single step on a two-node graph reaches the only neighbor") {
    WeightedGraph g = WeightedGraph::from_edges(2, std::vector<Edge>{{0, 1, 2.5}});
    RandomStream rng(2);
    CHECK(random_walk(g, 0, 1, rng) == 1);
  }
  SUBCASE("two-step endpoint distribution on a triangle matches the dense square") {
    // Dense oracle: P = (J - I) / 2 on the triangle, so P^2 has diagonal 1/2
    // and off-diagonal 1/4.
    WeightedGraph g = WeightedGraph::from_edges(
        3, std::vector<Edge>{{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
    const int walks = 100000;
    RandomStream rng(3);
    std::vector<int> counts(3, 0);
    for (int i = 0; i < walks; ++i) ++counts[static_cast<std::size_t>(random_walk(g, 0, 2, rng))];
    const double expected[] = {0.5, 0.25, 0.25};
    double tv = 0.0;
    for (int j = 0; j < 3; ++j)
      tv += 0.5 * std::abs(counts[static_cast<std::size_t>(j)] / double(walks) - expected[j]);
    CHECK(tv < 0.02);
  }
  SUBCASE("path variant visits adjacent nodes and matches the endpoint") {
    WeightedGraph g = testsupport::random_connected_graph(15, 10, 9, 0.5, 2.0);
    RandomStream rng_a(77), rng_b(77);
    const std::vector<NodeId> path = random_walk_path(g, 3, 6, rng_a);
    REQUIRE(path.size() == 7);
    CHECK(path.front() == 3);
    for (std::size_t i = 1; i < path.size(); ++i)
      CHECK(g.edge_weight(path[i - 1], path[i]) > 0.0);
    CHECK(random_walk(g, 3, 6, rng_b) == path.back());
  }
}

TEST_CASE("sampling from an isolated node is rejected") {
  WeightedGraph g = WeightedGraph::from_edges(3, std::vector<Edge>{{0, 1, 1.0}});
  RandomStream rng(5);
  CHECK_THROWS_AS(g.sample_neighbor(2, rng), std::invalid_argument);
}

TEST_CASE("id map export") {
  TempFile f("idmap_in.txt", "7 3\n3 9\n");
  WeightedGraph g = load_edge_list(f.path);
  write_id_map(g, "tmp_idmap_out.txt");
  std::ifstream in("tmp_idmap_out.txt");
  std::string line;
  std::getline(in, line);
  CHECK(line == "0 3");
  std::getline(in, line);
  CHECK(line == "1 7");
  std::getline(in, line);
  CHECK(line == "2 9");
  std::remove("tmp_idmap_out.txt");
}
