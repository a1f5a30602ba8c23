#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hofj/dynamics.hpp"
#include "hofj/opinion.hpp"
#include "hofj/sparsifier.hpp"

namespace hofj {

inline constexpr const char* kToolVersion = "hofj 0.1.0";
inline constexpr const char* kRngDescription = "mt19937_64, splitmix64-derived streams";

/// One record per (configuration, solver) run; every configuration field is
/// echoed so the run is reproducible from the record alone.
struct ExperimentReport {
  std::string dataset;
  NodeId n = 0;
  std::int64_t m = 0;
  std::string distribution;
  double x_min = 1.0;
  std::vector<double> beta;
  std::string solver;  // "exact" or "approx"
  std::int64_t sample_budget = 0;
  std::int64_t m_multiplier = 0;
  int iterations = 0;
  std::uint64_t seed = 0;
  std::uint64_t opinion_seed = 0;
  std::string mode;
  bool single_thread = true;
  double wall_time_seconds = 0.0;
  std::optional<double> mae_sigma;  // present iff both solvers ran
  std::optional<std::int64_t> merged_edge_count;
  std::optional<std::int64_t> self_loop_samples;
  std::vector<std::int64_t> per_r_counts;
  std::optional<double> total_added_weight;
  std::optional<double> epsilon_estimate;
  std::int64_t negative_entry_count = 0;
  std::string rng = kRngDescription;
  std::string tool_version = kToolVersion;
  std::vector<std::string> notes;

  nlohmann::json to_json() const;
};

struct DatasetInfo {
  std::string name;
  WeightedGraph graph;  // largest connected component, ids compacted
  LoadStats stats;
  NodeId original_n = 0;
  std::int64_t original_m = 0;
};

/// load_edge_list followed by largest_connected_component.
DatasetInfo prepare_dataset(const std::string& path, const std::string& name = "");

// ---------------------------------------------------------------------------
// The ten-node demonstration tree: one center (s=1, alpha=1), three middle
// nodes (0, 0.6), two leaves per middle node (0, 0.01).
// ---------------------------------------------------------------------------

WeightedGraph make_example_tree();
OpinionState make_example_tree_state();

struct TreeCase {
  std::vector<double> beta;
  double red = 0.0, yellow = 0.0, blue = 0.0;  // solved per-color opinions
  double published_red = 0.0, published_yellow = 0.0, published_blue = 0.0;
  double published_sum = 0.0;
  double exact_sum = 0.0;    // full-precision sum of the solved vector
  double rounded_sum = 0.0;  // sum of per-color values rounded to 3 decimals
  double max_color_error = 0.0;
  bool pass = false;
};

struct TreeExampleResult {
  std::vector<TreeCase> cases;
  bool all_pass = false;
  double wall_seconds = 0.0;
};

/// Solves the three reference coefficient cases (1,0), (0,1), (0.5,0.5) and
/// checks the per-color opinions, and the sums of their 3-decimal roundings,
/// against the reference values to `tol`.
TreeExampleResult run_tree_example(double tol = 1e-3);

// ---------------------------------------------------------------------------
// Exact-vs-approximate comparison runs and parameter sweeps.
// ---------------------------------------------------------------------------

struct RunConfig {
  PolynomialSpec spec{{0.5, 0.5}};
  std::int64_t m_multiplier = 10;  // sample budget M = multiplier * T * m
  int iterations = 100;
  SamplingMode mode = SamplingMode::LiteralUniform;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  Distribution distribution = Distribution::Uniform;
  double x_min = 1.0;
  std::uint64_t opinion_seed = 7;
  std::optional<std::string> innate_file;  // overrides the generated opinions
  std::optional<std::string> resistance_file;
  std::size_t dense_cap = kDefaultDenseCap;
  bool single_thread = true;
  bool warmup = false;  // one untimed approximate run before measuring

  std::int64_t sample_budget(const WeightedGraph& g) const {
    return m_multiplier * spec.degree() * g.edge_count();
  }
};

OpinionState make_state(const WeightedGraph& g, const RunConfig& cfg);

struct ExactRun {
  Vector z;
  double wall_seconds = 0.0;
};
ExactRun run_exact(const WeightedGraph& g, const RunConfig& cfg, const OpinionState& state);

struct ApproxRun {
  Vector x;
  double wall_seconds = 0.0;
  SparsifierOutput sparsifier;
  std::int64_t negative_entry_count = 0;
};
ApproxRun run_approx(const WeightedGraph& g, const RunConfig& cfg, std::uint64_t seed,
                     const OpinionState& state, std::optional<std::int64_t> budget = {},
                     std::optional<int> iterations = {});

/// Runs the exact solver (when the graph fits under the dense cap) and one
/// approximate run per seed on identical inputs; emits one report per
/// (seed, solver) with the comparison MAE on both sides of a pair.
std::vector<ExperimentReport> run_compare(const WeightedGraph& g, const std::string& dataset,
                                          const RunConfig& cfg);

struct SweepPoint {
  std::int64_t k = 0;
  std::int64_t sample_budget = 0;
  double median_sigma = 0.0;
  double mean_wall_seconds = 0.0;
  std::vector<double> sigmas;
  std::vector<double> wall_seconds;
};

struct SweepMResult {
  std::vector<SweepPoint> points;
  bool monotone_ok = false;  // medians non-increasing along the grid (5% slack)
  std::vector<ExperimentReport> reports;
};

SweepMResult run_sweep_m(const WeightedGraph& g, const std::string& dataset, RunConfig cfg,
                         const std::vector<std::int64_t>& k_list = {1, 10, 100, 200, 500,
                                                                    1000, 2000});

struct IterPoint {
  int t = 0;
  double median_sigma = 0.0;
  std::vector<double> sigmas;
};

struct SweepItersResult {
  std::vector<IterPoint> points;
  bool plateau_checked = false;  // grid contained both t=50 and t=100
  bool plateau_ok = false;       // median sigma(100) - sigma(50) <= 1e-6
  std::vector<ExperimentReport> reports;
};

SweepItersResult run_sweep_iters(const WeightedGraph& g, const std::string& dataset,
                                 RunConfig cfg,
                                 const std::vector<int>& grid = {0, 1, 2, 5, 10, 20, 50, 100});

/// Fraction of nodes whose equilibrium opinion moves by more than
/// `threshold` between the nearest-neighbor model (beta = (1)) and the
/// second-order model (beta = (0,1)) on the same state.
double opinion_shift_fraction(const WeightedGraph& g, const OpinionState& state,
                              double threshold = 0.01,
                              std::size_t dense_cap = kDefaultDenseCap);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};
LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y);

double median(std::vector<double> values);

}  // namespace hofj
