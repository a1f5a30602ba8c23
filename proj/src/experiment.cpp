#include "hofj/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hofj/io.hpp"

namespace hofj {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

constexpr const char* kIngestionNote =
    "ingestion: duplicate/reciprocal edges merged by weight summation, self-loops dropped";

}  // namespace

nlohmann::json ExperimentReport::to_json() const {
  nlohmann::json j{{"dataset", dataset},
                   {"n", n},
                   {"m", m},
                   {"distribution", distribution},
                   {"x_min", x_min},
                   {"beta", beta},
                   {"solver", solver},
                   {"M", sample_budget},
                   {"M_multiplier", m_multiplier},
                   {"iterations", iterations},
                   {"seed", seed},
                   {"opinion_seed", opinion_seed},
                   {"mode", mode},
                   {"single_thread", single_thread},
                   {"wall_time_seconds", wall_time_seconds},
                   {"negative_entry_count", negative_entry_count},
                   {"rng", rng},
                   {"tool_version", tool_version}};
  if (mae_sigma) j["mae_sigma"] = *mae_sigma;
  if (merged_edge_count) {
    j["sparsifier"] = nlohmann::json{{"merged_edge_count", *merged_edge_count},
                                     {"self_loop_samples", self_loop_samples.value_or(0)},
                                     {"per_r_counts", per_r_counts},
                                     {"total_added_weight", total_added_weight.value_or(0.0)}};
    if (epsilon_estimate) j["sparsifier"]["epsilon_estimate"] = *epsilon_estimate;
  }
  if (!notes.empty()) j["notes"] = notes;
  return j;
}

DatasetInfo prepare_dataset(const std::string& path, const std::string& name) {
  DatasetInfo info;
  info.name = name.empty() ? path : name;
  WeightedGraph full = load_edge_list(path, false, &info.stats);
  info.original_n = full.node_count();
  info.original_m = full.edge_count();
  info.graph = largest_connected_component(full);
  return info;
}

WeightedGraph make_example_tree() {
  std::vector<Edge> edges{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 4, 1.0}, {1, 5, 1.0},
                          {2, 6, 1.0}, {2, 7, 1.0}, {3, 8, 1.0}, {3, 9, 1.0}};
  return WeightedGraph::from_edges(10, edges);
}

OpinionState make_example_tree_state() {
  Vector s = Vector::Zero(10);
  s[0] = 1.0;
  Vector alpha(10);
  alpha[0] = 1.0;
  for (int i = 1; i <= 3; ++i) alpha[i] = 0.6;
  for (int i = 4; i <= 9; ++i) alpha[i] = 0.01;
  return OpinionState::create(std::move(s), std::move(alpha));
}

TreeExampleResult run_tree_example(double tol) {
  struct Reference {
    std::vector<double> beta;
    double red, yellow, blue, sum;
  };
  const std::vector<Reference> refs{{{1.0, 0.0}, 1.0, 0.181, 0.179, 2.617},
                                    {{0.0, 1.0}, 1.0, 0.0, 0.971, 6.826},
                                    {{0.5, 0.5}, 1.0, 0.142, 0.351, 3.532}};

  const WeightedGraph tree = make_example_tree();
  const OpinionState state = make_example_tree_state();

  TreeExampleResult result;
  result.all_pass = true;
  const auto start = Clock::now();
  for (const Reference& ref : refs) {
    const Vector z = solve_equilibrium_exact(tree, PolynomialSpec{ref.beta}, state);
    TreeCase c;
    c.beta = ref.beta;
    c.published_red = ref.red;
    c.published_yellow = ref.yellow;
    c.published_blue = ref.blue;
    c.published_sum = ref.sum;
    c.red = z[0];
    c.yellow = z.segment(1, 3).mean();
    c.blue = z.segment(4, 6).mean();
    c.exact_sum = z.sum();
    c.rounded_sum = round3(c.red) + 3.0 * round3(c.yellow) + 6.0 * round3(c.blue);

    double err = std::abs(z[0] - ref.red);
    for (int i = 1; i <= 3; ++i) err = std::max(err, std::abs(z[i] - ref.yellow));
    for (int i = 4; i <= 9; ++i) err = std::max(err, std::abs(z[i] - ref.blue));
    c.max_color_error = err;
    c.pass = err <= tol && std::abs(c.rounded_sum - ref.sum) <= tol;
    result.all_pass = result.all_pass && c.pass;
    result.cases.push_back(std::move(c));
  }
  result.wall_seconds = seconds_since(start);
  return result;
}

OpinionState make_state(const WeightedGraph& g, const RunConfig& cfg) {
  const NodeId n = g.node_count();
  Vector s;
  if (cfg.innate_file) {
    s = read_vector(*cfg.innate_file);
    if (s.size() != n) throw std::invalid_argument("innate opinion file length mismatch");
  } else {
    s = generate_innate(GenSpec{cfg.distribution, cfg.x_min, 2.5, cfg.opinion_seed, n});
  }
  Vector alpha;
  if (cfg.resistance_file) {
    alpha = read_vector(*cfg.resistance_file);
    if (alpha.size() != n) throw std::invalid_argument("resistance file length mismatch");
  } else {
    alpha = generate_resistance(n, cfg.opinion_seed);
  }
  return OpinionState::create(std::move(s), std::move(alpha));
}

ExactRun run_exact(const WeightedGraph& g, const RunConfig& cfg, const OpinionState& state) {
  const auto start = Clock::now();
  ExactRun run;
  run.z = solve_equilibrium_exact(g, cfg.spec, state, cfg.dense_cap);
  run.wall_seconds = seconds_since(start);
  return run;
}

ApproxRun run_approx(const WeightedGraph& g, const RunConfig& cfg, std::uint64_t seed,
                     const OpinionState& state, std::optional<std::int64_t> budget,
                     std::optional<int> iterations) {
  SparsifierConfig scfg;
  scfg.sample_budget = budget.value_or(cfg.sample_budget(g));
  scfg.mode = cfg.mode;
  scfg.seed = seed;

  const auto start = Clock::now();
  ApproxRun run;
  run.sparsifier = build_sparsifier(g, cfg.spec, scfg);
  const SparseTransition pt = build_sparse_transition(g, run.sparsifier);
  run.negative_entry_count = pt.negative_entry_count;
  IterationConfig icfg;
  icfg.max_iters = std::max(1, iterations.value_or(cfg.iterations));
  const IterationResult it = iterate_opinions(pt, state, icfg);
  run.x = iterations.value_or(cfg.iterations) == 0 ? state.s : it.x;
  run.wall_seconds = seconds_since(start);
  return run;
}

namespace {

ExperimentReport base_report(const WeightedGraph& g, const std::string& dataset,
                             const RunConfig& cfg) {
  ExperimentReport rep;
  rep.dataset = dataset;
  rep.n = g.node_count();
  rep.m = g.edge_count();
  rep.distribution = cfg.innate_file ? "file" : distribution_name(cfg.distribution);
  rep.x_min = cfg.x_min;
  rep.beta = cfg.spec.beta;
  rep.m_multiplier = cfg.m_multiplier;
  rep.opinion_seed = cfg.opinion_seed;
  rep.mode = sampling_mode_name(cfg.mode);
  rep.single_thread = cfg.single_thread;
  rep.notes.push_back(kIngestionNote);
  return rep;
}

void fill_approx_fields(ExperimentReport& rep, const ApproxRun& run) {
  rep.solver = "approx";
  rep.merged_edge_count = run.sparsifier.merged_edge_count;
  rep.self_loop_samples = run.sparsifier.self_loop_samples;
  rep.per_r_counts = run.sparsifier.per_r_counts;
  rep.total_added_weight = run.sparsifier.total_added_weight;
  rep.epsilon_estimate = run.sparsifier.epsilon_estimate;
  rep.negative_entry_count = run.negative_entry_count;
  rep.wall_time_seconds = run.wall_seconds;
}

}  // namespace

std::vector<ExperimentReport> run_compare(const WeightedGraph& g, const std::string& dataset,
                                          const RunConfig& cfg) {
  cfg.spec.validate();
  const OpinionState state = make_state(g, cfg);
  const bool exact_feasible = static_cast<std::size_t>(g.node_count()) <= cfg.dense_cap;
  const std::int64_t budget = cfg.sample_budget(g);

  if (cfg.warmup && !cfg.seeds.empty()) run_approx(g, cfg, cfg.seeds.front(), state);

  std::optional<ExactRun> exact;
  if (exact_feasible) exact = run_exact(g, cfg, state);

  std::vector<ExperimentReport> reports;
  for (std::uint64_t seed : cfg.seeds) {
    const ApproxRun approx = run_approx(g, cfg, seed, state);
    std::optional<double> sigma;
    if (exact) sigma = mean_absolute_error(exact->z, approx.x);

    if (exact) {
      ExperimentReport rep = base_report(g, dataset, cfg);
      rep.solver = "exact";
      rep.seed = seed;
      rep.iterations = 0;
      rep.wall_time_seconds = exact->wall_seconds;
      rep.mae_sigma = sigma;
      reports.push_back(std::move(rep));
    }

    ExperimentReport rep = base_report(g, dataset, cfg);
    fill_approx_fields(rep, approx);
    rep.sample_budget = budget;
    rep.iterations = cfg.iterations;
    rep.seed = seed;
    rep.mae_sigma = sigma;
    if (!exact_feasible)
      rep.notes.push_back("exact skipped: node count above dense cap " +
                          std::to_string(cfg.dense_cap));
    reports.push_back(std::move(rep));
  }
  return reports;
}

SweepMResult run_sweep_m(const WeightedGraph& g, const std::string& dataset, RunConfig cfg,
                         const std::vector<std::int64_t>& k_list) {
  cfg.spec.validate();
  if (k_list.empty()) throw std::invalid_argument("sweep-m: empty multiplier list");
  const OpinionState state = make_state(g, cfg);
  if (static_cast<std::size_t>(g.node_count()) > cfg.dense_cap)
    throw std::invalid_argument("sweep-m: needs the exact reference, graph above dense cap");

  if (cfg.warmup && !cfg.seeds.empty()) run_approx(g, cfg, cfg.seeds.front(), state);

  const ExactRun exact = run_exact(g, cfg, state);
  SweepMResult result;
  {
    ExperimentReport rep = base_report(g, dataset, cfg);
    rep.solver = "exact";
    rep.seed = cfg.opinion_seed;
    rep.wall_time_seconds = exact.wall_seconds;
    rep.notes.push_back("reference solve shared across the sweep");
    result.reports.push_back(std::move(rep));
  }

  for (std::int64_t k : k_list) {
    SweepPoint point;
    point.k = k;
    point.sample_budget = k * cfg.spec.degree() * g.edge_count();
    for (std::uint64_t seed : cfg.seeds) {
      const ApproxRun approx = run_approx(g, cfg, seed, state, point.sample_budget);
      const double sigma = mean_absolute_error(exact.z, approx.x);
      point.sigmas.push_back(sigma);
      point.wall_seconds.push_back(approx.wall_seconds);

      ExperimentReport rep = base_report(g, dataset, cfg);
      fill_approx_fields(rep, approx);
      rep.sample_budget = point.sample_budget;
      rep.m_multiplier = k;
      rep.iterations = cfg.iterations;
      rep.seed = seed;
      rep.mae_sigma = sigma;
      result.reports.push_back(std::move(rep));
    }
    point.median_sigma = median(point.sigmas);
    double total = 0.0;
    for (double w : point.wall_seconds) total += w;
    point.mean_wall_seconds = total / static_cast<double>(point.wall_seconds.size());
    result.points.push_back(std::move(point));
  }

  result.monotone_ok = true;
  for (std::size_t i = 1; i < result.points.size(); ++i) {
    const double prev = result.points[i - 1].median_sigma;
    const double cur = result.points[i].median_sigma;
    if (cur > prev * 1.05 + 1e-15) result.monotone_ok = false;
  }
  return result;
}

SweepItersResult run_sweep_iters(const WeightedGraph& g, const std::string& dataset,
                                 RunConfig cfg, const std::vector<int>& grid) {
  cfg.spec.validate();
  if (grid.empty()) throw std::invalid_argument("sweep-iters: empty iteration grid");
  const OpinionState state = make_state(g, cfg);
  if (static_cast<std::size_t>(g.node_count()) > cfg.dense_cap)
    throw std::invalid_argument("sweep-iters: needs the exact reference, graph above dense cap");

  const ExactRun exact = run_exact(g, cfg, state);
  const std::int64_t budget = cfg.sample_budget(g);

  SweepItersResult result;
  {
    ExperimentReport rep = base_report(g, dataset, cfg);
    rep.solver = "exact";
    rep.seed = cfg.opinion_seed;
    rep.wall_time_seconds = exact.wall_seconds;
    rep.notes.push_back("reference solve shared across the sweep");
    result.reports.push_back(std::move(rep));
  }

  for (int t : grid) {
    IterPoint point;
    point.t = t;
    for (std::uint64_t seed : cfg.seeds) {
      const ApproxRun approx = run_approx(g, cfg, seed, state, budget, t);
      const double sigma = mean_absolute_error(exact.z, approx.x);
      point.sigmas.push_back(sigma);

      ExperimentReport rep = base_report(g, dataset, cfg);
      fill_approx_fields(rep, approx);
      rep.sample_budget = budget;
      rep.iterations = t;
      rep.seed = seed;
      rep.mae_sigma = sigma;
      result.reports.push_back(std::move(rep));
    }
    point.median_sigma = median(point.sigmas);
    result.points.push_back(std::move(point));
  }

  const auto at = [&](int t) -> const IterPoint* {
    for (const IterPoint& p : result.points)
      if (p.t == t) return &p;
    return nullptr;
  };
  const IterPoint* p50 = at(50);
  const IterPoint* p100 = at(100);
  if (p50 && p100) {
    result.plateau_checked = true;
    result.plateau_ok = p100->median_sigma - p50->median_sigma <= 1e-6;
  }
  return result;
}

double opinion_shift_fraction(const WeightedGraph& g, const OpinionState& state,
                              double threshold, std::size_t dense_cap) {
  const Vector z_classic = solve_equilibrium_exact(g, PolynomialSpec{{1.0}}, state, dense_cap);
  const Vector z_second =
      solve_equilibrium_exact(g, PolynomialSpec{{0.0, 1.0}}, state, dense_cap);
  const Eigen::Index n = z_classic.size();
  Eigen::Index count = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (std::abs(z_classic[i] - z_second[i]) > threshold) ++count;
  return static_cast<double>(count) / static_cast<double>(n);
}

LinearFit fit_linear(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("fit_linear: need at least two matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit fit;
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_linear: degenerate x values");
  fit.slope = (n * sxy - sx * sy) / denom;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0, ss_tot = 0;
  const double mean_y = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double pred = fit.intercept + fit.slope * x[i];
    ss_res += (y[i] - pred) * (y[i] - pred);
    ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
  }
  fit.r_squared = ss_tot == 0.0 ? 1.0 : 1.0 - ss_res / ss_tot;
  return fit;
}

double median(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("median: empty input");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

}  // namespace hofj
